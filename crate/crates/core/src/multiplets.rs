//! GKRS multiplets at a point.

use serde::Serialize;

use crate::charring::{GroupElement, TorusElement, TwistClass};
use crate::error::{Error, Result};
use crate::induction::{partial, InductionProblem};
use crate::weyl::{apply_antisymmetrizer, Antisymmetrizer};

#[derive(Clone, Debug, Serialize)]
pub struct MultipletMember {
    /// Index of the coset representative in the big Weyl group.
    pub coset_rep: usize,
    pub length: u32,
    pub sign: i64,
    pub element: GroupElement,
}

#[derive(Clone, Debug, Serialize)]
pub struct Multiplet {
    pub source: TorusElement,
    pub members: Vec<MultipletMember>,
}

fn check_source(problem: &InductionProblem, a: &TorusElement) -> Result<()> {
    let expected = problem
        .sigma()
        .add(&TwistClass::of(problem.big().rho_own()));
    if a.twist() != &expected {
        return Err(Error::BadTwist(format!(
            "multiplet source has twist {}, expected {expected}",
            a.twist()
        )));
    }
    Ok(())
}

/// `a_w = ∂_H(w^{-1} a)` for every `w ∈ W^H`, in coset enumeration order.
pub fn multiplet(problem: &InductionProblem, a: &TorusElement) -> Result<Multiplet> {
    check_source(problem, a)?;
    let wg = problem.weyl_big();
    let mut members = Vec::with_capacity(problem.coset_reps().len());
    for &k in problem.coset_reps().indices() {
        let w = wg.element(k);
        let moved = a.act(wg.element(wg.inverse_index(k)))?;
        members.push(MultipletMember {
            coset_rep: k,
            length: w.length(),
            sign: w.det(),
            element: partial(problem.small(), &moved)?,
        });
    }
    Ok(Multiplet {
        source: a.clone(),
        members,
    })
}

impl Multiplet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Signed dimensions `det(w) dim(a_w)` in member order.
    pub fn signed_dimensions(&self) -> Result<Vec<i64>> {
        self.members
            .iter()
            .map(|m| Ok(m.sign * m.element.dimension()?))
            .collect()
    }
}

/// `Σ det(w) dim(a_w)`; zero whenever H is a proper subgroup.
pub fn alternating_dimension_sum(m: &Multiplet) -> Result<i64> {
    m.signed_dimensions()?
        .into_iter()
        .try_fold(0i64, |acc, x| acc.checked_add(x))
        .ok_or(Error::Overflow("alternating dimension sum"))
}

/// Checks `dual(euler) · ∂_G(a) = ∂_H(J_M^op a)` after expansion to T.
pub fn gkrs_identity_check(problem: &InductionProblem, a: &TorusElement) -> Result<bool> {
    check_source(problem, a)?;
    let lhs = problem
        .euler_class()
        .dualize()
        .try_mul(&partial(problem.big(), a)?.expand()?)?;
    let op = apply_antisymmetrizer(
        Antisymmetrizer::MOp,
        problem.weyl_big(),
        problem.weyl_small(),
        problem.coset_reps(),
        a,
    )?;
    let rhs = partial(problem.small(), &op)?.expand()?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charring::weyl_dimension;
    use crate::rootdata::{RootDatum, SubgroupDatum};
    use std::sync::Arc;

    fn problem(label: &str, preset: &str) -> InductionProblem {
        let d = Arc::new(RootDatum::from_label(label).unwrap());
        InductionProblem::for_pair(&SubgroupDatum::preset(&d, preset).unwrap()).unwrap()
    }

    #[test]
    fn full_group_has_one_member() {
        let p = problem("B2", "g");
        let a = TorusElement::monomial(p.big().datum().rho(), 1);
        let m = multiplet(&p, &a).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m.members[0].sign, 1);
        assert_eq!(m.members[0].element, GroupElement::trivial(p.big()));
        assert_eq!(alternating_dimension_sum(&m).unwrap(), 1);
    }

    #[test]
    fn a2_levi_rho() {
        let p = problem("A2", "levi:1");
        let m = multiplet(&p, &TorusElement::monomial(p.big().datum().rho(), 1)).unwrap();
        let dims: Vec<i64> = m
            .members
            .iter()
            .map(|x| x.element.dimension().unwrap())
            .collect();
        let signs: Vec<i64> = m.members.iter().map(|x| x.sign).collect();
        assert_eq!(dims, vec![1, 2, 1]);
        assert_eq!(signs, vec![1, -1, 1]);
        assert_eq!(alternating_dimension_sum(&m).unwrap(), 0);
    }

    #[test]
    fn f4_b4_rho() {
        let p = problem("F4", "b4");
        let m = multiplet(&p, &TorusElement::monomial(p.big().datum().rho(), 1)).unwrap();
        assert_eq!(m.len(), 3);
        let mut total = 0;
        for x in &m.members {
            assert_eq!(x.element.len(), 1);
            let (hw, c) = x.element.terms().next().unwrap();
            let dim = c * weyl_dimension(p.small(), &hw).unwrap();
            assert_eq!(dim, x.element.dimension().unwrap());
            total += x.sign * dim;
        }
        assert_eq!(total, 0);
        assert_eq!(alternating_dimension_sum(&m).unwrap(), 0);
    }

    #[test]
    fn gkrs_identity_on_monomials() {
        for (label, preset) in [
            ("A2", "levi:1"),
            ("G2", "a2long"),
            ("B3", "so3xso4"),
            ("C2", "a1xa1"),
        ] {
            let p = problem(label, preset);
            let d = p.big().datum();
            let rho = d.rho();
            for i in 0..d.semisimple_rank() {
                for shift in [
                    rho.clone(),
                    rho - d.fundamental_weight(i),
                    &(rho + d.fundamental_weight(i)) + rho,
                ] {
                    let a = TorusElement::monomial(&shift, 1);
                    assert!(gkrs_identity_check(&p, &a).unwrap(), "{label} {shift}");
                }
            }
        }
    }

    #[test]
    fn wrong_twist() {
        let p = problem("A2", "levi:1");
        let a = TorusElement::monomial(&p.big().datum().fundamental_weight(0).half(), 1);
        assert_eq!(multiplet(&p, &a).unwrap_err().code(), "bad_twist");
    }
}
