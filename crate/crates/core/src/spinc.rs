//! Invariant Spin and Spin^c structures on G/H via c-spinorial characters.

use serde::Serialize;

use crate::charring::TorusElement;
use crate::error::{Error, Result};
use crate::induction::InductionProblem;
use crate::lattice::{solve_in_lattice, Lattice};
use crate::rational::{RationalWeight, Weight};
use crate::rootdata::subgroup_character_lattice;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpincClassification {
    pub rho_m: RationalWeight,
    pub is_spin: bool,
    pub is_c_spinorial: bool,
    /// A c-spinorial character in X(H), if one exists.
    pub gamma: Option<Weight>,
    pub nu: Option<RationalWeight>,
    /// Basis of X(H); the witnesses form `gamma + 2 X(H)`.
    pub x_h_basis: Vec<Weight>,
    pub torsor_note: String,
}

fn x_h(problem: &InductionProblem) -> Lattice {
    subgroup_character_lattice(problem.small())
}

pub fn classify(problem: &InductionProblem) -> Result<SpincClassification> {
    let rho_m = problem.rho_m().clone();
    let n = rho_m.rank();
    let xh = x_h(problem);
    let two_rho = rho_m.scale(2);
    let gamma = solve_in_lattice(&two_rho, &xh, &Lattice::full(n).scaled(2))?;
    let nu = match &gamma {
        Some(g) => Some(nu(problem, g)?),
        None => None,
    };
    let torsor_note = match (&gamma, xh.rank()) {
        (None, _) => {
            "no c-spinorial character: G/H carries no invariant Spin^c structure".to_string()
        }
        (Some(_), 0) => "X(H) = 0: the c-spinorial character is unique".to_string(),
        (Some(_), r) => format!("c-spinorial characters form gamma + 2X(H), X(H) of rank {r}"),
    };
    Ok(SpincClassification {
        is_spin: rho_m.is_integral(),
        is_c_spinorial: gamma.is_some(),
        gamma,
        nu,
        x_h_basis: xh.basis().to_vec(),
        torsor_note,
        rho_m,
    })
}

/// `ν(γ) = γ/2 - ρ_M`; γ is c-spinorial iff this lies in X(T).
pub fn nu(problem: &InductionProblem, gamma: &[i64]) -> Result<RationalWeight> {
    let n = problem.rho_m().rank();
    if gamma.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: gamma.len(),
        });
    }
    if !x_h(problem).contains(gamma) {
        return Err(Error::NotInXH);
    }
    Ok(&RationalWeight::integral(gamma.to_vec()).half() - problem.rho_m())
}

/// `e^{ν(γ)} ∏_{α ∈ ℛ_M^+} (1 - e^α)`, an untwisted element.
pub fn euler_class_for_character(
    problem: &InductionProblem,
    gamma: &[i64],
) -> Result<TorusElement> {
    let v = nu(problem, gamma)?;
    if !v.is_integral() {
        return Err(Error::NotCSpinorial);
    }
    let d = problem.big().datum();
    let mut out = TorusElement::monomial(&v, 1);
    for &i in problem.big().positive() {
        if !problem.small().contains_root(i) {
            out = out.mul_one_minus(&d.root(i).weight);
        }
    }
    Ok(out)
}

/// `Σ c_k α_k` over `ℛ_M^+` in positive-root order.
pub fn almost_complex_character(
    problem: &InductionProblem,
    signs: &[i64],
) -> Result<RationalWeight> {
    let d = problem.big().datum();
    let roots: Vec<usize> = problem
        .big()
        .positive()
        .iter()
        .copied()
        .filter(|&i| !problem.small().contains_root(i))
        .collect();
    if signs.len() != roots.len() {
        return Err(Error::LengthMismatch {
            expected: roots.len(),
            found: signs.len(),
        });
    }
    if let Some(s) = signs.iter().find(|s| s.abs() != 1) {
        return Err(Error::Unsupported(format!("sign {s} is not ±1")));
    }
    let mut acc = vec![0i64; d.rank()];
    for (&i, &c) in roots.iter().zip(signs) {
        for (a, b) in acc.iter_mut().zip(&d.root(i).weight) {
            *a += c * b;
        }
    }
    Ok(RationalWeight::integral(acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{RootDatum, SubgroupDatum};
    use std::sync::Arc;

    fn problem(label: &str, preset: &str) -> InductionProblem {
        let d = Arc::new(RootDatum::from_label(label).unwrap());
        InductionProblem::for_pair(&SubgroupDatum::preset(&d, preset).unwrap()).unwrap()
    }

    #[test]
    fn torus_is_c_spinorial() {
        for label in [
            "A1", "A1:adj", "A2:adj", "B2:so", "G2", "B3:so", "C2", "A1xA1xT1",
        ] {
            let p = problem(label, "t");
            let c = classify(&p).unwrap();
            assert!(c.is_c_spinorial, "{label}");
            let g = c.gamma.unwrap();
            assert_eq!(RationalWeight::integral(g), p.rho_m().scale(2));
        }
    }

    #[test]
    fn oriented_three_planes_in_r7() {
        let p = problem("B3:spin", "so3xso4");
        let c = classify(&p).unwrap();
        assert!(!c.is_spin);
        assert!(!c.is_c_spinorial);
        assert!(c.x_h_basis.is_empty());
        assert_eq!(
            euler_class_for_character(&p, &[0, 0, 0])
                .unwrap_err()
                .code(),
            "not_c_spinorial"
        );
    }

    #[test]
    fn levi_is_complex() {
        for (label, preset) in [
            ("A2", "levi:1"),
            ("B3", "levi:1,2"),
            ("C3:adj", "levi:3"),
            ("G2", "levi:2"),
        ] {
            let p = problem(label, preset);
            let c = classify(&p).unwrap();
            assert!(c.is_c_spinorial, "{label}");
            assert!(c.nu.as_ref().unwrap().is_zero(), "{label}");
            let g = c.gamma.unwrap();
            assert_eq!(RationalWeight::integral(g.clone()), p.rho_m().scale(2));
            let e = euler_class_for_character(&p, &g).unwrap();
            let mut prod = TorusElement::one(p.rho_m().rank());
            let d = p.big().datum();
            for &i in p.big().positive() {
                if !p.small().contains_root(i) {
                    prod = prod.mul_one_minus(&d.root(i).weight);
                }
            }
            assert_eq!(e, prod);
        }
    }

    #[test]
    fn nu_shift_law() {
        let p = problem("A2", "levi:1");
        let xh = x_h(&p);
        let chi = xh.basis()[0].clone();
        let g = classify(&p).unwrap().gamma.unwrap();
        let g2: Weight = g.iter().zip(&chi).map(|(a, b)| a + 2 * b).collect();
        let lhs = nu(&p, &g2).unwrap();
        let rhs = &nu(&p, &g).unwrap() + &RationalWeight::integral(chi.clone());
        assert_eq!(lhs, rhs);
        let e1 = euler_class_for_character(&p, &g).unwrap();
        let e2 = euler_class_for_character(&p, &g2).unwrap();
        assert_eq!(
            e2,
            &e1 * &TorusElement::monomial(&RationalWeight::integral(chi), 1)
        );
        assert_eq!(nu(&p, &[0, 0]).unwrap(), -p.rho_m());
        assert_eq!(nu(&p, &[1, 0]).unwrap_err().code(), "not_in_xh");
    }

    #[test]
    fn spin_case_matches_euler_class() {
        let p = problem("A1", "t");
        let c = classify(&p).unwrap();
        assert!(c.is_spin);
        let e = euler_class_for_character(&p, &[0]).unwrap();
        assert_eq!(e.offsets(), p.euler_class().offsets());
    }

    #[test]
    fn almost_complex_signs() {
        let p = problem("A2", "t");
        let all: Vec<i64> = vec![1; 3];
        assert_eq!(
            almost_complex_character(&p, &all).unwrap(),
            p.rho_m().scale(2)
        );
        assert_eq!(
            almost_complex_character(&p, &[-1, -1, -1]).unwrap(),
            p.rho_m().scale(-2)
        );
        assert_eq!(
            almost_complex_character(&p, &[1]).unwrap_err().code(),
            "length_mismatch"
        );
        let q = problem("A1", "t");
        assert_eq!(
            almost_complex_character(&q, &[1]).unwrap(),
            RationalWeight::integral(vec![2])
        );
    }
}
