//! Induction maps for a pair of nested scopes `small ⊂ big` of equal rank:
//! the operators ∂, twisted Spin^c-induction, classical inductions,
//! Borel-Weil-Bott reduction, branching, the duality pairing and a numeric
//! fixed-point cross-check.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::charring::{
    euler_class_relative, irreducible_restriction, weyl_denominator, GroupElement, TorusElement,
    TwistClass,
};
use crate::error::{Error, Result};
use crate::numeric;
use crate::rational::{RationalWeight, Weight};
use crate::rootdata::{subgroup_character_lattice, SubgroupDatum, DEFAULT_WEYL_ORDER_CAP};
use crate::weyl::{to_dominant_chamber, Chamber, CosetReps, Reflector, WeylElement, WeylGroup};

/// Which scope an operator refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Scope {
    G,
    H,
}

/// Classical induction kinds, all expressed through `i_*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassicalKind {
    Holomorphic,
    Spin,
    SpincWith(Weight),
}

/// The standing data `(big, small, σ)` with cached Weyl groups, coset
/// representatives, Weyl denominators and the Euler class.
#[derive(Clone, Debug)]
pub struct InductionProblem {
    big: SubgroupDatum,
    small: SubgroupDatum,
    sigma: TwistClass,
    weyl_big: WeylGroup,
    weyl_small: WeylGroup,
    reps: CosetReps,
    d_big: TorusElement,
    d_small: TorusElement,
    euler: TorusElement,
    rho_m: RationalWeight,
}

impl InductionProblem {
    /// `H ⊂ G` with G the full datum.
    pub fn new(small: &SubgroupDatum, sigma: TwistClass, cap: u64) -> Result<Self> {
        Self::with_scopes(&SubgroupDatum::full(small.datum()), small, sigma, cap)
    }

    /// Untwisted problem with the default enumeration cap.
    pub fn for_pair(small: &SubgroupDatum) -> Result<Self> {
        Self::new(
            small,
            TwistClass::zero(small.datum().rank()),
            DEFAULT_WEYL_ORDER_CAP,
        )
    }

    pub fn with_scopes(
        big: &SubgroupDatum,
        small: &SubgroupDatum,
        sigma: TwistClass,
        cap: u64,
    ) -> Result<Self> {
        if big.datum() != small.datum() {
            return Err(Error::MismatchedDatum);
        }
        if !small.is_subsystem_of(big) {
            return Err(Error::NotASubgroup);
        }
        let n = big.datum().rank();
        if sigma.rank() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: sigma.rank(),
            });
        }
        let weyl_big = WeylGroup::generate_capped(big, cap)?;
        if !weyl_big
            .generators()
            .iter()
            .all(|s| sigma.is_stable_under(s))
        {
            return Err(Error::ShiftNotStable);
        }
        let weyl_small = WeylGroup::generate_capped(small, cap)?;
        let reps = CosetReps::new(&weyl_big, small, weyl_small.order())?;
        Ok(InductionProblem {
            d_big: weyl_denominator(big),
            d_small: weyl_denominator(small),
            euler: euler_class_relative(big, small),
            rho_m: big.rho_own() - small.rho_own(),
            big: big.clone(),
            small: small.clone(),
            sigma,
            weyl_big,
            weyl_small,
            reps,
        })
    }

    pub fn big(&self) -> &SubgroupDatum {
        &self.big
    }

    pub fn small(&self) -> &SubgroupDatum {
        &self.small
    }

    pub fn scope(&self, which: Scope) -> &SubgroupDatum {
        match which {
            Scope::G => &self.big,
            Scope::H => &self.small,
        }
    }

    pub fn sigma(&self) -> &TwistClass {
        &self.sigma
    }

    pub fn weyl_big(&self) -> &WeylGroup {
        &self.weyl_big
    }

    pub fn weyl_small(&self) -> &WeylGroup {
        &self.weyl_small
    }

    pub fn coset_reps(&self) -> &CosetReps {
        &self.reps
    }

    pub fn rho_m(&self) -> &RationalWeight {
        &self.rho_m
    }

    /// Twist class of valid inputs to `i_*`: `σ + [ρ_M]`.
    pub fn input_twist(&self) -> TwistClass {
        self.sigma.add(&TwistClass::of(&self.rho_m))
    }

    pub fn weyl_denominator(&self, which: Scope) -> &TorusElement {
        match which {
            Scope::G => &self.d_big,
            Scope::H => &self.d_small,
        }
    }

    /// `e^{-ρ_M} ∏_{α ∈ ℛ_M^+} (1 - e^α)`.
    pub fn euler_class(&self) -> &TorusElement {
        &self.euler
    }

    /// Input whose induction is the Euler characteristic of M: `e(D)/e(Dirac)`
    /// for the de Rham operator, which is `dual(euler)`.
    pub fn hodge_de_rham_input(&self) -> TorusElement {
        self.euler.dualize()
    }

    /// `∏_{α ∈ ℛ_M} (1 - e^α)`, the de Rham Euler class.
    pub fn hodge_de_rham_euler(&self) -> TorusElement {
        &self.euler * &self.euler.dualize()
    }

    pub fn partial(&self, which: Scope, a: &TorusElement) -> Result<GroupElement> {
        partial(self.scope(which), a)
    }

    fn check_invariant(&self, a: &TorusElement) -> Result<()> {
        if a.is_invariant_under(self.weyl_small.generators())? {
            Ok(())
        } else {
            Err(Error::NotWHInvariant)
        }
    }

    /// `i_*(a) = J_M(d_H a) / d_G`, computed as `∂_G(d_H a) / |W_H|`.
    pub fn induce_twisted_spinc(
        &self,
        a: &TorusElement,
        check_invariant: bool,
    ) -> Result<GroupElement> {
        let expected = self.input_twist();
        if a.twist() != &expected {
            return Err(Error::BadTwist(format!(
                "input twist {} should be {}",
                a.twist(),
                expected
            )));
        }
        if check_invariant {
            self.check_invariant(a)?;
        }
        self.induce_unchecked(a)
    }

    fn induce_unchecked(&self, a: &TorusElement) -> Result<GroupElement> {
        let b = self.d_small.try_mul(a)?;
        let collected = partial(&self.big, &b)?;
        let k = self.weyl_small.order() as i64;
        let mut out = GroupElement::zero(&self.big, collected.twist().clone());
        for (o, &c) in collected.offsets() {
            if c % k != 0 {
                return Err(Error::InexactDivision(format!(
                    "coefficient {c} is not divisible by |W_H| = {k}"
                )));
            }
            out.add_offset(o.clone(), c / k);
        }
        Ok(out)
    }

    /// Induces a virtual H-module given in the highest-weight basis.
    pub fn induce_group(&self, a: &GroupElement) -> Result<GroupElement> {
        if a.scope() != &self.small {
            return Err(Error::MismatchedDatum);
        }
        self.induce_twisted_spinc(&a.expand()?, false)
    }

    /// Holomorphic, Spin and Spin^c(γ) induction of an untwisted `a`.
    pub fn induce_classical(&self, kind: &ClassicalKind, a: &TorusElement) -> Result<GroupElement> {
        if !a.twist().is_zero() {
            return Err(Error::BadTwist(format!(
                "classical induction takes untwisted input, got {}",
                a.twist()
            )));
        }
        self.check_invariant(a)?;
        let m = match kind {
            ClassicalKind::Holomorphic => {
                if !self.small.is_levi() {
                    return Err(Error::NotLevi);
                }
                TorusElement::monomial(&self.rho_m, 1)
            }
            ClassicalKind::Spin => {
                if !self.rho_m.is_integral() {
                    return Err(Error::NotSpin);
                }
                TorusElement::one(self.rho_m.rank())
            }
            ClassicalKind::SpincWith(gamma) => {
                let n = self.rho_m.rank();
                if gamma.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: gamma.len(),
                    });
                }
                if !subgroup_character_lattice(&self.small).contains(gamma) {
                    return Err(Error::NotInXH);
                }
                let half = RationalWeight::integral(gamma.clone()).half();
                if !(&half - &self.rho_m).is_integral() {
                    return Err(Error::NotCSpinorial);
                }
                TorusElement::monomial(&half, 1)
            }
        };
        self.induce_unchecked(&m.try_mul(a)?)
    }

    /// Closed form of `i_*[V_H(μ)]`: `det(w) [w(μ + ρ_H) - ρ_G]` or zero.
    pub fn bwb_irreducible(&self, mu: &RationalWeight) -> Result<GroupElement> {
        let n = self.rho_m.rank();
        if mu.rank() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: mu.rank(),
            });
        }
        if !Reflector::new(&self.small).is_dominant(mu.num()) {
            return Err(Error::NotHDominant(mu.to_string()));
        }
        let expected = self.input_twist();
        if TwistClass::of(mu) != expected {
            return Err(Error::BadTwist(format!(
                "{mu} is not in the coset {expected}"
            )));
        }
        let mut out = GroupElement::zero(&self.big, self.sigma.clone());
        let lambda = mu + self.small.rho_own();
        if let Chamber::Regular { w, image } = to_dominant_chamber(&self.big, &lambda) {
            out.add_term(&(&image - self.big.rho_own()), w.det())?;
        }
        Ok(out)
    }

    /// Restriction of a virtual big-scope module to the small scope.
    pub fn branch(&self, a: &GroupElement) -> Result<GroupElement> {
        if a.scope() != &self.big {
            return Err(Error::MismatchedDatum);
        }
        let t = a.expand()?;
        let anti = self.d_small.try_mul(&t)?;
        let refl = Reflector::new(&self.small);
        let rho_h = self.small.rho_own();
        let mut out = GroupElement::zero(&self.small, a.twist().clone());
        for (e, c) in anti.terms() {
            let x = e.num();
            if (0..refl.simple_count()).all(|j| refl.pairing(j, x) > 0) {
                out.add_term(&(&e - rho_h), c)?;
            }
        }
        if out.expand()? != t {
            return Err(Error::InternalInconsistency(
                "branching does not re-expand to the input".into(),
            ));
        }
        Ok(out)
    }

    /// The Steinberg basis `e_w = w^{-1}(e^{Σ_{w^{-1}α_i < 0} ϖ_i})` of R(T)
    /// over R(G) when the small scope is the torus, or `{1}` when it is the
    /// big scope. Requires the fundamental weights to be characters.
    pub fn steinberg_basis(&self) -> Result<Vec<TorusElement>> {
        let n = self.rho_m.rank();
        if self.small == self.big {
            return Ok(vec![TorusElement::one(n)]);
        }
        if !self.small.is_torus() || !self.big.is_full() {
            return Err(Error::Unsupported(
                "Steinberg bases are only built for H = T inside G".into(),
            ));
        }
        let d = self.big.datum();
        if d.fundamental_weights().iter().any(|w| !w.is_integral()) {
            return Err(Error::Unsupported(
                "Steinberg bases need a simply connected lattice".into(),
            ));
        }
        let mut out = Vec::with_capacity(self.weyl_big.order());
        for k in 0..self.weyl_big.order() {
            let winv = self.weyl_big.element(self.weyl_big.inverse_index(k));
            let mut lambda = RationalWeight::zero(n);
            for (i, alpha) in d.simple_roots().iter().enumerate() {
                let img = winv.apply(alpha);
                let idx = d
                    .root_index(&img)
                    .ok_or_else(|| Error::InternalInconsistency("image of a root".into()))?;
                if !d.is_positive(idx) {
                    lambda = &lambda + d.fundamental_weight(i);
                }
            }
            out.push(TorusElement::monomial(&winv.apply_rational(&lambda), 1));
        }
        Ok(out)
    }

    /// Bases for [`pairing_report`](Self::pairing_report) built from the
    /// Steinberg basis: twist 0 and `[ρ_M]` in the requested order.
    pub fn steinberg_pairing_bases(
        &self,
        tau: &TwistClass,
    ) -> Result<(Vec<TorusElement>, Vec<TorusElement>)> {
        let plain = self.steinberg_basis()?;
        let shifted: Vec<TorusElement> = plain.iter().map(|b| b.shift_by(&self.rho_m)).collect();
        if tau.is_zero() {
            Ok((plain, shifted))
        } else if tau == &TwistClass::of(&self.rho_m) {
            Ok((shifted, plain))
        } else {
            Err(Error::Unsupported(format!(
                "Steinberg bases are built for τ = 0 or [ρ_M], not {tau}"
            )))
        }
    }

    /// Gram matrix of `𝒫(a, b) = i_*(a b)` with its determinant over T.
    pub fn pairing_report(
        &self,
        tau: &TwistClass,
        basis_a: &[TorusElement],
        basis_b: &[TorusElement],
    ) -> Result<PairingReport> {
        let n = self.reps.len();
        for basis in [basis_a, basis_b] {
            if basis.len() != n {
                return Err(Error::WrongBasisSize {
                    expected: n,
                    found: basis.len(),
                });
            }
        }
        let other = self.input_twist().sub(tau);
        if basis_a.iter().any(|a| a.twist() != tau) || basis_b.iter().any(|b| b.twist() != &other) {
            return Err(Error::BadTwistPairing);
        }
        for x in basis_a.iter().chain(basis_b) {
            self.check_invariant(x)?;
        }
        let mut gram = Vec::with_capacity(n);
        let mut expanded = Vec::with_capacity(n);
        for a in basis_a {
            let mut row = Vec::with_capacity(n);
            let mut row_t = Vec::with_capacity(n);
            for b in basis_b {
                let g = self.induce_unchecked(&a.try_mul(b)?)?;
                row_t.push(g.expand()?);
                row.push(g);
            }
            gram.push(row);
            expanded.push(row_t);
        }
        let det = determinant(&expanded, &self.sigma)?;
        let is_unit = det.len() == 1
            && det.offsets().values().all(|c| c.abs() == 1)
            && det.terms().all(|(e, _)| {
                self.weyl_big
                    .generators()
                    .iter()
                    .all(|s| s.apply_rational(&e) == e)
            });
        Ok(PairingReport {
            tau: tau.clone(),
            basis_a: basis_a.to_vec(),
            basis_b: basis_b.to_vec(),
            gram,
            determinant_character: det,
            is_unit,
        })
    }

    /// Compares `i_D(a) = i_*(a_D a)` with the fixed-point sum
    /// `Σ_{w ∈ W^H} w(e(D) a / ∏_{α ∈ ℛ_M} (1 - e^α))` at random torus points.
    pub fn lefschetz_check(
        &self,
        euler_d: &TorusElement,
        a: &TorusElement,
        trials: usize,
        seed: u64,
    ) -> Result<LefschetzReport> {
        let mut a_d = euler_d.shift_by(&self.rho_m);
        let d = self.big.datum();
        for &i in self.big.positive() {
            if !self.small.contains_root(i) {
                a_d = a_d.divide_by_one_minus(&d.root(i).weight)?;
            }
        }
        let symbolic = self
            .induce_twisted_spinc(&a_d.try_mul(a)?, true)?
            .expand()?;
        let numerator = euler_d.try_mul(a)?;
        let normal: Vec<&Weight> = d
            .roots()
            .iter()
            .enumerate()
            .filter(|(i, _)| self.big.contains_root(*i) && !self.small.contains_root(*i))
            .map(|(_, r)| &r.weight)
            .collect();
        let moved: Vec<(TorusElement, Vec<Weight>)> = self
            .reps
            .elements(&self.weyl_big)
            .map(|w| {
                Ok((
                    numerator.act(w)?,
                    normal.iter().map(|r| w.apply(r)).collect(),
                ))
            })
            .collect::<Result<_>>()?;
        let roots: Vec<&Weight> = self
            .big
            .roots()
            .iter()
            .map(|&i| &d.root(i).weight)
            .collect();

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut samples = Vec::with_capacity(trials);
        let mut max_error: f64 = 0.0;
        for _ in 0..trials {
            let k = sample_regular(&mut rng, d.rank(), &roots)?;
            let lhs = numeric::evaluate(&symbolic, &k);
            let mut rhs = numeric::Cdd::zero();
            for (num, den) in &moved {
                rhs = rhs
                    + numeric::evaluate(num, &k)
                        / numeric::product_one_minus(den.iter().map(|r| r.as_slice()), &k);
            }
            let err = (lhs - rhs).norm() / lhs.norm().max(rhs.norm()).max(1.0);
            max_error = max_error.max(err);
            samples.push(LefschetzSample {
                angles: numeric::turns(&k),
                symbolic: lhs.to_f64(),
                fixed_point: rhs.to_f64(),
            });
        }
        Ok(LefschetzReport {
            trials,
            seed,
            max_relative_error: max_error,
            samples,
        })
    }
}

const SINGULAR_GUARD: f64 = 1e-4;
const MAX_RESAMPLES: usize = 1000;

/// A torus point `k / 2^32` at which every root of the big scope is at
/// least `SINGULAR_GUARD` away from 1.
fn sample_regular(rng: &mut ChaCha8Rng, rank: usize, roots: &[&Weight]) -> Result<Vec<u32>> {
    for _ in 0..MAX_RESAMPLES {
        let k: Vec<u32> = (0..rank).map(|_| rng.random::<u32>()).collect();
        let ok = roots.iter().all(|r| {
            let (p, m) = numeric::phase(r, 1, &k);
            numeric::one_minus_unit(p, m).norm() >= SINGULAR_GUARD
        });
        if ok {
            return Ok(k);
        }
    }
    Err(Error::DegenerateSample)
}

/// `∂_scope(a) = J(a)/d`, collected monomial by monomial.
pub fn partial(scope: &SubgroupDatum, a: &TorusElement) -> Result<GroupElement> {
    let d = scope.datum();
    if a.rank() != d.rank() {
        return Err(Error::DatumMismatch);
    }
    let rho = scope.rho_own();
    let out_twist = a.twist().sub(&TwistClass::of(rho));
    let refl = Reflector::new(scope);
    let stable = scope.simple().iter().all(|&i| {
        out_twist.is_stable_under(&WeylElement::reflection(
            &d.root(i).weight,
            &d.root(i).coroot,
        ))
    });
    if !stable {
        return Err(Error::BadTwist(format!(
            "{} is not a ρ-shift of a stable class",
            a.twist()
        )));
    }
    let mut acc: BTreeMap<RationalWeight, i64> = BTreeMap::new();
    for (e, c) in a.terms() {
        let mut x = e.num().to_vec();
        if let Some(sign) = refl.strictly_dominate(&mut x) {
            *acc.entry(&RationalWeight::new(x, e.den()) - rho)
                .or_insert(0) += sign * c;
        }
    }
    let mut out = GroupElement::zero(scope, out_twist);
    for (w, c) in acc {
        if c != 0 {
            out.add_term(&w, c).map_err(|e| match e {
                Error::NotDominant(w) => {
                    Error::BadTwist(format!("{w} pairs non-integrally with a coroot"))
                }
                other => other,
            })?;
        }
    }
    Ok(out)
}

/// Determinant of a square matrix over a twisted module by subset expansion.
fn determinant(m: &[Vec<TorusElement>], sigma: &TwistClass) -> Result<TorusElement> {
    let n = m.len();
    let rank = sigma.rank();
    if n == 0 {
        return Ok(TorusElement::one(rank));
    }
    let mut twist = TwistClass::zero(rank);
    let mut twists = vec![twist.clone()];
    for _ in 0..n {
        twist = twist.add(sigma);
        twists.push(twist.clone());
    }
    let full = 1usize << n;
    let mut f: Vec<TorusElement> = vec![TorusElement::zero(TwistClass::zero(rank)); full];
    f[0] = TorusElement::one(rank);
    for s in 1..full {
        let k = s.count_ones() as usize;
        let row = k - 1;
        let mut acc = TorusElement::zero(twists[k].clone());
        for j in 0..n {
            if s & (1 << j) == 0 {
                continue;
            }
            let rest = s & !(1 << j);
            if f[rest].is_zero() || m[row][j].is_zero() {
                continue;
            }
            let above = (rest >> (j + 1)).count_ones();
            let sign = if above % 2 == 0 { 1 } else { -1 };
            acc.add_scaled_in_place(&f[rest].try_mul(&m[row][j])?, sign)?;
        }
        f[s] = acc;
    }
    Ok(f[full - 1].clone())
}

#[derive(Clone, Debug, Serialize)]
pub struct PairingReport {
    pub tau: TwistClass,
    pub basis_a: Vec<TorusElement>,
    pub basis_b: Vec<TorusElement>,
    pub gram: Vec<Vec<GroupElement>>,
    pub determinant_character: TorusElement,
    pub is_unit: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LefschetzSample {
    /// Torus point as fractions of a full turn per coordinate.
    pub angles: Vec<f64>,
    pub symbolic: [f64; 2],
    pub fixed_point: [f64; 2],
}

#[derive(Clone, Debug, Serialize)]
pub struct LefschetzReport {
    pub trials: usize,
    pub seed: u64,
    pub max_relative_error: f64,
    pub samples: Vec<LefschetzSample>,
}

/// H-module `V_H(ρ_M)` restricted to T, the unit for `i_*`.
pub fn unit_input(problem: &InductionProblem) -> Result<TorusElement> {
    irreducible_restriction(problem.small(), problem.rho_m())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::RootDatum;
    use crate::weyl::{apply_antisymmetrizer, Antisymmetrizer};
    use std::sync::Arc;

    fn datum(label: &str) -> Arc<RootDatum> {
        Arc::new(RootDatum::from_label(label).unwrap())
    }

    fn problem(label: &str, preset: &str) -> InductionProblem {
        let d = datum(label);
        InductionProblem::for_pair(&SubgroupDatum::preset(&d, preset).unwrap()).unwrap()
    }

    /// `i_*` straight from the definition: antisymmetrize over W^H, then
    /// divide by d_G exactly and read off highest weights.
    fn induce_oracle(p: &InductionProblem, a: &TorusElement) -> GroupElement {
        let j = apply_antisymmetrizer(
            Antisymmetrizer::M,
            p.weyl_big(),
            p.weyl_small(),
            p.coset_reps(),
            &p.weyl_denominator(Scope::H).try_mul(a).unwrap(),
        )
        .unwrap();
        let q = crate::charring::divide_by_weyl_denominator(p.big(), &j).unwrap();
        let mut out = GroupElement::zero(p.big(), q.twist().clone());
        let mut rest = q;
        // Peel off highest weights in decreasing height.
        while !rest.is_zero() {
            let rho = p.big().datum().rho().clone();
            let (top, c) = rest
                .terms()
                .max_by(|(x, _), (y, _)| {
                    let hx = p
                        .big()
                        .datum()
                        .to_fundamental(x)
                        .iter()
                        .zip(p.big().datum().to_fundamental(&rho))
                        .map(|(a, b)| a * b)
                        .sum::<num_rational::Rational64>();
                    let hy = p
                        .big()
                        .datum()
                        .to_fundamental(y)
                        .iter()
                        .zip(p.big().datum().to_fundamental(&rho))
                        .map(|(a, b)| a * b)
                        .sum::<num_rational::Rational64>();
                    hx.cmp(&hy).then_with(|| x.cmp(y))
                })
                .unwrap();
            out.add_term(&top, c).unwrap();
            let chi = irreducible_restriction(p.big(), &top).unwrap();
            rest.add_scaled_in_place(&chi, -c).unwrap();
        }
        out
    }

    #[test]
    fn a1_partial_examples() {
        let d = datum("A1");
        let g = SubgroupDatum::full(&d);
        let w = d.fundamental_weight(0).clone();
        assert_eq!(
            partial(&g, &TorusElement::monomial(&w, 1)).unwrap(),
            GroupElement::trivial(&g)
        );
        assert!(
            partial(&g, &TorusElement::monomial(&RationalWeight::zero(1), 1))
                .unwrap()
                .is_zero()
        );
        assert_eq!(
            partial(&g, &TorusElement::monomial(&-&w, 1)).unwrap(),
            GroupElement::trivial(&g).scale(-1)
        );
    }

    #[test]
    fn unit_induction() {
        for (label, preset) in [
            ("A2", "t"),
            ("A2", "levi:1"),
            ("G2", "a2long"),
            ("B3", "so3xso4"),
            ("C2", "a1xa1"),
        ] {
            let p = problem(label, preset);
            let u = unit_input(&p).unwrap();
            assert_eq!(
                p.induce_twisted_spinc(&u, true).unwrap(),
                GroupElement::trivial(p.big()),
                "{label} {preset}"
            );
        }
    }

    #[test]
    fn euler_characteristic() {
        for (label, preset, chi) in [
            ("A2", "t", 6),
            ("G2", "a2long", 2),
            ("B3", "so3xso4", 6),
            ("A1", "g", 1),
        ] {
            let p = problem(label, preset);
            let out = p
                .induce_twisted_spinc(&p.hodge_de_rham_input(), true)
                .unwrap();
            assert_eq!(out, GroupElement::trivial(p.big()).scale(chi), "{label}");
        }
    }

    #[test]
    fn matches_definition_on_small_inputs() {
        let p = problem("A2", "levi:1");
        let d = p.big().datum().clone();
        let rho_m = p.rho_m().clone();
        for mu in [
            RationalWeight::zero(2),
            d.fundamental_weight(0).clone(),
            d.fundamental_weight(1).scale(2),
        ] {
            let lam = &mu + &rho_m;
            if !Reflector::new(p.small()).is_dominant(lam.num()) {
                continue;
            }
            let a = irreducible_restriction(p.small(), &lam).unwrap();
            assert_eq!(
                p.induce_twisted_spinc(&a, true).unwrap(),
                induce_oracle(&p, &a)
            );
            assert_eq!(p.bwb_irreducible(&lam).unwrap(), induce_oracle(&p, &a));
        }
    }

    #[test]
    fn holomorphic_is_weyl_character_formula() {
        let p = problem("A2", "t");
        let d = p.big().datum().clone();
        let lam = &d.fundamental_weight(0).scale(2) + d.fundamental_weight(1);
        let out = p
            .induce_classical(
                &ClassicalKind::Holomorphic,
                &TorusElement::monomial(&lam, 1),
            )
            .unwrap();
        let expect = GroupElement::irreducible(p.big(), &lam).unwrap();
        assert_eq!(out, expect);
        // Levi with γ = 2ρ_M agrees with holomorphic.
        let gamma = p.rho_m().scale(2).as_integral().unwrap().to_vec();
        let other = p
            .induce_classical(
                &ClassicalKind::SpincWith(gamma),
                &TorusElement::monomial(&lam, 1),
            )
            .unwrap();
        assert_eq!(out, other);
    }

    #[test]
    fn spin_induction_of_one_vanishes_for_a1() {
        let p = problem("A1", "t");
        let out = p
            .induce_classical(&ClassicalKind::Spin, &TorusElement::one(1))
            .unwrap();
        assert!(out.is_zero());
        let q = problem("A1:adj", "t");
        assert_eq!(
            q.induce_classical(&ClassicalKind::Spin, &TorusElement::one(1))
                .unwrap_err()
                .code(),
            "not_spin"
        );
        let r = problem("G2", "a2long");
        assert_eq!(
            r.induce_classical(&ClassicalKind::Holomorphic, &TorusElement::one(2))
                .unwrap_err()
                .code(),
            "not_levi"
        );
    }

    #[test]
    fn bwb_examples() {
        let p = problem("A2", "t");
        assert_eq!(
            p.bwb_irreducible(p.rho_m()).unwrap(),
            GroupElement::trivial(p.big())
        );
        let wall = p.rho_m() - p.big().datum().fundamental_weight(0);
        assert!(p.bwb_irreducible(&wall).unwrap().is_zero());
        let q = problem("A2", "levi:1");
        let w = q.big().datum().fundamental_weight(0);
        assert_eq!(
            q.bwb_irreducible(&(q.rho_m() - &w.scale(3)))
                .unwrap_err()
                .code(),
            "not_h_dominant"
        );
    }

    #[test]
    fn branch_adjoint_a2_to_levi() {
        let p = problem("A2", "levi:1");
        let adj = GroupElement::irreducible(p.big(), p.big().datum().rho()).unwrap();
        let b = p.branch(&adj).unwrap();
        assert_eq!(b.len(), 4);
        let mut dims: Vec<i64> = b
            .terms()
            .map(|(w, _)| crate::charring::weyl_dimension(p.small(), &w).unwrap())
            .collect();
        dims.sort();
        assert_eq!(dims, vec![1, 2, 2, 3]);
        assert_eq!(b.dimension().unwrap(), 8);
        let same = problem("A2", "g");
        assert_eq!(same.branch(&adj).unwrap().offsets(), adj.offsets());
    }

    #[test]
    fn steinberg_a1() {
        let p = problem("A1", "t");
        let b = p.steinberg_basis().unwrap();
        let w = p.big().datum().fundamental_weight(0).clone();
        assert_eq!(
            b,
            vec![TorusElement::one(1), TorusElement::monomial(&-&w, 1)]
        );
    }

    #[test]
    fn pairing_units() {
        for label in ["A1", "A2"] {
            let p = problem(label, "t");
            for tau in [
                TwistClass::zero(p.rho_m().rank()),
                TwistClass::of(p.rho_m()),
            ] {
                let (a, b) = p.steinberg_pairing_bases(&tau).unwrap();
                let r = p.pairing_report(&tau, &a, &b).unwrap();
                assert!(r.is_unit, "{label} {tau}: {}", r.determinant_character);
                let swapped = p
                    .pairing_report(&p.input_twist().sub(&tau), &b, &a)
                    .unwrap();
                for i in 0..a.len() {
                    for j in 0..a.len() {
                        assert_eq!(r.gram[i][j], swapped.gram[j][i]);
                    }
                }
            }
        }
        let p = problem("A2", "g");
        let tau = TwistClass::zero(2);
        let (a, b) = p.steinberg_pairing_bases(&tau).unwrap();
        let r = p.pairing_report(&tau, &a, &b).unwrap();
        assert!(r.is_unit);
        assert_eq!(r.gram[0][0], GroupElement::trivial(p.big()));
        assert_eq!(
            p.pairing_report(&tau, &a, &[]).unwrap_err().code(),
            "wrong_basis_size"
        );
        let q = problem("A1", "t");
        let (a, b) = q.steinberg_pairing_bases(&TwistClass::zero(1)).unwrap();
        let half = q.big().datum().fundamental_weight(0).half();
        let off: Vec<TorusElement> = b.iter().map(|x| x.shift_by(&half)).collect();
        assert_eq!(
            q.pairing_report(&TwistClass::zero(1), &a, &off)
                .unwrap_err()
                .code(),
            "bad_twist_pairing"
        );
    }

    #[test]
    fn lefschetz_cases() {
        for (label, preset) in [("A2", "t"), ("G2", "a2long"), ("A2", "levi:2")] {
            let p = problem(label, preset);
            let unit = unit_input(&p).unwrap();
            let r = p.lefschetz_check(p.euler_class(), &unit, 20, 3).unwrap();
            assert!(
                r.max_relative_error <= 1e-8,
                "{label}: {}",
                r.max_relative_error
            );
            for s in &r.samples {
                assert!((s.symbolic[0] - 1.0).abs() < 1e-9 && s.symbolic[1].abs() < 1e-9);
            }
            let hdr = p
                .lefschetz_check(&p.hodge_de_rham_euler(), &TorusElement::one(2), 20, 4)
                .unwrap();
            let n = p.coset_reps().len() as f64;
            assert!(hdr.max_relative_error <= 1e-8);
            for s in &hdr.samples {
                assert!((s.fixed_point[0] - n).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn twist_errors() {
        let p = problem("A2", "t");
        let a = TorusElement::monomial(&p.big().datum().fundamental_weight(0).half(), 1);
        assert_eq!(
            p.induce_twisted_spinc(&a, true).unwrap_err().code(),
            "bad_twist"
        );
        let q = problem("A2", "levi:1");
        let w = q.big().datum().fundamental_weight(0).clone();
        let bad = TorusElement::monomial(&(&w + q.rho_m()), 1);
        assert_eq!(
            q.induce_twisted_spinc(&bad, true).unwrap_err().code(),
            "not_wh_invariant"
        );
    }
}
