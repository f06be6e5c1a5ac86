use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::torus::{TorusElement, TwistClass};
use crate::error::{Error, Result};
use crate::rational::{RationalWeight, Weight};
use crate::rootdata::{dot, SubgroupDatum};
use crate::weyl::{Reflector, WeylElement};

/// `d = e^ρ ∏_{α>0} (1 - e^{-α})` for the scope.
pub fn weyl_denominator(scope: &SubgroupDatum) -> TorusElement {
    let d = scope.datum();
    let mut out = TorusElement::monomial(scope.rho_own(), 1);
    for &i in scope.positive() {
        let neg: Weight = d.root(i).weight.iter().map(|x| -x).collect();
        out = out.mul_one_minus(&neg);
    }
    out
}

/// `e^{-ρ_M} ∏_{α ∈ ℛ_M^+} (1 - e^α)` for `small` inside `big`.
pub fn euler_class_relative(big: &SubgroupDatum, small: &SubgroupDatum) -> TorusElement {
    let d = big.datum();
    let rho_m = big.rho_own() - small.rho_own();
    let mut out = TorusElement::monomial(&-&rho_m, 1);
    for &i in big.positive() {
        if !small.contains_root(i) {
            out = out.mul_one_minus(&d.root(i).weight);
        }
    }
    out
}

/// Euler class of the twisted Spin^c Dirac operator on G/H.
pub fn euler_class(sub: &SubgroupDatum) -> TorusElement {
    euler_class_relative(&SubgroupDatum::full(sub.datum()), sub)
}

fn reflections(scope: &SubgroupDatum) -> Vec<WeylElement> {
    let d = scope.datum();
    scope
        .simple()
        .iter()
        .map(|&i| WeylElement::reflection(&d.root(i).weight, &d.root(i).coroot))
        .collect()
}

/// Coefficients `c_λ` with `a = Σ c_λ J(e^λ)`, λ strictly dominant.
pub fn anti_invariant_decompose(
    scope: &SubgroupDatum,
    a: &TorusElement,
) -> Result<Vec<(RationalWeight, i64)>> {
    if !a.is_anti_invariant_under(&reflections(scope))? {
        return Err(Error::NotAntiInvariant);
    }
    let refl = Reflector::new(scope);
    let den = a.twist().shift().den();
    Ok(a.terms()
        .filter(|(e, _)| {
            let x = e.numerators_at(den.lcm(&e.den()));
            (0..refl.simple_count()).all(|j| refl.pairing(j, &x) > 0)
        })
        .collect())
}

/// Exact quotient `a / d` by the Weyl denominator of the scope.
pub fn divide_by_weyl_denominator(scope: &SubgroupDatum, a: &TorusElement) -> Result<TorusElement> {
    let d = scope.datum();
    let mut q = a.shift_by(&-scope.rho_own());
    for &i in scope.positive() {
        let neg: Weight = d.root(i).weight.iter().map(|x| -x).collect();
        q = q.divide_by_one_minus(&neg)?;
    }
    Ok(q)
}

/// Weyl dimension formula `∏ <λ+ρ, α^∨> / <ρ, α^∨>` for a dominant λ.
pub fn weyl_dimension(scope: &SubgroupDatum, lambda: &RationalWeight) -> Result<i64> {
    let d = scope.datum();
    let rho = scope.rho_own();
    let s = lambda.den().lcm(&rho.den());
    let l = lambda.numerators_at(s);
    let r = rho.numerators_at(s);
    let lr: Weight = l.iter().zip(&r).map(|(a, b)| a + b).collect();
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for &i in scope.positive() {
        let c = &d.root(i).coroot;
        num *= dot(c, &lr);
        den *= dot(c, &r);
    }
    if den.is_zero() || !(num.clone() % den.clone()).is_zero() {
        return Err(Error::InternalInconsistency(format!(
            "dimension of {lambda} is not an integer"
        )));
    }
    (num / den)
        .to_i64()
        .ok_or(Error::Overflow("weyl dimension"))
}

/// Full T-character of the irreducible scope-module with highest weight λ,
/// by Freudenthal's multiplicity formula.
///
/// The invariant form is `B(x, y) = Σ_{α>0} <x, α^∨><y, α^∨>`, which needs
/// no root lengths and ignores central directions. Weights are scaled by a
/// common denominator so the recursion runs in integers.
pub fn irreducible_restriction(
    scope: &SubgroupDatum,
    lambda: &RationalWeight,
) -> Result<TorusElement> {
    let d = scope.datum();
    if lambda.rank() != d.rank() {
        return Err(Error::DimensionMismatch {
            expected: d.rank(),
            found: lambda.rank(),
        });
    }
    let refl = Reflector::new(scope);
    if (0..refl.simple_count()).any(|j| refl.pairing(j, lambda.num()) < 0) {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let twist = TwistClass::of(lambda);
    let rho = scope.rho_own();
    let s = lambda.den().lcm(&rho.den());
    let l = lambda.numerators_at(s);
    let r = rho.numerators_at(s);
    let coroots: Vec<&Vec<i64>> = scope
        .positive()
        .iter()
        .map(|&i| &d.root(i).coroot)
        .collect();
    let scaled: Vec<Weight> = scope
        .positive()
        .iter()
        .map(|&i| d.root(i).weight.iter().map(|x| x * s).collect())
        .collect();
    let pv = |x: &[i64]| -> Vec<i128> { coroots.iter().map(|c| i128::from(dot(c, x))).collect() };
    let form = |x: &[i128], y: &[i128]| -> i128 { x.iter().zip(y).map(|(a, b)| a * b).sum() };

    // Dominant weights below λ: every one is reachable from λ by subtracting
    // positive roots through dominant weights.
    let mut dominant: Vec<Weight> = vec![l.clone()];
    let mut index: HashMap<Weight, usize> = HashMap::from([(l.clone(), 0)]);
    let mut k = 0;
    while k < dominant.len() {
        for a in &scaled {
            let y: Weight = dominant[k].iter().zip(a).map(|(u, v)| u - v).collect();
            if refl.is_dominant(&y) && !index.contains_key(&y) {
                index.insert(y.clone(), dominant.len());
                dominant.push(y);
            }
        }
        k += 1;
    }
    let pr = pv(&r);
    let mut order: Vec<usize> = (0..dominant.len()).collect();
    let heights: Vec<i128> = dominant.iter().map(|x| form(&pv(x), &pr)).collect();
    order.sort_by(|&a, &b| {
        heights[b]
            .cmp(&heights[a])
            .then_with(|| dominant[a].cmp(&dominant[b]))
    });

    let lr: Weight = l.iter().zip(&r).map(|(a, b)| a + b).collect();
    let plr = pv(&lr);
    let top = form(&plr, &plr);
    let palpha: Vec<Vec<i128>> = scaled.iter().map(|a| pv(a)).collect();
    let mut mult: Vec<Option<i64>> = vec![None; dominant.len()];
    mult[0] = Some(1);
    for &idx in &order {
        if idx == 0 {
            continue;
        }
        let mu = &dominant[idx];
        let mut num: i128 = 0;
        for (a, pa) in scaled.iter().zip(&palpha) {
            let mut y = mu.clone();
            loop {
                for (u, v) in y.iter_mut().zip(a) {
                    *u += v;
                }
                let mut z = y.clone();
                refl.dominate(&mut z);
                let Some(&zi) = index.get(&z) else { break };
                let m = mult[zi].ok_or_else(|| {
                    Error::InternalInconsistency(
                        "multiplicity requested before it was computed".into(),
                    )
                })?;
                num += i128::from(m) * form(&pv(&y), pa);
            }
        }
        let mr: Weight = mu.iter().zip(&r).map(|(a, b)| a + b).collect();
        let pmr = pv(&mr);
        let den = top - form(&pmr, &pmr);
        if den <= 0 || (2 * num) % den != 0 {
            return Err(Error::InternalInconsistency(format!(
                "Freudenthal step at {mu:?} is not integral"
            )));
        }
        mult[idx] =
            Some(i64::try_from(2 * num / den).map_err(|_| Error::Overflow("multiplicity"))?);
    }

    let delta = twist.shift().numerators_at(s);
    let mut terms = std::collections::BTreeMap::new();
    let mut total: i64 = 0;
    for (idx, mu) in dominant.iter().enumerate() {
        let m = mult[idx].expect("computed");
        if m == 0 {
            continue;
        }
        for x in refl.orbit(mu) {
            let off: Weight = x.iter().zip(&delta).map(|(a, b)| (a - b) / s).collect();
            terms.insert(off, m);
            total += m;
        }
    }
    let expected = weyl_dimension(scope, lambda)?;
    if total != expected {
        return Err(Error::InternalInconsistency(format!(
            "character of {lambda} has {total} weights with multiplicity, expected {expected}"
        )));
    }
    Ok(TorusElement::from_offsets(twist, terms))
}
