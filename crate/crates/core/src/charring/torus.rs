use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{RationalWeight, Weight};
use crate::weyl::WeylElement;

/// A shift class δ mod X(T), stored with every coordinate in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TwistClass(RationalWeight);

impl TwistClass {
    pub fn of(w: &RationalWeight) -> Self {
        TwistClass(w.split().1)
    }

    pub fn zero(rank: usize) -> Self {
        TwistClass(RationalWeight::zero(rank))
    }

    pub fn shift(&self) -> &RationalWeight {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(&self, other: &TwistClass) -> TwistClass {
        TwistClass::of(&(&self.0 + &other.0))
    }

    pub fn neg(&self) -> TwistClass {
        TwistClass::of(&-&self.0)
    }

    pub fn sub(&self, other: &TwistClass) -> TwistClass {
        self.add(&other.neg())
    }

    /// Whether `w(δ) - δ` lies in X(T).
    pub fn is_stable_under(&self, w: &WeylElement) -> bool {
        (&w.apply_rational(&self.0) - &self.0).is_integral()
    }
}

impl fmt::Display for TwistClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Finitely supported integer function on δ + X(T). Keys are offsets `o`
/// standing for the exponent `δ + o`; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusElement {
    twist: TwistClass,
    terms: BTreeMap<Weight, i64>,
}

fn collect(map: HashMap<Weight, i64>) -> BTreeMap<Weight, i64> {
    map.into_iter().filter(|(_, c)| *c != 0).collect()
}

impl TorusElement {
    pub fn zero(twist: TwistClass) -> Self {
        TorusElement {
            twist,
            terms: BTreeMap::new(),
        }
    }

    pub fn zero_like(a: &TorusElement) -> Self {
        Self::zero(a.twist.clone())
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(&RationalWeight::zero(rank), 1)
    }

    /// `coeff * e^exponent`.
    pub fn monomial(exponent: &RationalWeight, coeff: i64) -> Self {
        let (offset, frac) = exponent.split();
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(offset, coeff);
        }
        TorusElement {
            twist: TwistClass(frac),
            terms,
        }
    }

    /// Builds an element from explicit exponents, all of which must lie in
    /// the coset `twist`.
    pub fn from_terms<'a>(
        twist: TwistClass,
        terms: impl IntoIterator<Item = (&'a RationalWeight, i64)>,
    ) -> Result<Self> {
        let mut map: HashMap<Weight, i64> = HashMap::new();
        for (w, c) in terms {
            if w.rank() != twist.rank() {
                return Err(Error::DimensionMismatch {
                    expected: twist.rank(),
                    found: w.rank(),
                });
            }
            let diff = w - twist.shift();
            let Some(o) = diff.as_integral() else {
                return Err(Error::BadTwist(format!(
                    "exponent {w} is not in the coset {twist}"
                )));
            };
            *map.entry(o.to_vec()).or_insert(0) += c;
        }
        Ok(TorusElement {
            twist,
            terms: collect(map),
        })
    }

    pub(crate) fn from_offsets(twist: TwistClass, terms: BTreeMap<Weight, i64>) -> Self {
        debug_assert!(terms.values().all(|&c| c != 0));
        TorusElement { twist, terms }
    }

    pub fn rank(&self) -> usize {
        self.twist.rank()
    }

    pub fn twist(&self) -> &TwistClass {
        &self.twist
    }

    /// Number of nonzero terms; see also `is_zero`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn offsets(&self) -> &BTreeMap<Weight, i64> {
        &self.terms
    }

    pub fn exponent(&self, offset: &[i64]) -> RationalWeight {
        self.twist.shift().add_int(offset)
    }

    /// Terms as `(exponent, coefficient)` in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (RationalWeight, i64)> + '_ {
        self.terms.iter().map(|(o, &c)| (self.exponent(o), c))
    }

    pub fn coefficient(&self, exponent: &RationalWeight) -> i64 {
        match (exponent - self.twist.shift()).as_integral() {
            Some(o) => self.terms.get(o).copied().unwrap_or(0),
            None => 0,
        }
    }

    /// Sum of coefficients (the value at the identity).
    pub fn augmentation(&self) -> i64 {
        self.terms.values().sum()
    }

    fn check_compatible(&self, other: &TorusElement) -> Result<()> {
        if self.rank() != other.rank() {
            return Err(Error::DatumMismatch);
        }
        if self.twist != other.twist {
            return Err(Error::BadTwist(format!(
                "cannot add twists {} and {}",
                self.twist, other.twist
            )));
        }
        Ok(())
    }

    /// `self += k * other`.
    pub fn add_scaled_in_place(&mut self, other: &TorusElement, k: i64) -> Result<()> {
        self.check_compatible(other)?;
        if k == 0 {
            return Ok(());
        }
        for (o, &c) in &other.terms {
            let e = self.terms.entry(o.clone()).or_insert(0);
            *e += k * c;
            if *e == 0 {
                self.terms.remove(o);
            }
        }
        Ok(())
    }

    pub fn try_add(&self, other: &TorusElement) -> Result<TorusElement> {
        let mut out = self.clone();
        out.add_scaled_in_place(other, 1)?;
        Ok(out)
    }

    pub fn try_sub(&self, other: &TorusElement) -> Result<TorusElement> {
        let mut out = self.clone();
        out.add_scaled_in_place(other, -1)?;
        Ok(out)
    }

    pub fn scale(&self, k: i64) -> TorusElement {
        if k == 0 {
            return Self::zero_like(self);
        }
        TorusElement {
            twist: self.twist.clone(),
            terms: self
                .terms
                .iter()
                .map(|(o, &c)| (o.clone(), c * k))
                .collect(),
        }
    }

    /// Divides every coefficient by `k`, failing if any is not divisible.
    pub fn exact_div(&self, k: i64) -> Result<TorusElement> {
        let mut terms = BTreeMap::new();
        for (o, &c) in &self.terms {
            if c % k != 0 {
                return Err(Error::InexactDivision(format!(
                    "coefficient {c} is not divisible by {k}"
                )));
            }
            terms.insert(o.clone(), c / k);
        }
        Ok(TorusElement {
            twist: self.twist.clone(),
            terms,
        })
    }

    pub fn neg(&self) -> TorusElement {
        self.scale(-1)
    }

    /// Convolution product. Twists add.
    pub fn try_mul(&self, other: &TorusElement) -> Result<TorusElement> {
        if self.rank() != other.rank() {
            return Err(Error::DatumMismatch);
        }
        let (carry, frac) = (self.twist.shift() + other.twist.shift()).split();
        let mut map: HashMap<Weight, i64> = HashMap::with_capacity(self.len() * other.len());
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let key: Weight = a
                    .iter()
                    .zip(b)
                    .zip(&carry)
                    .map(|((x, y), z)| x + y + z)
                    .collect();
                *map.entry(key).or_insert(0) += ca * cb;
            }
        }
        Ok(TorusElement {
            twist: TwistClass(frac),
            terms: collect(map),
        })
    }

    /// Multiplication by `e^shift`.
    pub fn shift_by(&self, shift: &RationalWeight) -> TorusElement {
        let (carry, frac) = (self.twist.shift() + shift).split();
        let terms = self
            .terms
            .iter()
            .map(|(o, &c)| (o.iter().zip(&carry).map(|(x, y)| x + y).collect(), c))
            .collect();
        TorusElement {
            twist: TwistClass(frac),
            terms,
        }
    }

    /// `self * (1 - e^beta)` for an integral `beta`.
    pub fn mul_one_minus(&self, beta: &[i64]) -> TorusElement {
        let mut out = self.clone();
        for (o, &c) in &self.terms {
            let key: Weight = o.iter().zip(beta).map(|(x, y)| x + y).collect();
            let e = out.terms.entry(key.clone()).or_insert(0);
            *e -= c;
            if *e == 0 {
                out.terms.remove(&key);
            }
        }
        out
    }

    /// `e^λ -> e^{-λ}`; the twist is negated.
    pub fn dualize(&self) -> TorusElement {
        let (carry, frac) = (-self.twist.shift()).split();
        let terms = self
            .terms
            .iter()
            .map(|(o, &c)| (o.iter().zip(&carry).map(|(x, y)| y - x).collect(), c))
            .collect();
        TorusElement {
            twist: TwistClass(frac),
            terms,
        }
    }

    /// Weyl group action on exponents. The twist class must be stable.
    pub fn act(&self, w: &WeylElement) -> Result<TorusElement> {
        let moved = &w.apply_rational(self.twist.shift()) - self.twist.shift();
        let Some(carry) = moved.as_integral() else {
            return Err(Error::ShiftNotStable);
        };
        let terms: BTreeMap<Weight, i64> = self
            .terms
            .iter()
            .map(|(o, &c)| {
                (
                    w.apply(o).iter().zip(carry).map(|(x, y)| x + y).collect(),
                    c,
                )
            })
            .collect();
        Ok(TorusElement {
            twist: self.twist.clone(),
            terms,
        })
    }

    /// Exact quotient by `1 - e^beta` for a nonzero integral `beta`.
    ///
    /// Terms are grouped into lines `base + k beta`; along each line the
    /// quotient coefficients are prefix sums, and division is exact iff every
    /// line sums to zero.
    pub fn divide_by_one_minus(&self, beta: &[i64]) -> Result<TorusElement> {
        let j = beta
            .iter()
            .position(|&b| b != 0)
            .ok_or_else(|| Error::InexactDivision("division by 1 - e^0".into()))?;
        let bj = beta[j];
        let mut lines: HashMap<Weight, BTreeMap<i64, i64>> = HashMap::new();
        for (o, &c) in &self.terms {
            let k = Integer::div_floor(&o[j], &bj);
            let base: Weight = o.iter().zip(beta).map(|(x, b)| x - k * b).collect();
            *lines.entry(base).or_default().entry(k).or_insert(0) += c;
        }
        let mut terms = BTreeMap::new();
        for (base, line) in lines {
            let (&lo, _) = line.first_key_value().expect("nonempty");
            let (&hi, _) = line.last_key_value().expect("nonempty");
            let mut acc = 0i64;
            for k in lo..hi {
                acc += line.get(&k).copied().unwrap_or(0);
                if acc != 0 {
                    terms.insert(base.iter().zip(beta).map(|(x, b)| x + k * b).collect(), acc);
                }
            }
            acc += line[&hi];
            if acc != 0 {
                return Err(Error::InexactDivision(format!(
                    "not divisible by 1 - e^{beta:?}"
                )));
            }
        }
        Ok(TorusElement {
            twist: self.twist.clone(),
            terms,
        })
    }

    /// `sum c_λ exp(2πi <λ, angles>)` with λ in real coordinates.
    pub fn numeric_evaluate(&self, angles: &[f64]) -> Result<Complex64> {
        if angles.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: angles.len(),
            });
        }
        let base: f64 = self
            .twist
            .shift()
            .to_f64()
            .iter()
            .zip(angles)
            .map(|(x, t)| x * t)
            .sum();
        let mut acc = Complex64::new(0.0, 0.0);
        for (o, &c) in &self.terms {
            let phase: f64 = base
                + o.iter()
                    .zip(angles)
                    .map(|(&x, t)| x as f64 * t)
                    .sum::<f64>();
            acc += Complex64::from_polar(c as f64, std::f64::consts::TAU * phase);
        }
        Ok(acc)
    }

    /// Whether `w(self) == self` for every listed element.
    pub fn is_invariant_under<'a>(
        &self,
        ws: impl IntoIterator<Item = &'a WeylElement>,
    ) -> Result<bool> {
        for w in ws {
            if &self.act(w)? != self {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether `w(self) == det(w) self` for every listed element.
    pub fn is_anti_invariant_under<'a>(
        &self,
        ws: impl IntoIterator<Item = &'a WeylElement>,
    ) -> Result<bool> {
        for w in ws {
            let moved = self.act(w)?;
            if moved != self.scale(w.det()) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl std::ops::Mul for &TorusElement {
    type Output = TorusElement;
    /// Panics on rank mismatch; use [`TorusElement::try_mul`] to handle it.
    fn mul(self, rhs: &TorusElement) -> TorusElement {
        self.try_mul(rhs).expect("operands over the same lattice")
    }
}

/// Canonical text form: a `twist` line followed by `coeff @ exponent` lines
/// in increasing offset order.
impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "twist {}", self.twist)?;
        for (e, c) in self.terms() {
            writeln!(f, "{c} @ {e}")?;
        }
        Ok(())
    }
}

impl FromStr for TorusElement {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = |m: &str| Error::InternalInconsistency(format!("malformed torus element: {m}"));
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let head = lines.next().ok_or_else(|| bad("empty input"))?;
        let twist = head
            .strip_prefix("twist")
            .ok_or_else(|| bad("missing twist line"))?;
        let twist = TwistClass::of(&twist.parse::<RationalWeight>()?);
        let mut terms = Vec::new();
        for l in lines {
            let (c, e) = l.split_once('@').ok_or_else(|| bad(l))?;
            let c: i64 = c.trim().parse().map_err(|_| bad(l))?;
            terms.push((e.parse::<RationalWeight>()?, c));
        }
        TorusElement::from_terms(twist, terms.iter().map(|(e, c)| (e, *c)))
    }
}

#[derive(Serialize, Deserialize)]
struct WireTerm {
    coeff: i64,
    weight: RationalWeight,
}

#[derive(Serialize, Deserialize)]
struct WireTorus {
    twist: RationalWeight,
    terms: Vec<WireTerm>,
}

impl Serialize for TorusElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WireTorus {
            twist: self.twist.shift().clone(),
            terms: self
                .terms()
                .map(|(weight, coeff)| WireTerm { coeff, weight })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TorusElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = WireTorus::deserialize(d)?;
        let twist = TwistClass::of(&w.twist);
        TorusElement::from_terms(twist, w.terms.iter().map(|t| (&t.weight, t.coeff)))
            .map_err(serde::de::Error::custom)
    }
}
