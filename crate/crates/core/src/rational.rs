//! Rational weights: a numerator vector over the X(T) basis with a single
//! positive denominator, always kept in lowest terms.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer weight in the chosen basis of X(T).
pub type Weight = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawRational")]
pub struct RationalWeight {
    num: Vec<i64>,
    den: i64,
}

#[derive(Deserialize)]
struct RawRational {
    num: Vec<i64>,
    den: i64,
}

impl TryFrom<RawRational> for RationalWeight {
    type Error = String;
    fn try_from(raw: RawRational) -> std::result::Result<Self, String> {
        if raw.den <= 0 {
            return Err("denominator must be positive".into());
        }
        Ok(RationalWeight::new(raw.num, raw.den))
    }
}

impl RationalWeight {
    /// Builds the canonical form of `num / den`. Panics if `den == 0`.
    pub fn new(mut num: Vec<i64>, mut den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        if den < 0 {
            den = -den;
            num.iter_mut().for_each(|x| *x = -*x);
        }
        let g = num.iter().fold(den, |g, &x| g.gcd(&x));
        if g > 1 {
            num.iter_mut().for_each(|x| *x /= g);
            den /= g;
        }
        RationalWeight { num, den }
    }

    pub fn integral(num: Vec<i64>) -> Self {
        RationalWeight { num, den: 1 }
    }

    pub fn zero(rank: usize) -> Self {
        RationalWeight {
            num: vec![0; rank],
            den: 1,
        }
    }

    pub fn from_rationals(coords: &[Rational64]) -> Self {
        let den = coords.iter().fold(1i64, |l, c| l.lcm(c.denom()));
        let num = coords
            .iter()
            .map(|c| c.numer() * (den / c.denom()))
            .collect();
        RationalWeight::new(num, den)
    }

    pub fn num(&self) -> &[i64] {
        &self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn rank(&self) -> usize {
        self.num.len()
    }

    pub fn is_integral(&self) -> bool {
        self.den == 1
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|&x| x == 0)
    }

    pub fn coord(&self, i: usize) -> Rational64 {
        Rational64::new(self.num[i], self.den)
    }

    /// Integer coordinates, if the weight is integral.
    pub fn as_integral(&self) -> Option<&[i64]> {
        (self.den == 1).then_some(&self.num[..])
    }

    /// Numerators over the denominator `d`, which must be a multiple of `den`.
    pub fn numerators_at(&self, d: i64) -> Vec<i64> {
        debug_assert!(d % self.den == 0);
        let f = d / self.den;
        self.num.iter().map(|&x| x * f).collect()
    }

    pub fn scale(&self, k: i64) -> Self {
        RationalWeight::new(self.num.iter().map(|&x| x * k).collect(), self.den)
    }

    pub fn div(&self, k: i64) -> Self {
        RationalWeight::new(self.num.clone(), self.den * k)
    }

    pub fn half(&self) -> Self {
        self.div(2)
    }

    /// Adds an integer vector.
    pub fn add_int(&self, v: &[i64]) -> Self {
        let num = self
            .num
            .iter()
            .zip(v)
            .map(|(&a, &b)| a + b * self.den)
            .collect();
        RationalWeight { num, den: self.den }
    }

    /// Splits into an integer part and a fractional part with every
    /// coordinate in `[0, 1)`.
    pub fn split(&self) -> (Weight, RationalWeight) {
        let mut floor = Vec::with_capacity(self.num.len());
        let mut frac = Vec::with_capacity(self.num.len());
        for &x in &self.num {
            let (q, r) = x.div_mod_floor(&self.den);
            floor.push(q);
            frac.push(r);
        }
        (floor, RationalWeight::new(frac, self.den))
    }

    /// Value of an integer covector on the weight.
    pub fn pair(&self, covector: &[i64]) -> Rational64 {
        let s: i64 = self.num.iter().zip(covector).map(|(&a, &b)| a * b).sum();
        Rational64::new(s, self.den)
    }

    /// Integer matrix (row-major, `rank x rank`) applied to the weight.
    pub fn transform(&self, matrix: &[i64]) -> Self {
        let n = self.num.len();
        let num = (0..n)
            .map(|i| (0..n).map(|j| matrix[i * n + j] * self.num[j]).sum())
            .collect();
        RationalWeight { num, den: self.den }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.num
            .iter()
            .map(|&x| x as f64 / self.den as f64)
            .collect()
    }
}

impl Add for &RationalWeight {
    type Output = RationalWeight;
    fn add(self, rhs: &RationalWeight) -> RationalWeight {
        let d = self.den.lcm(&rhs.den);
        let (a, b) = (self.numerators_at(d), rhs.numerators_at(d));
        RationalWeight::new(a.iter().zip(&b).map(|(x, y)| x + y).collect(), d)
    }
}

impl Sub for &RationalWeight {
    type Output = RationalWeight;
    fn sub(self, rhs: &RationalWeight) -> RationalWeight {
        self + &(-rhs)
    }
}

impl Neg for &RationalWeight {
    type Output = RationalWeight;
    fn neg(self) -> RationalWeight {
        RationalWeight {
            num: self.num.iter().map(|x| -x).collect(),
            den: self.den,
        }
    }
}

impl fmt::Display for RationalWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for i in 0..self.num.len() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let c = self.coord(i);
            if *c.denom() == 1 {
                write!(f, "{}", c.numer())?;
            } else {
                write!(f, "{}/{}", c.numer(), c.denom())?;
            }
        }
        write!(f, ")")
    }
}

impl FromStr for RationalWeight {
    type Err = Error;

    /// Accepts `(a, b/c, ...)` or a bare whitespace/comma separated list.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let bad = || Error::InternalInconsistency(format!("malformed rational weight `{s}`"));
        let mut coords = Vec::new();
        for tok in inner.split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            let r = match tok.split_once('/') {
                Some((n, d)) => {
                    let n: i64 = n.parse().map_err(|_| bad())?;
                    let d: i64 = d.parse().map_err(|_| bad())?;
                    if d == 0 {
                        return Err(bad());
                    }
                    Rational64::new(n, d)
                }
                None => Rational64::from_integer(tok.parse().map_err(|_| bad())?),
            };
            coords.push(r);
        }
        Ok(RationalWeight::from_rationals(&coords))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_form() {
        let w = RationalWeight::new(vec![2, -4, 6], -4);
        assert_eq!(w.num(), &[-1, 2, -3]);
        assert_eq!(w.den(), 2);
        assert_eq!(RationalWeight::new(vec![0, 0], 7), RationalWeight::zero(2));
    }

    #[test]
    fn split_is_floor() {
        let w = RationalWeight::new(vec![-3, 5, 4], 2);
        let (k, f) = w.split();
        assert_eq!(k, vec![-2, 2, 2]);
        assert_eq!(f, RationalWeight::new(vec![1, 1, 0], 2));
    }

    #[test]
    fn display_round_trip() {
        let w = RationalWeight::new(vec![3, -1, 4], 2);
        assert_eq!(w.to_string(), "(3/2, -1/2, 2)");
        assert_eq!(w.to_string().parse::<RationalWeight>().unwrap(), w);
    }

    #[test]
    fn serde_canonicalizes() {
        let w: RationalWeight = serde_json::from_str(r#"{"num":[2,4],"den":4}"#).unwrap();
        assert_eq!(w, RationalWeight::new(vec![1, 2], 2));
        assert!(serde_json::from_str::<RationalWeight>(r#"{"num":[1],"den":0}"#).is_err());
    }

    proptest! {
        #[test]
        fn add_sub_inverse(a in prop::collection::vec(-50i64..50, 3), b in prop::collection::vec(-50i64..50, 3),
                           da in 1i64..7, db in 1i64..7) {
            let x = RationalWeight::new(a, da);
            let y = RationalWeight::new(b, db);
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            let (k, f) = x.split();
            prop_assert_eq!(f.add_int(&k), x);
        }
    }
}
