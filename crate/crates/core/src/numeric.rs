//! Double-double evaluation of torus elements at points of finite order.
//!
//! Torus points have angles `k / 2^32` turns, so every character phase is an
//! exact rational and is reduced in integer arithmetic before any rounding.

use std::ops::{Add, Div, Mul, Sub};

use qd::Quad;

use crate::charring::TorusElement;

pub(crate) const ANGLE_BITS: u32 = 32;
const ANGLE_DENOM: i128 = 1 << ANGLE_BITS;

const FRAC_PI_4: Quad = Quad(std::f64::consts::FRAC_PI_4, 3.061616997868383e-17);
const FRAC_1_SQRT_2: Quad = Quad(std::f64::consts::FRAC_1_SQRT_2, -4.833646656726457e-17);

fn q(x: f64) -> Quad {
    Quad(x, 0.0)
}

fn add(a: Quad, b: Quad) -> Quad {
    a.add_accurate(b)
}

fn sub(a: Quad, b: Quad) -> Quad {
    a.sub_accurate(b)
}

fn val(x: Quad) -> f64 {
    x.0 + x.1
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Cdd {
    pub re: Quad,
    pub im: Quad,
}

impl Cdd {
    pub fn zero() -> Self {
        Cdd {
            re: Quad::ZERO,
            im: Quad::ZERO,
        }
    }

    pub fn real(x: f64) -> Self {
        Cdd {
            re: q(x),
            im: Quad::ZERO,
        }
    }

    fn scale(self, c: Quad) -> Self {
        Cdd {
            re: self.re * c,
            im: self.im * c,
        }
    }

    pub fn norm(self) -> f64 {
        val(self.re).hypot(val(self.im))
    }

    pub fn to_f64(self) -> [f64; 2] {
        [val(self.re), val(self.im)]
    }
}

impl Add for Cdd {
    type Output = Cdd;
    fn add(self, o: Cdd) -> Cdd {
        Cdd {
            re: add(self.re, o.re),
            im: add(self.im, o.im),
        }
    }
}

impl Sub for Cdd {
    type Output = Cdd;
    fn sub(self, o: Cdd) -> Cdd {
        Cdd {
            re: sub(self.re, o.re),
            im: sub(self.im, o.im),
        }
    }
}

impl Mul for Cdd {
    type Output = Cdd;
    fn mul(self, o: Cdd) -> Cdd {
        Cdd {
            re: sub(self.re * o.re, self.im * o.im),
            im: add(self.re * o.im, self.im * o.re),
        }
    }
}

impl Div for Cdd {
    type Output = Cdd;
    fn div(self, o: Cdd) -> Cdd {
        let n = add(o.re * o.re, o.im * o.im);
        Cdd {
            re: add(self.re * o.re, self.im * o.im) / n,
            im: sub(self.im * o.re, self.re * o.im) / n,
        }
    }
}

fn exact(x: i128) -> Quad {
    debug_assert!(x.unsigned_abs() < 1u128 << 53);
    q(x as f64)
}

/// `(cos x, sin x)` for `|x| <= π/4` by Taylor series.
fn taylor_sincos(x: Quad) -> (Quad, Quad) {
    let x2 = x * x;
    let (mut s, mut c) = (x, Quad::ONE);
    let (mut ts, mut tc) = (x, Quad::ONE);
    for k in 1..40 {
        let k = k as f64;
        ts = -(ts * x2) / q((2.0 * k) * (2.0 * k + 1.0));
        tc = -(tc * x2) / q((2.0 * k - 1.0) * (2.0 * k));
        s = add(s, ts);
        c = add(c, tc);
        if ts.0.abs() < 1e-40 && tc.0.abs() < 1e-40 {
            break;
        }
    }
    (c, s)
}

/// `(cos, sin)` of `2π p/m`, with the octant split off exactly.
fn sincos_turns(p: i128, m: i128) -> (Quad, Quad) {
    let r = p.rem_euclid(m);
    let j = (16 * r + m).div_euclid(2 * m);
    let rem = 8 * r - j * m;
    let (c, s) = taylor_sincos(FRAC_PI_4 * (exact(rem) / exact(m)));
    let h = FRAC_1_SQRT_2;
    let (z, one) = (Quad::ZERO, Quad::ONE);
    let (cj, sj) = match j.rem_euclid(8) {
        0 => (one, z),
        1 => (h, h),
        2 => (z, one),
        3 => (-h, h),
        4 => (-one, z),
        5 => (-h, -h),
        6 => (z, -one),
        _ => (h, -h),
    };
    (sub(cj * c, sj * s), add(sj * c, cj * s))
}

/// `e^{2πi p/m}`.
pub(crate) fn unit(p: i128, m: i128) -> Cdd {
    let (c, s) = sincos_turns(p, m);
    Cdd { re: c, im: s }
}

/// `1 - e^{2πi p/m} = 2 sin(πφ) (sin(πφ) - i cos(πφ))`, accurate near φ = 0.
pub(crate) fn one_minus_unit(p: i128, m: i128) -> Cdd {
    let (c, s) = sincos_turns(p, 2 * m);
    let two_s = s * q(2.0);
    Cdd {
        re: two_s * s,
        im: -(two_s * c),
    }
}

/// Phase of the character `num/den` at the point `k / 2^32`, as `(p, m)`.
pub(crate) fn phase(num: &[i64], den: i64, k: &[u32]) -> (i128, i128) {
    let m = den as i128 * ANGLE_DENOM;
    let p: i128 = num
        .iter()
        .zip(k)
        .map(|(&x, &t)| x as i128 * t as i128)
        .sum();
    (p.rem_euclid(m), m)
}

pub(crate) fn turns(k: &[u32]) -> Vec<f64> {
    k.iter().map(|&t| t as f64 / ANGLE_DENOM as f64).collect()
}

/// Evaluates a torus element at `k / 2^32`; `k` must have the element's rank.
pub(crate) fn evaluate(a: &TorusElement, k: &[u32]) -> Cdd {
    let shift = a.twist().shift();
    let den = shift.den();
    let mut e: Vec<i64> = vec![0; shift.num().len()];
    let mut acc = Cdd::zero();
    for (o, &c) in a.offsets() {
        for ((x, s), oi) in e.iter_mut().zip(shift.num()).zip(o) {
            *x = s + den * oi;
        }
        let (p, m) = phase(&e, den, k);
        acc = acc + unit(p, m).scale(q(c as f64));
    }
    acc
}

/// `∏ (1 - e^β)` over the given integral weights at `k / 2^32`.
pub(crate) fn product_one_minus<'a>(
    weights: impl IntoIterator<Item = &'a [i64]>,
    k: &[u32],
) -> Cdd {
    let mut acc = Cdd::real(1.0);
    for w in weights {
        let (p, m) = phase(w, 1, k);
        acc = acc * one_minus_unit(p, m);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::RationalWeight;

    #[test]
    fn matches_libm() {
        for (p, m) in [
            (0i128, 7i128),
            (1, 7),
            (3, 8),
            (5, 12),
            (11, 13),
            (-2, 9),
            (1, 1 << 33),
        ] {
            let (c, s) = sincos_turns(p, m);
            let t = std::f64::consts::TAU * p as f64 / m as f64;
            assert!((c.0 - t.cos()).abs() < 1e-15);
            assert!((s.0 - t.sin()).abs() < 1e-15);
            assert!(sub(add(c * c, s * s), Quad::ONE).0.abs() < 1e-30);
        }
    }

    #[test]
    fn constants() {
        assert!(
            sub(FRAC_1_SQRT_2 * FRAC_1_SQRT_2 * q(2.0), Quad::ONE)
                .0
                .abs()
                < 1e-31
        );
        assert!(sub(FRAC_PI_4 * q(4.0), Quad::PI).0.abs() < 1e-31);
    }

    #[test]
    fn small_factor_has_relative_accuracy() {
        let z = one_minus_unit(1, 1 << 40);
        let expected = std::f64::consts::TAU / (1u64 << 40) as f64;
        assert!((z.norm() / expected - 1.0).abs() < 1e-12);
        let q = one_minus_unit(3, 8);
        let e = num_complex::Complex64::new(1.0, 0.0)
            - num_complex::Complex64::from_polar(1.0, std::f64::consts::TAU * 3.0 / 8.0);
        assert!((q.to_f64()[0] - e.re).abs() < 1e-15 && (q.to_f64()[1] - e.im).abs() < 1e-15);
    }

    #[test]
    fn agrees_with_float_evaluation() {
        let tw = crate::charring::TwistClass::of(&RationalWeight::new(vec![1, 1], 2));
        let mut a = TorusElement::zero(tw);
        for (e, c) in [(vec![1, 3], 2), (vec![-1, 5], -3), (vec![7, -1], 1)] {
            a.add_scaled_in_place(&TorusElement::monomial(&RationalWeight::new(e, 2), c), 1)
                .unwrap();
        }
        let k = [123_456_789u32, 4_000_000_000];
        let x = evaluate(&a, &k).to_f64();
        let y = a.numeric_evaluate(&turns(&k)).unwrap();
        assert!((x[0] - y.re).abs() < 1e-12 && (x[1] - y.im).abs() < 1e-12);
    }
}
