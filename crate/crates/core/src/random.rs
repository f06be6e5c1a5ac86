//! Seeded generators for property checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cartan::Series;
use crate::charring::{weyl_dimension, GroupElement, TorusElement, TwistClass};
use crate::error::Result;
use crate::rational::RationalWeight;
use crate::rootdata::{RootDatum, SubgroupDatum};
use crate::weyl::Reflector;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_support: usize,
    pub max_coeff: i64,
    /// Fundamental-weight coordinates stay within `box_size` in absolute value.
    pub box_size: i64,
    /// Dominant weights are resampled until the module has at most this dimension.
    pub max_dimension: i64,
}

impl Bounds {
    pub const STANDARD: Bounds = Bounds {
        max_support: 12,
        max_coeff: 9,
        box_size: 3,
        max_dimension: 3_000,
    };
    pub const REDUCED: Bounds = Bounds {
        max_support: 4,
        max_coeff: 9,
        box_size: 1,
        max_dimension: 300,
    };

    /// Reduced bounds for rank 4 and above, where Weyl groups have order in
    /// the thousands.
    pub fn for_datum(d: &RootDatum) -> Bounds {
        let big = d.semisimple_rank() >= 4
            || d.factors()
                .iter()
                .any(|f| matches!(f.series, Series::E | Series::F));
        if big {
            Bounds::REDUCED
        } else {
            Bounds::STANDARD
        }
    }
}

pub struct Sampler {
    rng: ChaCha8Rng,
    pub bounds: Bounds,
}

impl Sampler {
    pub fn new(seed: u64, bounds: Bounds) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            bounds,
        }
    }

    pub fn for_datum(seed: u64, d: &RootDatum) -> Self {
        Self::new(seed, Bounds::for_datum(d))
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.random_range(lo..=hi)
    }

    pub fn coefficient(&mut self) -> i64 {
        let m = self.bounds.max_coeff;
        loop {
            let c = self.int(-m, m);
            if c != 0 {
                return c;
            }
        }
    }

    /// A weight in the coset of `twist` inside the fundamental-coordinate box.
    pub fn weight(&mut self, d: &RootDatum, twist: &TwistClass) -> RationalWeight {
        let b = self.bounds.box_size;
        let n = d.rank();
        for _ in 0..64 {
            let o: Vec<i64> = (0..n).map(|_| self.int(-b, b)).collect();
            let e = twist.shift().add_int(&o);
            let lim = num_rational::Rational64::from_integer(b + 1);
            if d.to_fundamental(&e)
                .iter()
                .all(|c| num_traits::Signed::abs(c) <= lim)
            {
                return e;
            }
        }
        twist.shift().clone()
    }

    pub fn torus_element(&mut self, d: &RootDatum, twist: &TwistClass) -> TorusElement {
        let k = self.int(1, self.bounds.max_support as i64) as usize;
        let mut out = TorusElement::zero(twist.clone());
        for _ in 0..k {
            let e = self.weight(d, twist);
            let c = self.coefficient();
            out.add_scaled_in_place(&TorusElement::monomial(&e, c), 1)
                .expect("same twist");
        }
        out
    }

    /// A scope-dominant weight in the coset of `twist` whose irreducible
    /// module is below the dimension bound. The coset must be stable under
    /// the scope's Weyl group.
    pub fn dominant_weight(
        &mut self,
        scope: &SubgroupDatum,
        twist: &TwistClass,
    ) -> Result<RationalWeight> {
        let d = scope.datum();
        let refl = Reflector::new(scope);
        for _ in 0..64 {
            let e = self.weight(d, twist);
            let mut x = e.num().to_vec();
            refl.dominate(&mut x);
            let w = RationalWeight::new(x, e.den());
            if weyl_dimension(scope, &w)? <= self.bounds.max_dimension {
                return Ok(w);
            }
        }
        let mut x = twist.shift().num().to_vec();
        refl.dominate(&mut x);
        Ok(RationalWeight::new(x, twist.shift().den()))
    }

    /// A small virtual module over the scope.
    pub fn group_element(
        &mut self,
        scope: &SubgroupDatum,
        twist: &TwistClass,
    ) -> Result<GroupElement> {
        let k = self.int(1, 3) as usize;
        let mut out = GroupElement::zero(scope, twist.clone());
        for _ in 0..k {
            let w = self.dominant_weight(scope, twist)?;
            let c = self.int(-3, 3);
            out.add_term(&w, c)?;
        }
        Ok(out)
    }

    pub fn angle(&mut self) -> f64 {
        self.rng.random::<f64>()
    }
}
