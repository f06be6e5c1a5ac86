use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::expand::{irreducible_restriction, weyl_dimension};
use super::torus::{TorusElement, TwistClass};
use crate::error::{Error, Result};
use crate::rational::{RationalWeight, Weight};
use crate::rootdata::SubgroupDatum;
use crate::weyl::Reflector;

/// Virtual module over a scope (G or a subgroup H) in the basis of
/// irreducibles, keyed by highest weight `δ + offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    scope: SubgroupDatum,
    twist: TwistClass,
    terms: BTreeMap<Weight, i64>,
}

impl GroupElement {
    pub fn zero(scope: &SubgroupDatum, twist: TwistClass) -> Self {
        GroupElement {
            scope: scope.clone(),
            twist,
            terms: BTreeMap::new(),
        }
    }

    /// The class of the trivial module.
    pub fn trivial(scope: &SubgroupDatum) -> Self {
        let n = scope.datum().rank();
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; n], 1);
        GroupElement {
            scope: scope.clone(),
            twist: TwistClass::zero(n),
            terms,
        }
    }

    pub fn irreducible(scope: &SubgroupDatum, highest: &RationalWeight) -> Result<Self> {
        let mut g = GroupElement::zero(scope, TwistClass::of(highest));
        g.add_term(highest, 1)?;
        Ok(g)
    }

    pub fn from_terms<'a>(
        scope: &SubgroupDatum,
        twist: TwistClass,
        terms: impl IntoIterator<Item = (&'a RationalWeight, i64)>,
    ) -> Result<Self> {
        let mut g = GroupElement::zero(scope, twist);
        for (w, c) in terms {
            g.add_term(w, c)?;
        }
        Ok(g)
    }

    /// Adds `c [V(highest)]`; the weight must be dominant and in the coset.
    pub fn add_term(&mut self, highest: &RationalWeight, c: i64) -> Result<()> {
        let n = self.scope.datum().rank();
        if highest.rank() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: highest.rank(),
            });
        }
        let refl = Reflector::new(&self.scope);
        if !refl.is_dominant(highest.num()) {
            return Err(Error::NotDominant(highest.to_string()));
        }
        let Some(o) = (highest - self.twist.shift())
            .as_integral()
            .map(<[i64]>::to_vec)
        else {
            return Err(Error::BadTwist(format!(
                "{highest} is not in the coset {}",
                self.twist
            )));
        };
        self.add_offset(o, c);
        Ok(())
    }

    pub(crate) fn add_offset(&mut self, o: Weight, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(o) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if *e.get() == 0 {
                    e.remove();
                }
            }
        }
    }

    pub fn scope(&self) -> &SubgroupDatum {
        &self.scope
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

    /// `(highest weight, multiplicity)` pairs in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (RationalWeight, i64)> + '_ {
        self.terms
            .iter()
            .map(|(o, &c)| (self.twist.shift().add_int(o), c))
    }

    pub fn coefficient(&self, highest: &RationalWeight) -> i64 {
        match (highest - self.twist.shift()).as_integral() {
            Some(o) => self.terms.get(o).copied().unwrap_or(0),
            None => 0,
        }
    }

    fn check_compatible(&self, other: &GroupElement) -> Result<()> {
        if self.scope != other.scope {
            return Err(Error::MismatchedDatum);
        }
        if self.twist != other.twist {
            return Err(Error::BadTwist(format!(
                "cannot add twists {} and {}",
                self.twist, other.twist
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &GroupElement) -> Result<GroupElement> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (o, &c) in &other.terms {
            out.add_offset(o.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &GroupElement) -> Result<GroupElement> {
        self.try_add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> GroupElement {
        let terms = if k == 0 {
            BTreeMap::new()
        } else {
            self.terms
                .iter()
                .map(|(o, &c)| (o.clone(), c * k))
                .collect()
        };
        GroupElement {
            scope: self.scope.clone(),
            twist: self.twist.clone(),
            terms,
        }
    }

    /// Z-linear dimension (the augmentation at a point).
    pub fn dimension(&self) -> Result<i64> {
        let mut acc: i64 = 0;
        for (w, c) in self.terms() {
            let d = weyl_dimension(&self.scope, &w)?;
            acc = d
                .checked_mul(c)
                .and_then(|x| acc.checked_add(x))
                .ok_or(Error::Overflow("dimension"))?;
        }
        Ok(acc)
    }

    /// Restriction to the maximal torus.
    pub fn expand(&self) -> Result<TorusElement> {
        let mut out = TorusElement::zero(self.twist.clone());
        for (w, c) in self.terms() {
            out.add_scaled_in_place(&irreducible_restriction(&self.scope, &w)?, c)?;
        }
        Ok(out)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "twist {}", self.twist)?;
        for (w, c) in self.terms() {
            writeln!(f, "{c} @ {w}")?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct WireGroupTerm {
    coeff: i64,
    highest_weight: RationalWeight,
}

#[derive(Serialize)]
struct WireGroup {
    scope: String,
    scope_simple_roots: Vec<usize>,
    twist: RationalWeight,
    terms: Vec<WireGroupTerm>,
}

impl Serialize for GroupElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let scope = if self.scope.is_full() {
            "G".to_string()
        } else {
            self.scope.type_label()
        };
        WireGroup {
            scope,
            scope_simple_roots: self.scope.simple().to_vec(),
            twist: self.twist.shift().clone(),
            terms: self
                .terms()
                .map(|(highest_weight, coeff)| WireGroupTerm {
                    coeff,
                    highest_weight,
                })
                .collect(),
        }
        .serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::RootDatum;
    use std::sync::Arc;

    #[test]
    fn trivial_has_dimension_one() {
        let d = Arc::new(RootDatum::from_label("B2:so").unwrap());
        let g = SubgroupDatum::full(&d);
        assert_eq!(GroupElement::trivial(&g).dimension().unwrap(), 1);
        let adj = GroupElement::irreducible(&g, d.rho()).unwrap();
        // B2 with highest weight rho: dimension 16.
        assert_eq!(adj.dimension().unwrap(), 16);
        let sum = adj.try_add(&GroupElement::trivial(&g));
        assert_eq!(sum.unwrap_err().code(), "bad_twist");
    }

    #[test]
    fn rejects_non_dominant() {
        let d = Arc::new(RootDatum::from_label("A2").unwrap());
        let g = SubgroupDatum::full(&d);
        let w = -d.fundamental_weight(0);
        assert_eq!(
            GroupElement::irreducible(&g, &w).unwrap_err().code(),
            "not_dominant"
        );
    }
}
