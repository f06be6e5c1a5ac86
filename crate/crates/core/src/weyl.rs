//! Weyl groups as integer matrices on X(T), minimal coset representatives,
//! chamber reduction and antisymmetrizers.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::charring::TorusElement;
use crate::error::{Error, Result};
use crate::rational::{RationalWeight, Weight};
use crate::rootdata::{dot, SubgroupDatum, DEFAULT_WEYL_ORDER_CAP};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WeylElement {
    /// Row-major `rank x rank` matrix acting on column vectors of X(T) coordinates.
    matrix: Vec<i64>,
    rank: usize,
    length: u32,
    det: i8,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        let mut matrix = vec![0; rank * rank];
        for i in 0..rank {
            matrix[i * rank + i] = 1;
        }
        WeylElement {
            matrix,
            rank,
            length: 0,
            det: 1,
        }
    }

    /// Reflection `x -> x - <x, coroot> root`.
    pub fn reflection(root: &[i64], coroot: &[i64]) -> Self {
        let rank = root.len();
        let mut m = Self::identity(rank);
        for i in 0..rank {
            for j in 0..rank {
                m.matrix[i * rank + j] -= root[i] * coroot[j];
            }
        }
        m.length = 1;
        m.det = -1;
        m
    }

    pub fn matrix(&self) -> &[i64] {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Length with respect to the simple reflections of the group it was generated in.
    pub fn length(&self) -> u32 {
        self.length
    }

    pub fn det(&self) -> i64 {
        i64::from(self.det)
    }

    pub fn apply(&self, x: &[i64]) -> Weight {
        let n = self.rank;
        (0..n)
            .map(|i| dot(&self.matrix[i * n..(i + 1) * n], x))
            .collect()
    }

    pub fn apply_rational(&self, x: &RationalWeight) -> RationalWeight {
        x.transform(&self.matrix)
    }

    /// `self * other`; the length is not tracked and set to the parity bound.
    fn compose_matrix(&self, other: &WeylElement) -> Vec<i64> {
        let n = self.rank;
        let mut out = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.matrix[i * n + k];
                if a != 0 {
                    for j in 0..n {
                        out[i * n + j] += a * other.matrix[k * n + j];
                    }
                }
            }
        }
        out
    }
}

/// Simple reflections of a scope, used for fast chamber walks on numerators.
#[derive(Clone, Debug)]
pub struct Reflector {
    roots: Vec<Weight>,
    coroots: Vec<Vec<i64>>,
}

impl Reflector {
    pub fn new(scope: &SubgroupDatum) -> Self {
        let d = scope.datum();
        Reflector {
            roots: scope
                .simple()
                .iter()
                .map(|&i| d.root(i).weight.clone())
                .collect(),
            coroots: scope
                .simple()
                .iter()
                .map(|&i| d.root(i).coroot.clone())
                .collect(),
        }
    }

    pub fn simple_count(&self) -> usize {
        self.roots.len()
    }

    pub fn reflect(&self, j: usize, x: &mut [i64]) {
        let p = dot(&self.coroots[j], x);
        if p != 0 {
            for (a, b) in x.iter_mut().zip(&self.roots[j]) {
                *a -= p * b;
            }
        }
    }

    pub fn pairing(&self, j: usize, x: &[i64]) -> i64 {
        dot(&self.coroots[j], x)
    }

    pub fn is_dominant(&self, x: &[i64]) -> bool {
        self.coroots.iter().all(|c| dot(c, x) >= 0)
    }

    /// Moves `x` (numerators over any fixed denominator) into the closed
    /// dominant chamber. Returns the number of reflections used.
    pub fn dominate(&self, x: &mut [i64]) -> usize {
        let mut steps = 0;
        'outer: loop {
            for j in 0..self.roots.len() {
                let p = dot(&self.coroots[j], x);
                if p < 0 {
                    for (a, b) in x.iter_mut().zip(&self.roots[j]) {
                        *a -= p * b;
                    }
                    steps += 1;
                    continue 'outer;
                }
            }
            return steps;
        }
    }

    /// Strict chamber walk: `Some(sign)` with `x` moved to the open chamber,
    /// or `None` if `x` lies on a wall.
    pub fn strictly_dominate(&self, x: &mut [i64]) -> Option<i64> {
        let steps = self.dominate(x);
        if self.coroots.iter().any(|c| dot(c, x) == 0) {
            None
        } else {
            Some(if steps.is_multiple_of(2) { 1 } else { -1 })
        }
    }

    /// The orbit of a dominant vector under the group, by breadth-first search.
    pub fn orbit(&self, x: &[i64]) -> Vec<Weight> {
        let mut seen: std::collections::HashSet<Weight> = std::collections::HashSet::new();
        seen.insert(x.to_vec());
        let mut out = vec![x.to_vec()];
        let mut k = 0;
        while k < out.len() {
            for j in 0..self.roots.len() {
                if dot(&self.coroots[j], &out[k]) != 0 {
                    let mut y = out[k].clone();
                    self.reflect(j, &mut y);
                    if seen.insert(y.clone()) {
                        out.push(y);
                    }
                }
            }
            k += 1;
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct WeylGroup {
    scope: SubgroupDatum,
    elements: Vec<WeylElement>,
    index: HashMap<Vec<i64>, usize>,
    inverse: Vec<usize>,
    generators: Vec<WeylElement>,
}

impl WeylGroup {
    pub fn generate(scope: &SubgroupDatum) -> Result<Self> {
        Self::generate_capped(scope, DEFAULT_WEYL_ORDER_CAP)
    }

    pub fn generate_capped(scope: &SubgroupDatum, cap: u64) -> Result<Self> {
        let d = scope.datum();
        let n = d.rank();
        if scope.is_full() {
            let order = d.weyl_order();
            if order > u128::from(cap) {
                return Err(Error::OrderCapExceeded {
                    order: order.min(u128::from(u64::MAX)) as u64,
                    cap,
                });
            }
        }
        let generators: Vec<WeylElement> = scope
            .simple()
            .iter()
            .map(|&i| WeylElement::reflection(&d.root(i).weight, &d.root(i).coroot))
            .collect();
        let mut elements = vec![WeylElement::identity(n)];
        let mut inverses = vec![WeylElement::identity(n).matrix];
        let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
        index.insert(elements[0].matrix.clone(), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(g) = queue.pop_front() {
            for s in &generators {
                let m = s.compose_matrix(&elements[g]);
                if index.contains_key(&m) {
                    continue;
                }
                if elements.len() as u64 >= cap {
                    return Err(Error::OrderCapExceeded {
                        order: elements.len() as u64 + 1,
                        cap,
                    });
                }
                let len = elements[g].length + 1;
                let inv = WeylElement {
                    matrix: inverses[g].clone(),
                    rank: n,
                    length: 0,
                    det: 1,
                }
                .compose_matrix(s);
                index.insert(m.clone(), elements.len());
                elements.push(WeylElement {
                    matrix: m,
                    rank: n,
                    length: len,
                    det: if len % 2 == 0 { 1 } else { -1 },
                });
                inverses.push(inv);
                queue.push_back(elements.len() - 1);
            }
        }
        let mut order: Vec<usize> = (0..elements.len()).collect();
        order.sort_by(|&a, &b| {
            elements[a]
                .length
                .cmp(&elements[b].length)
                .then_with(|| elements[a].matrix.cmp(&elements[b].matrix))
        });
        let sorted: Vec<WeylElement> = order.iter().map(|&i| elements[i].clone()).collect();
        let index: HashMap<Vec<i64>, usize> = sorted
            .iter()
            .enumerate()
            .map(|(i, e)| (e.matrix.clone(), i))
            .collect();
        let inverse: Vec<usize> = order.iter().map(|&i| index[&inverses[i]]).collect();
        Ok(WeylGroup {
            scope: scope.clone(),
            elements: sorted,
            index,
            inverse,
            generators,
        })
    }

    pub fn scope(&self) -> &SubgroupDatum {
        &self.scope
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &WeylElement {
        &self.elements[i]
    }

    pub fn generators(&self) -> &[WeylElement] {
        &self.generators
    }

    pub fn inverse_index(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn index_of(&self, w: &WeylElement) -> Option<usize> {
        self.index.get(&w.matrix).copied()
    }

    /// Index of the product `elements[a] * elements[b]`.
    pub fn multiply(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].compose_matrix(&self.elements[b])]
    }

    /// `sum det(w) w(a)` over the whole group.
    pub fn antisymmetrize(&self, a: &TorusElement) -> Result<TorusElement> {
        sum_over(self.elements.iter(), a)
    }

    /// `sum w(a)` over the whole group.
    pub fn symmetrize(&self, a: &TorusElement) -> Result<TorusElement> {
        let mut out = TorusElement::zero_like(a);
        for w in &self.elements {
            out = out.try_add(&a.act(w)?)?;
        }
        Ok(out)
    }
}

fn sum_over<'a>(
    ws: impl Iterator<Item = &'a WeylElement>,
    a: &TorusElement,
) -> Result<TorusElement> {
    let mut acc = TorusElement::zero_like(a);
    for w in ws {
        acc.add_scaled_in_place(&a.act(w)?, w.det())?;
    }
    Ok(acc)
}

/// Minimal coset representatives W^H inside the Weyl group of a larger scope.
#[derive(Clone, Debug)]
pub struct CosetReps {
    reps: Vec<usize>,
    small: SubgroupDatum,
}

impl CosetReps {
    pub fn new(big: &WeylGroup, small: &SubgroupDatum, small_order: usize) -> Result<Self> {
        let d = big.scope.datum();
        if small.datum() != d {
            return Err(Error::MismatchedDatum);
        }
        if !small.is_subsystem_of(&big.scope) {
            return Err(Error::NotASubgroup);
        }
        let simple: Vec<&Weight> = small.simple().iter().map(|&i| &d.root(i).weight).collect();
        let reps: Vec<usize> = (0..big.order())
            .filter(|&k| {
                let w = &big.elements[k];
                simple
                    .iter()
                    .all(|b| d.root_index(&w.apply(b)).is_some_and(|i| d.is_positive(i)))
            })
            .collect();
        if reps.len() * small_order != big.order() {
            return Err(Error::InternalInconsistency(format!(
                "{} coset representatives for |W_G| = {} and |W_H| = {small_order}",
                reps.len(),
                big.order()
            )));
        }
        Ok(CosetReps {
            reps,
            small: small.clone(),
        })
    }

    /// Indices into the ambient Weyl group, in its deterministic order.
    pub fn indices(&self) -> &[usize] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn subgroup(&self) -> &SubgroupDatum {
        &self.small
    }

    pub fn elements<'a>(
        &'a self,
        big: &'a WeylGroup,
    ) -> impl Iterator<Item = &'a WeylElement> + 'a {
        self.reps.iter().map(move |&i| &big.elements[i])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Antisymmetrizer {
    /// Sum over W_G.
    G,
    /// Sum over W_H.
    H,
    /// Sum over W^H.
    M,
    /// Sum over W^H with inverted elements.
    MOp,
}

/// Applies one of J_G, J_H, J_M, J_M^op.
pub fn apply_antisymmetrizer(
    kind: Antisymmetrizer,
    big: &WeylGroup,
    small: &WeylGroup,
    reps: &CosetReps,
    a: &TorusElement,
) -> Result<TorusElement> {
    match kind {
        Antisymmetrizer::G => big.antisymmetrize(a),
        Antisymmetrizer::H => small.antisymmetrize(a),
        Antisymmetrizer::M => sum_over(reps.elements(big), a),
        Antisymmetrizer::MOp => sum_over(
            reps.indices()
                .iter()
                .map(|&i| &big.elements[big.inverse[i]]),
            a,
        ),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Chamber {
    Regular {
        w: WeylElement,
        image: RationalWeight,
    },
    Singular,
}

/// Finds `w` with `w(mu)` strictly dominant for the scope, or reports that
/// `mu` lies on a wall.
pub fn to_dominant_chamber(scope: &SubgroupDatum, mu: &RationalWeight) -> Chamber {
    let refl = Reflector::new(scope);
    let d = scope.datum();
    let mut x = mu.num().to_vec();
    let mut w = WeylElement::identity(d.rank());
    while let Some(j) = (0..refl.simple_count()).find(|&j| refl.pairing(j, &x) < 0) {
        refl.reflect(j, &mut x);
        let s = &scope.simple()[j];
        let r = WeylElement::reflection(&d.root(*s).weight, &d.root(*s).coroot);
        w = WeylElement {
            matrix: r.compose_matrix(&w),
            rank: w.rank,
            length: w.length + 1,
            det: -w.det,
        };
    }
    if (0..refl.simple_count()).any(|j| refl.pairing(j, &x) == 0) {
        return Chamber::Singular;
    }
    Chamber::Regular {
        w,
        image: RationalWeight::new(x, mu.den()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::RootDatum;
    use std::sync::Arc;

    fn full(label: &str) -> (Arc<RootDatum>, SubgroupDatum) {
        let d = Arc::new(RootDatum::from_label(label).unwrap());
        let g = SubgroupDatum::full(&d);
        (d, g)
    }

    #[test]
    fn orders() {
        for (label, n) in [
            ("A1", 2),
            ("A2", 6),
            ("B2", 8),
            ("G2", 12),
            ("A1xA1", 4),
            ("B3", 48),
            ("F4", 1152),
        ] {
            let (_, g) = full(label);
            assert_eq!(WeylGroup::generate(&g).unwrap().order(), n, "{label}");
        }
    }

    #[test]
    fn cap_refuses_e7() {
        let (_, g) = full("E7");
        assert_eq!(
            WeylGroup::generate(&g).unwrap_err().code(),
            "order_cap_exceeded"
        );
        let (_, g) = full("F4");
        assert!(WeylGroup::generate_capped(&g, 100).is_err());
    }

    #[test]
    fn group_axioms() {
        let (d, g) = full("G2");
        let w = WeylGroup::generate(&g).unwrap();
        for a in 0..w.order() {
            let inv = w.inverse_index(a);
            assert_eq!(w.multiply(a, inv), 0);
            for b in 0..w.order() {
                let c = w.multiply(a, b);
                assert_eq!(w.element(c).det(), w.element(a).det() * w.element(b).det());
            }
            let e = w.element(a);
            assert_eq!(e.det(), if e.length().is_multiple_of(2) { 1 } else { -1 });
            // Each element permutes the roots.
            for r in d.roots() {
                assert!(d.root_index(&e.apply(&r.weight)).is_some());
            }
        }
        assert_eq!(w.element(0), &WeylElement::identity(2));
    }

    #[test]
    fn coset_counts() {
        let d = Arc::new(RootDatum::from_label("A2").unwrap());
        let t = SubgroupDatum::torus(&d);
        let wg = WeylGroup::generate(&SubgroupDatum::full(&d)).unwrap();
        assert_eq!(CosetReps::new(&wg, &t, 1).unwrap().len(), 6);

        let d = Arc::new(RootDatum::from_label("G2").unwrap());
        let h = SubgroupDatum::preset(&d, "a2long").unwrap();
        let wg = WeylGroup::generate(&SubgroupDatum::full(&d)).unwrap();
        let wh = WeylGroup::generate(&h).unwrap();
        assert_eq!(wh.order(), 6);
        assert_eq!(CosetReps::new(&wg, &h, wh.order()).unwrap().len(), 2);

        let d = Arc::new(RootDatum::from_label("F4").unwrap());
        let h = SubgroupDatum::preset(&d, "b4").unwrap();
        let wg = WeylGroup::generate(&SubgroupDatum::full(&d)).unwrap();
        let wh = WeylGroup::generate(&h).unwrap();
        assert_eq!(wh.order(), 384);
        assert_eq!(CosetReps::new(&wg, &h, wh.order()).unwrap().len(), 3);
    }

    #[test]
    fn mismatched_datum() {
        let d1 = Arc::new(RootDatum::from_label("A2").unwrap());
        let d2 = Arc::new(RootDatum::from_label("B2").unwrap());
        let wg = WeylGroup::generate(&SubgroupDatum::full(&d1)).unwrap();
        let err = CosetReps::new(&wg, &SubgroupDatum::torus(&d2), 1).unwrap_err();
        assert_eq!(err.code(), "mismatched_datum");
    }

    #[test]
    fn unique_factorization_and_minimal_length() {
        let d = Arc::new(RootDatum::from_label("B3").unwrap());
        let g = SubgroupDatum::full(&d);
        let h = SubgroupDatum::levi(&d, &[1, 2]).unwrap();
        let wg = WeylGroup::generate(&g).unwrap();
        let wh = WeylGroup::generate(&h).unwrap();
        let reps = CosetReps::new(&wg, &h, wh.order()).unwrap();
        let wh_in_g: Vec<usize> = wh
            .elements()
            .iter()
            .map(|e| wg.index_of(e).unwrap())
            .collect();
        let mut hits = vec![0usize; wg.order()];
        for &r in reps.indices() {
            let mut min_len = u32::MAX;
            for &k in &wh_in_g {
                let v = wg.multiply(r, k);
                hits[v] += 1;
                min_len = min_len.min(wg.element(v).length());
            }
            assert_eq!(wg.element(r).length(), min_len);
        }
        assert!(hits.iter().all(|&h| h == 1));
    }

    #[test]
    fn chamber_examples() {
        let (d, g) = full("A1");
        assert_eq!(
            to_dominant_chamber(&g, &RationalWeight::zero(1)),
            Chamber::Singular
        );
        let minus = -d.fundamental_weight(0);
        match to_dominant_chamber(&g, &minus) {
            Chamber::Regular { w, image } => {
                assert_eq!(&image, d.fundamental_weight(0));
                assert_eq!(w.det(), -1);
            }
            Chamber::Singular => panic!("regular"),
        }
        let (d, g) = full("A2");
        match to_dominant_chamber(&g, d.rho()) {
            Chamber::Regular { w, image } => {
                assert_eq!(w, WeylElement::identity(2));
                assert_eq!(&image, d.rho());
            }
            Chamber::Singular => panic!("regular"),
        }
    }

    #[test]
    fn chamber_uniqueness_exhaustive() {
        for label in ["A2", "B2", "G2", "A3", "C3:adj"] {
            let (d, g) = full(label);
            let wg = WeylGroup::generate(&g).unwrap();
            let refl = Reflector::new(&g);
            let n = d.rank();
            // A small grid of weights with denominator 2.
            let mut count = 0;
            for code in 0..7i64.pow(n as u32) {
                let num: Vec<i64> = (0..n)
                    .map(|i| (code / 7i64.pow(i as u32)) % 7 - 3)
                    .collect();
                let mu = RationalWeight::new(num, 2);
                match to_dominant_chamber(&g, &mu) {
                    Chamber::Singular => {
                        assert!(d.roots().iter().any(|r| mu.pair(&r.coroot) == 0.into()));
                    }
                    Chamber::Regular { w, image } => {
                        assert_eq!(w.apply_rational(&mu), image);
                        let hits = wg
                            .elements()
                            .iter()
                            .filter(|e| {
                                let y = e.apply(mu.num());
                                (0..refl.simple_count()).all(|j| refl.pairing(j, &y) > 0)
                            })
                            .count();
                        assert_eq!(hits, 1);
                        count += 1;
                    }
                }
            }
            assert!(count > 0);
        }
    }
}
