//! Root data (root system plus character lattice X(T)) and closed
//! subsystems describing maximal-rank connected subgroups.
//!
//! X(T) is the direct sum of a lattice between the root and weight lattices
//! of the semisimple part and Z^c for a central torus of rank c. Weights are
//! integer vectors over the Hermite basis of that lattice, central
//! coordinates last.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_rational::Rational64;
use num_traits::Zero;
use serde::Serialize;

use crate::cartan::SimpleType;
use crate::error::{Error, Result};
use crate::lattice::{kernel, smith_invariants, solve, Lattice};
use crate::rational::{RationalWeight, Weight};

pub const DEFAULT_RANK_CAP: usize = 8;
pub const DEFAULT_WEYL_ORDER_CAP: u64 = 1 << 21;

/// Which lattice between the root and weight lattices is X(T).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeChoice {
    /// Weight lattice (simply connected form).
    Weight,
    /// Root lattice (adjoint form).
    Root,
    /// Integer vectors of the standard realization (B, C, D factors only).
    Standard,
    /// Explicit generators in fundamental-weight coordinates.
    Generators(Vec<Weight>),
}

impl LatticeChoice {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "" | "sc" | "spin" | "weight" => Ok(LatticeChoice::Weight),
            "adj" | "ad" | "root" => Ok(LatticeChoice::Root),
            "so" | "standard" => Ok(LatticeChoice::Standard),
            other => Err(Error::LatticeNotIntermediate(format!(
                "unknown lattice `{other}`"
            ))),
        }
    }

    fn tag(&self) -> &'static str {
        match self {
            LatticeChoice::Weight => "sc",
            LatticeChoice::Root => "adj",
            LatticeChoice::Standard => "so",
            LatticeChoice::Generators(_) => "custom",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Root {
    /// Coordinates in X(T).
    pub weight: Weight,
    /// The coroot as an integer functional on X(T).
    pub coroot: Vec<i64>,
    /// Coefficients over the simple roots.
    pub coeffs: Vec<i64>,
    pub height: i64,
    /// Index of the simple factor containing the root.
    pub factor: usize,
    /// Squared length in the doubled standard realization of its factor.
    pub norm2: i64,
}

/// Fundamental group diagnostic: `torsion` lists the invariant factors of
/// (weight lattice) / X(T) on the semisimple part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pi1Report {
    pub torsion: Vec<i64>,
    pub free_rank: usize,
    pub torsion_free: bool,
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    label: String,
    factors: Vec<SimpleType>,
    central_rank: usize,
    lattice: LatticeChoice,
    rank: usize,
    ss_rank: usize,
    cartan: Vec<Vec<i64>>,
    lattice_basis: Vec<Weight>,
    simple_roots: Vec<Weight>,
    simple_coroots: Vec<Vec<i64>>,
    roots: Vec<Root>,
    npos: usize,
    by_weight: HashMap<Weight, usize>,
    by_coeffs: HashMap<Vec<i64>, usize>,
    rho: RationalWeight,
    fundamental: Vec<RationalWeight>,
    pi1: Pi1Report,
}

impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.factors == other.factors
            && self.central_rank == other.central_rank
            && self.lattice_basis == other.lattice_basis
    }
}

impl Eq for RootDatum {}

/// Parses `A1xA1xT1`, `B3:spin`, `D2:so` and similar labels.
pub fn parse_label(label: &str) -> Result<(Vec<SimpleType>, usize, LatticeChoice)> {
    let (base, lat) = label.split_once(':').unwrap_or((label, ""));
    let mut factors = Vec::new();
    let mut central = 0usize;
    for part in base.split(['x', '×', '*']) {
        let part = part.trim();
        if part.is_empty() {
            return Err(Error::UnknownSeries(label.to_string()));
        }
        if let Some(k) = part.strip_prefix(['T', 't']) {
            let k: usize = k
                .parse()
                .map_err(|_| Error::UnknownSeries(part.to_string()))?;
            central += k;
        } else {
            factors.push(part.parse::<SimpleType>()?);
        }
    }
    Ok((factors, central, LatticeChoice::parse(lat)?))
}

fn block_diag(blocks: &[Vec<Vec<i64>>]) -> Vec<Vec<i64>> {
    let n: usize = blocks.iter().map(|b| b.len()).sum();
    let mut m = vec![vec![0; n]; n];
    let mut off = 0;
    for b in blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                m[off + i][off + j] = x;
            }
        }
        off += b.len();
    }
    m
}

/// Solves `B x = e` over Q for square `B` given by columns.
fn rational_solve(cols: &[Weight], rhs: &[i64]) -> Vec<Rational64> {
    let n = rhs.len();
    let mut a: Vec<Vec<Rational64>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational64> = cols.iter().map(|c| Rational64::from(c[i])).collect();
            row.push(Rational64::from(rhs[i]));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero()).expect("nonsingular");
        a.swap(c, p);
        let piv = a[c][c];
        for x in a[c].iter_mut() {
            *x /= piv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c];
                for k in 0..=n {
                    let v = a[c][k];
                    a[r][k] -= f * v;
                }
            }
        }
    }
    a.iter().map(|row| row[n]).collect()
}

impl RootDatum {
    /// Builds a datum from a label such as `G2`, `B3:spin`, `A1xT1` or `D2:so`.
    pub fn from_label(label: &str) -> Result<Self> {
        Self::from_label_capped(label, DEFAULT_RANK_CAP)
    }

    pub fn from_label_capped(label: &str, rank_cap: usize) -> Result<Self> {
        let (factors, central, lattice) = parse_label(label)?;
        Self::build(factors, central, lattice, rank_cap)
    }

    pub fn build(
        factors: Vec<SimpleType>,
        central_rank: usize,
        lattice: LatticeChoice,
        rank_cap: usize,
    ) -> Result<Self> {
        let ss_rank: usize = factors.iter().map(|f| f.rank).sum();
        let rank = ss_rank + central_rank;
        if rank > rank_cap {
            return Err(Error::RankCapExceeded {
                rank,
                cap: rank_cap,
            });
        }
        if rank == 0 {
            return Err(Error::UnknownSeries("empty label".into()));
        }
        let cartan = block_diag(
            &factors
                .iter()
                .map(|f| f.cartan_matrix())
                .collect::<Vec<_>>(),
        );
        let r = ss_rank;
        let gens: Vec<Weight> = match &lattice {
            LatticeChoice::Weight => (0..r)
                .map(|j| (0..r).map(|i| i64::from(i == j)).collect())
                .collect(),
            LatticeChoice::Root => cartan.clone(),
            LatticeChoice::Standard => {
                let mut blocks = Vec::new();
                for f in &factors {
                    blocks.push(f.standard_vectors().ok_or_else(|| {
                        Error::LatticeNotIntermediate(format!("no standard lattice for factor {f}"))
                    })?);
                }
                // Each row is the fundamental-weight expansion of one standard basis vector.
                block_diag(&blocks)
            }
            LatticeChoice::Generators(g) => {
                for v in g {
                    if v.len() != r {
                        return Err(Error::DimensionMismatch {
                            expected: r,
                            found: v.len(),
                        });
                    }
                }
                g.clone()
            }
        };
        let lat = Lattice::new(r, &gens)?;
        if lat.rank() != r {
            return Err(Error::LatticeNotIntermediate(
                "generators do not have full rank".into(),
            ));
        }
        let basis = lat.basis().to_vec();
        let mut simple_roots = Vec::with_capacity(r);
        for row in &cartan {
            let x = solve(r, &basis, row).ok_or_else(|| {
                Error::LatticeNotIntermediate("lattice does not contain the root lattice".into())
            })?;
            let mut w = x;
            w.resize(rank, 0);
            simple_roots.push(w);
        }
        let simple_coroots: Vec<Vec<i64>> = (0..r)
            .map(|j| {
                let mut c: Vec<i64> = basis.iter().map(|col| col[j]).collect();
                c.resize(rank, 0);
                c
            })
            .collect();
        let fundamental: Vec<RationalWeight> = (0..r)
            .map(|i| {
                let e: Vec<i64> = (0..r).map(|k| i64::from(k == i)).collect();
                let mut q = rational_solve(&basis, &e);
                q.resize(rank, Rational64::zero());
                RationalWeight::from_rationals(&q)
            })
            .collect();

        // Which factor each simple root belongs to, and doubled realizations for lengths.
        let mut factor_of = Vec::with_capacity(r);
        let mut realization = Vec::with_capacity(r);
        for (fi, f) in factors.iter().enumerate() {
            for v in f.realization() {
                factor_of.push(fi);
                realization.push(v);
            }
        }
        let norm2 = |coeffs: &[i64], fi: usize| -> i64 {
            let dim = realization
                .iter()
                .zip(&factor_of)
                .find(|(_, &f)| f == fi)
                .map_or(0, |(v, _)| v.len());
            let mut v = vec![0i64; dim];
            for (i, &c) in coeffs.iter().enumerate() {
                if c != 0 {
                    for (x, y) in v.iter_mut().zip(&realization[i]) {
                        *x += c * y;
                    }
                }
            }
            v.iter().map(|x| x * x).sum()
        };

        // Reflection closure of the simple roots.
        let mut found: Vec<(Weight, Vec<i64>, Vec<i64>)> = Vec::new();
        let mut seen: HashMap<Weight, usize> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..r {
            let coeffs: Vec<i64> = (0..r).map(|k| i64::from(k == i)).collect();
            seen.insert(simple_roots[i].clone(), found.len());
            found.push((simple_roots[i].clone(), simple_coroots[i].clone(), coeffs));
            queue.push_back(found.len() - 1);
        }
        while let Some(idx) = queue.pop_front() {
            for j in 0..r {
                let (w, c, k) = &found[idx];
                let p = dot(w, &simple_coroots[j]);
                if p == 0 && j != idx {
                    continue;
                }
                let nw: Weight = w
                    .iter()
                    .zip(&simple_roots[j])
                    .map(|(a, b)| a - p * b)
                    .collect();
                if seen.contains_key(&nw) {
                    continue;
                }
                let q = dot(&simple_roots[j], c);
                let nc: Vec<i64> = c
                    .iter()
                    .zip(&simple_coroots[j])
                    .map(|(a, b)| a - q * b)
                    .collect();
                let mut nk = k.clone();
                nk[j] -= p;
                seen.insert(nw.clone(), found.len());
                found.push((nw, nc, nk));
                queue.push_back(found.len() - 1);
            }
        }
        let mut pos: Vec<Root> = found
            .into_iter()
            .filter(|(_, _, k)| k.iter().all(|&x| x >= 0))
            .map(|(weight, coroot, coeffs)| {
                let fi = factor_of[coeffs.iter().position(|&x| x != 0).expect("nonzero root")];
                Root {
                    height: coeffs.iter().sum(),
                    norm2: norm2(&coeffs, fi),
                    factor: fi,
                    weight,
                    coroot,
                    coeffs,
                }
            })
            .collect();
        pos.sort_by(|a, b| {
            a.height
                .cmp(&b.height)
                .then_with(|| b.coeffs.cmp(&a.coeffs))
        });
        let expected: usize = factors.iter().map(|f| f.positive_root_count()).sum();
        if pos.len() != expected {
            return Err(Error::InternalInconsistency(format!(
                "found {} positive roots, expected {expected}",
                pos.len()
            )));
        }
        let npos = pos.len();
        let mut roots = pos.clone();
        roots.extend(pos.into_iter().map(|a| Root {
            weight: a.weight.iter().map(|x| -x).collect(),
            coroot: a.coroot.iter().map(|x| -x).collect(),
            coeffs: a.coeffs.iter().map(|x| -x).collect(),
            height: -a.height,
            ..a
        }));
        let by_weight = roots
            .iter()
            .enumerate()
            .map(|(i, a)| (a.weight.clone(), i))
            .collect();
        let by_coeffs = roots
            .iter()
            .enumerate()
            .map(|(i, a)| (a.coeffs.clone(), i))
            .collect();
        let mut two_rho = vec![0i64; rank];
        for a in &roots[..npos] {
            for (x, y) in two_rho.iter_mut().zip(&a.weight) {
                *x += y;
            }
        }
        let rho = RationalWeight::new(two_rho, 2);
        let torsion: Vec<i64> = smith_invariants(r, &basis)
            .into_iter()
            .filter(|&d| d > 1)
            .collect();
        let pi1 = Pi1Report {
            torsion_free: torsion.is_empty(),
            torsion,
            free_rank: central_rank,
        };
        let mut label = factors.iter().map(|f| f.to_string()).collect::<Vec<_>>();
        if central_rank > 0 {
            label.push(format!("T{central_rank}"));
        }
        let label = format!("{}:{}", label.join("x"), lattice.tag());
        Ok(RootDatum {
            label,
            factors,
            central_rank,
            lattice,
            rank,
            ss_rank,
            cartan,
            lattice_basis: basis,
            simple_roots,
            simple_coroots,
            roots,
            npos,
            by_weight,
            by_coeffs,
            rho,
            fundamental,
            pi1,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn factors(&self) -> &[SimpleType] {
        &self.factors
    }

    pub fn central_rank(&self) -> usize {
        self.central_rank
    }

    pub fn lattice_choice(&self) -> &LatticeChoice {
        &self.lattice
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn semisimple_rank(&self) -> usize {
        self.ss_rank
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Basis of X(T) (semisimple part) in fundamental-weight coordinates.
    pub fn lattice_basis(&self) -> &[Weight] {
        &self.lattice_basis
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Vec<i64>] {
        &self.simple_coroots
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &Root {
        &self.roots[i]
    }

    /// Positive roots come first, in order of height.
    pub fn positive_count(&self) -> usize {
        self.npos
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.npos
    }

    /// Index of the negative of root `i`.
    pub fn negate(&self, i: usize) -> usize {
        if i < self.npos {
            i + self.npos
        } else {
            i - self.npos
        }
    }

    pub fn root_index(&self, w: &[i64]) -> Option<usize> {
        self.by_weight.get(w).copied()
    }

    pub fn root_by_coeffs(&self, c: &[i64]) -> Option<usize> {
        self.by_coeffs.get(c).copied()
    }

    pub fn rho(&self) -> &RationalWeight {
        &self.rho
    }

    pub fn fundamental_weight(&self, i: usize) -> &RationalWeight {
        &self.fundamental[i]
    }

    pub fn fundamental_weights(&self) -> &[RationalWeight] {
        &self.fundamental
    }

    pub fn pi1(&self) -> &Pi1Report {
        &self.pi1
    }

    /// Product formula for |W_G|.
    pub fn weyl_order(&self) -> u128 {
        self.factors.iter().map(|f| f.weyl_order()).product()
    }

    /// `<lambda, alpha^vee>` for a root given by its coordinates.
    pub fn pair(&self, lambda: &RationalWeight, alpha: &[i64]) -> Result<Rational64> {
        let i = self
            .root_index(alpha)
            .ok_or_else(|| Error::NotARoot(format!("{alpha:?}")))?;
        Ok(lambda.pair(&self.roots[i].coroot))
    }

    /// Coordinates over (fundamental weights, central basis).
    pub fn to_fundamental(&self, lambda: &RationalWeight) -> Vec<Rational64> {
        let mut out: Vec<Rational64> = self.simple_coroots.iter().map(|c| lambda.pair(c)).collect();
        out.extend((self.ss_rank..self.rank).map(|i| lambda.coord(i)));
        out
    }

    /// Inverse of [`RootDatum::to_fundamental`].
    pub fn from_fundamental(&self, coords: &[Rational64]) -> Result<RationalWeight> {
        if coords.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                found: coords.len(),
            });
        }
        let mut acc = RationalWeight::zero(self.rank);
        for (i, c) in coords.iter().enumerate().take(self.ss_rank) {
            let term = self.fundamental[i].scale(*c.numer()).div(*c.denom());
            acc = &acc + &term;
        }
        let mut central = vec![Rational64::zero(); self.rank];
        central[self.ss_rank..].copy_from_slice(&coords[self.ss_rank..]);
        Ok(&acc + &RationalWeight::from_rationals(&central))
    }

    /// The full lattice X(T).
    pub fn character_lattice(&self) -> Lattice {
        Lattice::full(self.rank)
    }
}

impl fmt::Display for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RhoKind {
    G,
    H,
    M,
}

/// A closed, symmetric subsystem of the roots of a datum, standing for a
/// connected subgroup of maximal rank. `SubgroupDatum::full` is G itself.
#[derive(Clone, Debug)]
pub struct SubgroupDatum {
    datum: Arc<RootDatum>,
    roots: Vec<usize>,
    positive: Vec<usize>,
    simple: Vec<usize>,
    complement_positive: Vec<usize>,
    is_levi: bool,
    rho: RationalWeight,
}

impl PartialEq for SubgroupDatum {
    fn eq(&self, other: &Self) -> bool {
        self.datum == other.datum && self.roots == other.roots
    }
}

impl Eq for SubgroupDatum {}

impl SubgroupDatum {
    /// Reflection closure of the given roots (indices into `datum.roots()`).
    pub fn from_root_indices(datum: &Arc<RootDatum>, generators: &[usize]) -> Result<Self> {
        let total = datum.roots.len();
        if let Some(&bad) = generators.iter().find(|&&g| g >= total) {
            return Err(Error::NotASubsetOfRoots(format!(
                "root index {bad} out of range"
            )));
        }
        let mut member = vec![false; total];
        let mut list: Vec<usize> = Vec::new();
        let push = |i: usize, member: &mut Vec<bool>, list: &mut Vec<usize>| {
            if !member[i] {
                member[i] = true;
                list.push(i);
            }
        };
        for &g in generators {
            push(g, &mut member, &mut list);
            push(datum.negate(g), &mut member, &mut list);
        }
        let mut k = 0;
        while k < list.len() {
            let a = list[k];
            let mut fresh = Vec::new();
            for &b in &list {
                for (x, y) in [(a, b), (b, a)] {
                    let rx = &datum.roots[x];
                    let ry = &datum.roots[y];
                    let p = dot(&ry.weight, &rx.coroot);
                    let w: Weight = ry
                        .weight
                        .iter()
                        .zip(&rx.weight)
                        .map(|(u, v)| u - p * v)
                        .collect();
                    let idx = datum.root_index(&w).expect("reflection permutes roots");
                    if !member[idx] {
                        fresh.push(idx);
                    }
                }
            }
            for f in fresh {
                push(f, &mut member, &mut list);
            }
            k += 1;
        }
        for &a in &list {
            for &b in &list {
                let s: Weight = datum.roots[a]
                    .weight
                    .iter()
                    .zip(&datum.roots[b].weight)
                    .map(|(u, v)| u + v)
                    .collect();
                if let Some(c) = datum.root_index(&s) {
                    if !member[c] {
                        return Err(Error::NotClosed(format!(
                            "{:?} + {:?} is a root outside the subsystem",
                            datum.roots[a].coeffs, datum.roots[b].coeffs
                        )));
                    }
                }
            }
        }
        list.sort_unstable();
        Ok(Self::from_closed(datum.clone(), list))
    }

    /// Generators given by their coordinates in X(T).
    pub fn from_root_weights(datum: &Arc<RootDatum>, generators: &[Weight]) -> Result<Self> {
        let idx = generators
            .iter()
            .map(|g| {
                datum
                    .root_index(g)
                    .ok_or_else(|| Error::NotASubsetOfRoots(format!("{g:?} is not a root")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_root_indices(datum, &idx)
    }

    fn from_closed(datum: Arc<RootDatum>, roots: Vec<usize>) -> Self {
        let positive: Vec<usize> = roots
            .iter()
            .copied()
            .filter(|&i| datum.is_positive(i))
            .collect();
        let pos_set: HashSet<&Weight> = positive.iter().map(|&i| &datum.roots[i].weight).collect();
        let simple: Vec<usize> = positive
            .iter()
            .copied()
            .filter(|&i| {
                let w = &datum.roots[i].weight;
                !positive.iter().any(|&j| {
                    let d: Weight = w
                        .iter()
                        .zip(&datum.roots[j].weight)
                        .map(|(a, b)| a - b)
                        .collect();
                    pos_set.contains(&d)
                })
            })
            .collect();
        let complement_positive: Vec<usize> = (0..datum.npos)
            .filter(|i| positive.binary_search(i).is_err())
            .collect();
        let is_levi = simple.iter().all(|&i| datum.roots[i].height == 1);
        let mut two_rho = vec![0i64; datum.rank];
        for &i in &positive {
            for (x, y) in two_rho.iter_mut().zip(&datum.roots[i].weight) {
                *x += y;
            }
        }
        let rho = RationalWeight::new(two_rho, 2);
        SubgroupDatum {
            datum,
            roots,
            positive,
            simple,
            complement_positive,
            is_levi,
            rho,
        }
    }

    pub fn full(datum: &Arc<RootDatum>) -> Self {
        Self::from_closed(datum.clone(), (0..datum.roots.len()).collect())
    }

    pub fn torus(datum: &Arc<RootDatum>) -> Self {
        Self::from_closed(datum.clone(), Vec::new())
    }

    /// Standard Levi subgroup on the given simple roots (0-based).
    pub fn levi(datum: &Arc<RootDatum>, simple: &[usize]) -> Result<Self> {
        if let Some(&bad) = simple.iter().find(|&&s| s >= datum.ss_rank) {
            return Err(Error::NotASubsetOfRoots(format!(
                "simple root {bad} out of range"
            )));
        }
        Self::from_root_indices(datum, simple)
    }

    /// Named subgroups. Accepted names: `torus`, `full`, `long`,
    /// `levi:i,j,..` (1-based simple roots), `so3xso4` (in B3),
    /// `a2long` (in G2), `b4` (in F4), `a1xa1` (in C2).
    pub fn preset(datum: &Arc<RootDatum>, name: &str) -> Result<Self> {
        let lower = name.to_ascii_lowercase();
        if let Some(list) = lower.strip_prefix("levi:") {
            let mut idx = Vec::new();
            for t in list.split(',').filter(|t| !t.trim().is_empty()) {
                let k: usize = t
                    .trim()
                    .parse()
                    .map_err(|_| Error::NotASubsetOfRoots(format!("bad simple root `{t}`")))?;
                if k == 0 {
                    return Err(Error::NotASubsetOfRoots(
                        "simple roots are numbered from 1".into(),
                    ));
                }
                idx.push(k - 1);
            }
            return Self::levi(datum, &idx);
        }
        let single = |label: &str| -> Result<()> {
            let want: SimpleType = label.parse()?;
            if datum.factors == [want] {
                Ok(())
            } else {
                Err(Error::NotASubsetOfRoots(format!(
                    "preset `{name}` needs a datum of type {label}"
                )))
            }
        };
        let by_coeffs = |cs: &[&[i64]]| -> Result<Self> {
            let idx: Vec<usize> = cs
                .iter()
                .map(|c| datum.root_by_coeffs(c).expect("preset root"))
                .collect();
            Self::from_root_indices(datum, &idx)
        };
        match lower.as_str() {
            "torus" | "t" => Ok(Self::torus(datum)),
            "full" | "g" => Ok(Self::full(datum)),
            "long" => {
                let mut maxn = HashMap::new();
                for a in &datum.roots {
                    let e = maxn.entry(a.factor).or_insert(0);
                    *e = (*e).max(a.norm2);
                }
                let idx: Vec<usize> = (0..datum.roots.len())
                    .filter(|&i| datum.roots[i].norm2 == maxn[&datum.roots[i].factor])
                    .collect();
                Self::from_root_indices(datum, &idx)
            }
            "so3xso4" => {
                single("B3")?;
                by_coeffs(&[&[1, 1, 1], &[0, 1, 0], &[0, 1, 2]])
            }
            "a2long" => {
                single("G2")?;
                by_coeffs(&[&[0, 1], &[3, 1]])
            }
            "b4" => {
                single("F4")?;
                by_coeffs(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 1, 2, 2]])
            }
            "a1xa1" => {
                single("C2")?;
                by_coeffs(&[&[2, 1], &[0, 1]])
            }
            _ => Err(Error::NotASubsetOfRoots(format!(
                "unknown subgroup preset `{name}`"
            ))),
        }
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        &self.datum
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn positive(&self) -> &[usize] {
        &self.positive
    }

    pub fn simple(&self) -> &[usize] {
        &self.simple
    }

    /// ℛ_M^+ = ℛ_G^+ minus ℛ_H^+.
    pub fn complement_positive(&self) -> &[usize] {
        &self.complement_positive
    }

    pub fn is_levi(&self) -> bool {
        self.is_levi
    }

    pub fn is_full(&self) -> bool {
        self.roots.len() == self.datum.roots.len()
    }

    pub fn is_torus(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains_root(&self, i: usize) -> bool {
        self.roots.binary_search(&i).is_ok()
    }

    pub fn is_subsystem_of(&self, other: &SubgroupDatum) -> bool {
        self.datum == other.datum && self.roots.iter().all(|&i| other.contains_root(i))
    }

    /// Half sum of ℛ_H^+.
    pub fn rho_own(&self) -> &RationalWeight {
        &self.rho
    }

    pub fn rho(&self, which: RhoKind) -> RationalWeight {
        match which {
            RhoKind::G => self.datum.rho.clone(),
            RhoKind::H => self.rho.clone(),
            RhoKind::M => &self.datum.rho - &self.rho,
        }
    }

    /// Simple coroots of the subsystem as functionals on X(T).
    pub fn simple_coroots(&self) -> Vec<&[i64]> {
        self.simple
            .iter()
            .map(|&i| &self.datum.roots[i].coroot[..])
            .collect()
    }

    /// Order of W_H from the root count of each irreducible component is not
    /// needed; this is the number of roots.
    pub fn root_count(&self) -> usize {
        self.roots.len()
    }

    /// Cartan type description such as `B1xA1xA1`, derived from the simple roots.
    pub fn type_label(&self) -> String {
        let n = self.simple.len();
        if n == 0 {
            return "T".into();
        }
        let cp: Vec<Vec<i64>> = self
            .simple
            .iter()
            .map(|&i| {
                self.simple
                    .iter()
                    .map(|&j| dot(&self.datum.roots[i].weight, &self.datum.roots[j].coroot))
                    .collect()
            })
            .collect();
        // Connected components of the Dynkin graph.
        let mut comp = vec![usize::MAX; n];
        let mut parts: Vec<Vec<usize>> = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let c = parts.len();
            let mut stack = vec![s];
            comp[s] = c;
            let mut members = vec![];
            while let Some(v) = stack.pop() {
                members.push(v);
                for u in 0..n {
                    if comp[u] == usize::MAX && cp[v][u] != 0 {
                        comp[u] = c;
                        stack.push(u);
                    }
                }
            }
            parts.push(members);
        }
        let mut labels: Vec<String> = parts.iter().map(|m| classify_component(&cp, m)).collect();
        labels.sort();
        labels.join("x")
    }
}

/// Names an irreducible component from its rank, its number of positive
/// roots and the number of short simple roots.
fn classify_component(cp: &[Vec<i64>], m: &[usize]) -> String {
    let k = m.len();
    let cartan: Vec<Vec<i64>> = m
        .iter()
        .map(|&a| m.iter().map(|&b| cp[a][b]).collect())
        .collect();
    // Positive roots by reflection closure on coefficient vectors.
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    for i in 0..k {
        let e: Vec<i64> = (0..k).map(|j| i64::from(i == j)).collect();
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(r) = queue.pop_front() {
        for j in 0..k {
            let p: i64 = (0..k).map(|i| r[i] * cartan[i][j]).sum();
            let mut n = r.clone();
            n[j] -= p;
            if n.iter().all(|&x| x >= 0) && n.iter().any(|&x| x > 0) && seen.insert(n.clone()) {
                queue.push_back(n);
            }
        }
    }
    let npos = seen.len();
    // Relative squared lengths, propagated along the Dynkin tree.
    let mut norm: Vec<Option<Rational64>> = vec![None; k];
    norm[0] = Some(Rational64::from(1));
    let mut stack = vec![0];
    while let Some(a) = stack.pop() {
        for b in 0..k {
            if b != a && cartan[a][b] != 0 && norm[b].is_none() {
                norm[b] = Some(norm[a].unwrap() * Rational64::new(cartan[b][a], cartan[a][b]));
                stack.push(b);
            }
        }
    }
    let min = norm.iter().flatten().min().copied().unwrap();
    let max = norm.iter().flatten().max().copied().unwrap();
    let short = norm.iter().flatten().filter(|&&x| x == min).count();
    let series = if min == max {
        match (k, npos) {
            (6, 36) | (7, 63) | (8, 120) => "E",
            (k, n) if n == k * (k + 1) / 2 => "A",
            _ => "D",
        }
    } else if max / min == Rational64::from(3) {
        "G"
    } else if npos == 24 && k == 4 && short == 2 {
        "F"
    } else if short == 1 || k == 2 {
        "B"
    } else {
        "C"
    };
    format!("{series}{k}")
}

/// X(H): weights annihilated by every coroot of H.
pub fn subgroup_character_lattice(sub: &SubgroupDatum) -> Lattice {
    let n = sub.datum.rank;
    let cor = sub.simple_coroots();
    if cor.is_empty() {
        return Lattice::full(n);
    }
    let cols: Vec<Weight> = (0..n).map(|k| cor.iter().map(|c| c[k]).collect()).collect();
    Lattice::new(n, &kernel(cor.len(), &cols)).expect("ambient matches")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(label: &str) -> Arc<RootDatum> {
        Arc::new(RootDatum::from_label(label).unwrap())
    }

    #[test]
    fn root_counts() {
        assert_eq!(datum("A1").roots().len(), 2);
        assert_eq!(datum("G2").roots().len(), 12);
        assert_eq!(datum("B3:spin").roots().len(), 18);
        assert_eq!(datum("F4").roots().len(), 48);
        assert_eq!(datum("E6").roots().len(), 72);
        assert_eq!(datum("A1xA1xT1").rank(), 3);
    }

    #[test]
    fn cartan_reproduced() {
        for label in ["A3", "B3:so", "C3:adj", "D4:so", "G2", "F4", "A2xB2"] {
            let d = datum(label);
            for (i, a) in d.simple_roots().iter().enumerate() {
                for (j, c) in d.simple_coroots().iter().enumerate() {
                    assert_eq!(dot(a, c), d.cartan_matrix()[i][j], "{label} {i} {j}");
                }
            }
        }
    }

    #[test]
    fn lattice_errors() {
        assert_eq!(
            RootDatum::from_label("A2:so").unwrap_err().code(),
            "lattice_not_intermediate"
        );
        assert_eq!(
            RootDatum::from_label("Q2").unwrap_err().code(),
            "unknown_series"
        );
        assert_eq!(
            RootDatum::from_label("A9").unwrap_err().code(),
            "rank_cap_exceeded"
        );
        let bad = RootDatum::build(
            vec!["A1".parse().unwrap()],
            0,
            LatticeChoice::Generators(vec![vec![4]]),
            8,
        );
        assert_eq!(bad.unwrap_err().code(), "lattice_not_intermediate");
    }

    #[test]
    fn rho_of_a1_is_fundamental() {
        let d = datum("A1");
        assert_eq!(d.rho(), d.fundamental_weight(0));
        let alpha = d.simple_roots()[0].clone();
        assert_eq!(d.pair(d.rho(), &alpha).unwrap(), Rational64::from(1));
        assert_eq!(
            d.pair(&RationalWeight::zero(1), &alpha).unwrap(),
            Rational64::from(0)
        );
        assert_eq!(d.pair(d.rho(), &[5]).unwrap_err().code(), "not_a_root");
    }

    #[test]
    fn rho_g2_against_highest_roots() {
        let d = datum("G2");
        let top = d.positive_count() - 1;
        assert_eq!(d.root(top).coeffs, vec![3, 2]);
        // Independent: half the sum of <alpha, beta^vee> over positive alpha.
        let half_sum = |beta: usize| {
            let c = &d.root(beta).coroot;
            Rational64::new(
                d.roots()[..d.positive_count()]
                    .iter()
                    .map(|a| dot(&a.weight, c))
                    .sum(),
                2,
            )
        };
        // The highest root is long; its coroot is short.
        assert_eq!(half_sum(top), Rational64::from(3));
        assert_eq!(
            d.pair(d.rho(), &d.root(top).weight.clone()).unwrap(),
            Rational64::from(3)
        );
        // The highest short root has the highest coroot: h - 1 = 5.
        let short_top = d.root_by_coeffs(&[2, 1]).unwrap();
        assert_eq!(half_sum(short_top), Rational64::from(5));
        assert_eq!(
            d.pair(d.rho(), &d.root(short_top).weight.clone()).unwrap(),
            Rational64::from(5)
        );
    }

    #[test]
    fn torus_and_full() {
        let d = datum("A2");
        let t = SubgroupDatum::torus(&d);
        assert!(t.roots().is_empty());
        assert_eq!(t.complement_positive().len(), 3);
        assert_eq!(subgroup_character_lattice(&t), Lattice::full(2));
        let g = SubgroupDatum::full(&d);
        assert!(g.complement_positive().is_empty());
        assert_eq!(g.rho(RhoKind::M), RationalWeight::zero(2));
    }

    #[test]
    fn g2_long_a2() {
        let d = datum("G2");
        let h = SubgroupDatum::preset(&d, "a2long").unwrap();
        assert_eq!(h.roots().len(), 6);
        assert_eq!(d.roots().len() - h.roots().len(), 6);
        assert_eq!(h.type_label(), "A2");
        assert!(!h.is_levi());
        let long = SubgroupDatum::preset(&d, "long").unwrap();
        assert_eq!(long, h);
    }

    #[test]
    fn b3_so3_so4() {
        let d = datum("B3:spin");
        let h = SubgroupDatum::preset(&d, "so3xso4").unwrap();
        assert_eq!(h.roots().len(), 6);
        assert_eq!(h.complement_positive().len(), 6);
        assert_eq!(h.type_label(), "A1xA1xA1");
        // rho_M = 2 e1 + e2/2 + e3/2 with e1 = w1, e2 = w2 - w1, e3 = 2 w3 - w2,
        // i.e. (3/2) w1 + w3 in fundamental coordinates.
        let rho_m = h.rho(RhoKind::M);
        assert_eq!(
            d.to_fundamental(&rho_m),
            vec![
                Rational64::new(3, 2),
                Rational64::from(0),
                Rational64::from(1)
            ]
        );
        assert_eq!(subgroup_character_lattice(&h).rank(), 0);
        assert_eq!(&h.rho(RhoKind::G) - &h.rho(RhoKind::H), rho_m);
    }

    #[test]
    fn levi_character_lattice_rank_one() {
        let d = datum("A2");
        let h = SubgroupDatum::levi(&d, &[0]).unwrap();
        assert!(h.is_levi());
        let xh = subgroup_character_lattice(&h);
        assert_eq!(xh.rank(), 1);
        let w2 = d.fundamental_weight(1).as_integral().unwrap().to_vec();
        assert!(xh.contains(&w2));
    }

    #[test]
    fn closure_rejects_unclosed() {
        // Short roots of G2 generate an A2 under reflection that is not closed under addition.
        let d = datum("G2");
        let short = d.root_by_coeffs(&[1, 0]).unwrap();
        assert_eq!(
            SubgroupDatum::from_root_indices(&d, &[short])
                .unwrap()
                .roots()
                .len(),
            2
        );
        let s2 = d.root_by_coeffs(&[1, 1]).unwrap();
        let err = SubgroupDatum::from_root_indices(&d, &[short, s2]).unwrap_err();
        assert_eq!(err.code(), "not_closed");
        assert_eq!(
            SubgroupDatum::from_root_weights(&d, &[vec![7, 7]])
                .unwrap_err()
                .code(),
            "not_a_subset_of_roots"
        );
    }

    #[test]
    fn f4_b4_and_c2_presets() {
        let d = datum("F4");
        let h = SubgroupDatum::preset(&d, "b4").unwrap();
        assert_eq!(h.roots().len(), 32);
        assert_eq!(h.type_label(), "B4");
        assert_eq!(datum("F4").roots().len(), 48);
        let c2 = datum("C2");
        let k = SubgroupDatum::preset(&c2, "a1xa1").unwrap();
        assert_eq!(k.roots().len(), 4);
        assert_eq!(
            SubgroupDatum::preset(&c2, "b4").unwrap_err().code(),
            "not_a_subset_of_roots"
        );
    }

    #[test]
    fn monotone_character_lattice() {
        let d = datum("B3:so");
        let t = subgroup_character_lattice(&SubgroupDatum::torus(&d));
        let l = subgroup_character_lattice(&SubgroupDatum::levi(&d, &[1]).unwrap());
        let g = subgroup_character_lattice(&SubgroupDatum::full(&d));
        assert!(t.contains_lattice(&l));
        assert!(l.contains_lattice(&g));
    }

    #[test]
    fn pi1_diagnostics() {
        assert!(datum("B3:spin").pi1().torsion_free);
        assert_eq!(datum("B3:so").pi1().torsion, vec![2]);
        assert_eq!(datum("A2:adj").pi1().torsion, vec![3]);
        assert_eq!(datum("A1xT1").pi1().free_rank, 1);
    }
}
