//! Integer lattices in Z^n: column Hermite normal form, membership,
//! kernels, intersections, coset reduction and Smith invariants.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{RationalWeight, Weight};

/// Sublattice of Z^n, stored as the nonzero columns of its Hermite normal
/// form. Two lattices are equal iff their bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Lattice {
    ambient: usize,
    basis: Vec<Weight>,
}

/// Result of column reduction: `gens * unimodular = hnf` (columns).
#[derive(Clone, Debug)]
pub struct Hnf {
    pub hnf: Vec<Weight>,
    pub unimodular: Vec<Weight>,
    /// Pivot row of each nonzero column, strictly increasing.
    pub pivots: Vec<usize>,
}

fn axpy(dst: &mut [i64], k: i64, src: &[i64]) {
    if k != 0 {
        for (d, s) in dst.iter_mut().zip(src) {
            *d -= k * s;
        }
    }
}

/// Column-style Hermite normal form of the columns `gens` in Z^n.
/// Pivots are positive and entries left of a pivot lie in `[0, pivot)`.
pub fn hnf(ambient: usize, gens: &[Weight]) -> Hnf {
    let m = gens.len();
    let mut h: Vec<Weight> = gens.to_vec();
    let mut u: Vec<Weight> = (0..m)
        .map(|j| (0..m).map(|i| i64::from(i == j)).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut k = 0;
    for row in 0..ambient {
        if k == m {
            break;
        }
        // Euclid on the columns k.. until only column k has a nonzero entry in `row`.
        loop {
            let mut best: Option<usize> = None;
            for j in k..m {
                if h[j][row] != 0 && best.is_none_or(|b| h[j][row].abs() < h[b][row].abs()) {
                    best = Some(j);
                }
            }
            let Some(b) = best else { break };
            h.swap(k, b);
            u.swap(k, b);
            let mut done = true;
            for j in k + 1..m {
                if h[j][row] != 0 {
                    let q = Integer::div_floor(&h[j][row], &h[k][row]);
                    let (hk, uk) = (h[k].clone(), u[k].clone());
                    axpy(&mut h[j], q, &hk);
                    axpy(&mut u[j], q, &uk);
                    if h[j][row] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[k][row] == 0 {
            continue;
        }
        if h[k][row] < 0 {
            h[k].iter_mut().for_each(|x| *x = -*x);
            u[k].iter_mut().for_each(|x| *x = -*x);
        }
        let p = h[k][row];
        let (hk, uk) = (h[k].clone(), u[k].clone());
        for j in 0..k {
            let q = Integer::div_floor(&h[j][row], &p);
            axpy(&mut h[j], q, &hk);
            axpy(&mut u[j], q, &uk);
        }
        pivots.push(row);
        k += 1;
    }
    Hnf {
        hnf: h,
        unimodular: u,
        pivots,
    }
}

impl Lattice {
    pub fn new(ambient: usize, gens: &[Weight]) -> Result<Self> {
        for g in gens {
            if g.len() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    found: g.len(),
                });
            }
        }
        let r = hnf(ambient, gens);
        let basis = r.hnf.into_iter().take(r.pivots.len()).collect();
        Ok(Lattice { ambient, basis })
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|j| (0..ambient).map(|i| i64::from(i == j)).collect())
            .collect();
        Lattice { ambient, basis }
    }

    pub fn zero(ambient: usize) -> Self {
        Lattice {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Weight] {
        &self.basis
    }

    pub fn scaled(&self, k: i64) -> Self {
        let gens: Vec<Weight> = self
            .basis
            .iter()
            .map(|c| c.iter().map(|x| x * k).collect())
            .collect();
        Lattice::new(self.ambient, &gens).expect("same ambient")
    }

    fn pivots(&self) -> impl Iterator<Item = (usize, &Weight)> {
        self.basis
            .iter()
            .map(|c| (c.iter().position(|&x| x != 0).expect("nonzero"), c))
    }

    /// Coefficients `y` with `sum y_j basis_j = v`, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[i64]) -> Option<Vec<i64>> {
        let mut r = v.to_vec();
        let mut y = Vec::with_capacity(self.basis.len());
        for (p, col) in self.pivots() {
            if r[p] % col[p] != 0 {
                return None;
            }
            let q = r[p] / col[p];
            axpy(&mut r, q, col);
            y.push(q);
        }
        r.iter().all(|&x| x == 0).then_some(y)
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    /// Canonical representative of `v + self`.
    pub fn reduce(&self, v: &[i64]) -> Weight {
        let mut r = v.to_vec();
        for (p, col) in self.pivots() {
            let q = Integer::div_floor(&r[p], &col[p]);
            axpy(&mut r, q, col);
        }
        r
    }

    pub fn sum(&self, other: &Lattice) -> Result<Lattice> {
        let gens: Vec<Weight> = self.basis.iter().chain(&other.basis).cloned().collect();
        Lattice::new(self.ambient, &gens)
    }

    pub fn intersect(&self, other: &Lattice) -> Result<Lattice> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        let mut gens = self.basis.clone();
        gens.extend(
            other
                .basis
                .iter()
                .map(|c| c.iter().map(|x| -x).collect::<Weight>()),
        );
        let ker = kernel(self.ambient, &gens);
        let inter: Vec<Weight> = ker
            .iter()
            .map(|z| {
                let mut v = vec![0; self.ambient];
                for (j, col) in self.basis.iter().enumerate() {
                    axpy(&mut v, -z[j], col);
                }
                v
            })
            .collect();
        Lattice::new(self.ambient, &inter)
    }
}

/// Integer solution of `sum z_j gens_j = target`.
pub fn solve(ambient: usize, gens: &[Weight], target: &[i64]) -> Option<Vec<i64>> {
    let r = hnf(ambient, gens);
    let mut res = target.to_vec();
    let mut z = vec![0i64; gens.len()];
    for (k, &p) in r.pivots.iter().enumerate() {
        let col = &r.hnf[k];
        if res[p] % col[p] != 0 {
            return None;
        }
        let q = res[p] / col[p];
        axpy(&mut res, q, col);
        for (zi, ui) in z.iter_mut().zip(&r.unimodular[k]) {
            *zi += q * ui;
        }
    }
    res.iter().all(|&x| x == 0).then_some(z)
}

/// Basis of the integer kernel of the matrix with columns `gens`.
pub fn kernel(ambient: usize, gens: &[Weight]) -> Vec<Weight> {
    let r = hnf(ambient, gens);
    r.unimodular.into_iter().skip(r.pivots.len()).collect()
}

/// Invariant factors `d_1 | d_2 | ...` of the matrix with columns `gens`
/// (nonzero ones only).
pub fn smith_invariants(ambient: usize, gens: &[Weight]) -> Vec<i64> {
    let mut a: Vec<Vec<i64>> = (0..ambient)
        .map(|i| gens.iter().map(|c| c[i]).collect())
        .collect();
    let (rows, cols) = (ambient, gens.len());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry in the remaining block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        let mut clean = true;
        let p = a[t][t];
        for i in t + 1..rows {
            let q = Integer::div_floor(&a[i][t], &p);
            if q != 0 {
                let pivot_row = a[t].clone();
                axpy(&mut a[i], q, &pivot_row);
            }
            clean &= a[i][t] == 0;
        }
        for j in t + 1..cols {
            let q = Integer::div_floor(&a[t][j], &p);
            if q != 0 {
                for row in a.iter_mut() {
                    row[j] -= q * row[t];
                }
            }
            clean &= a[t][j] == 0;
        }
        if !clean {
            continue;
        }
        // Enforce divisibility of the rest of the block by the pivot.
        let mut fixed = true;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if a[i][j] % p != 0 {
                    for c in 0..cols {
                        let v = a[i][c];
                        a[t][c] += v;
                    }
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if fixed {
            diag.push(p.abs());
            t += 1;
        }
    }
    diag
}

/// Finds `x` in `gens` with `x - target` in `modulus`, or `None`.
///
/// The answer is canonical: it is `target + r` where `r` is the reduced
/// representative of the solution coset modulo `gens ∩ modulus`. In
/// particular, `target` itself is returned whenever it lies in `gens`.
pub fn solve_in_lattice(
    target: &RationalWeight,
    gens: &Lattice,
    modulus: &Lattice,
) -> Result<Option<Weight>> {
    let n = gens.ambient();
    if modulus.ambient() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: modulus.ambient(),
        });
    }
    if target.rank() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: target.rank(),
        });
    }
    let Some(t) = target.as_integral() else {
        return Ok(None);
    };
    let mut cols: Vec<Weight> = gens.basis().to_vec();
    cols.extend(
        modulus
            .basis()
            .iter()
            .map(|c| c.iter().map(|x| -x).collect::<Weight>()),
    );
    let Some(z) = solve(n, &cols, t) else {
        return Ok(None);
    };
    let mut x0 = vec![0i64; n];
    for (j, col) in gens.basis().iter().enumerate() {
        axpy(&mut x0, -z[j], col);
    }
    let common = gens.intersect(modulus)?;
    let diff: Weight = x0.iter().zip(t).map(|(a, b)| a - b).collect();
    let r = common.reduce(&diff);
    Ok(Some(t.iter().zip(&r).map(|(a, b)| a + b).collect()))
}
