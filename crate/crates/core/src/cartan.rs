//! Simple root systems: standard Euclidean realizations, Cartan matrices
//! and Weyl group orders. Vectors are stored doubled so that half-integer
//! coordinates (E and F series) stay integral.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// One simple factor, e.g. `B3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SimpleType {
    pub series: Series,
    pub rank: usize,
}

impl SimpleType {
    pub fn new(series: Series, rank: usize) -> Result<Self, Error> {
        let ok = match series {
            Series::A | Series::B | Series::C => rank >= 1,
            Series::D => rank >= 2,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if ok {
            Ok(SimpleType { series, rank })
        } else {
            Err(Error::UnknownSeries(format!("{series:?}{rank}")))
        }
    }

    /// Doubled coordinates of the simple roots in Bourbaki numbering.
    pub fn realization(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let unit = |dim: usize, i: usize| -> Vec<i64> {
            let mut v = vec![0; dim];
            v[i] = 2;
            v
        };
        let diff = |dim: usize, i: usize, j: usize| -> Vec<i64> {
            let mut v = vec![0; dim];
            v[i] += 2;
            v[j] -= 2;
            v
        };
        match self.series {
            Series::A => (0..n).map(|i| diff(n + 1, i, i + 1)).collect(),
            Series::B => {
                let mut r: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
                r.push(unit(n, n - 1));
                r
            }
            Series::C => {
                let mut r: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
                r.push(unit(n, n - 1).iter().map(|x| 2 * x).collect());
                r
            }
            Series::D => {
                let mut r: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
                let mut last = vec![0; n];
                last[n - 2] = 2;
                last[n - 1] = 2;
                r.push(last);
                r
            }
            Series::E => {
                let mut r = vec![vec![1, -1, -1, -1, -1, -1, -1, 1], {
                    let mut v = vec![0; 8];
                    v[0] = 2;
                    v[1] = 2;
                    v
                }];
                for i in 0..6 {
                    r.push(diff(8, i + 1, i));
                }
                r.truncate(n);
                r
            }
            Series::F => vec![
                diff(4, 1, 2),
                diff(4, 2, 3),
                unit(4, 3),
                vec![1, -1, -1, -1],
            ],
            Series::G => vec![diff(3, 0, 1), vec![-4, 2, 2]],
        }
    }

    /// `a_ij = <alpha_i, alpha_j^vee>`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let r = self.realization();
        let dot = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>();
        r.iter()
            .map(|ai| r.iter().map(|aj| 2 * dot(ai, aj) / dot(aj, aj)).collect())
            .collect()
    }

    /// Fundamental-weight coordinates of the standard basis vectors of the
    /// realization (B, C and D only): the "integer vector" lattice.
    pub fn standard_vectors(&self) -> Option<Vec<Vec<i64>>> {
        if !matches!(self.series, Series::B | Series::C | Series::D) {
            return None;
        }
        let r = self.realization();
        let n = self.rank;
        let dot = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>();
        Some(
            (0..n)
                .map(|k| {
                    let mut e = vec![0; n];
                    e[k] = 2;
                    r.iter().map(|a| 2 * dot(&e, a) / dot(a, a)).collect()
                })
                .collect(),
        )
    }

    pub fn weyl_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match (self.series, self.rank) {
            (Series::A, _) => fact(n + 1),
            (Series::B | Series::C, _) => (1u128 << n) * fact(n),
            (Series::D, _) => (1u128 << (n - 1)) * fact(n),
            (Series::E, 6) => 51_840,
            (Series::E, 7) => 2_903_040,
            (Series::E, _) => 696_729_600,
            (Series::F, _) => 1_152,
            (Series::G, _) => 12,
        }
    }

    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match (self.series, n) {
            (Series::A, _) => n * (n + 1) / 2,
            (Series::B | Series::C, _) => n * n,
            (Series::D, _) => n * (n - 1),
            (Series::E, 6) => 36,
            (Series::E, 7) => 63,
            (Series::E, _) => 120,
            (Series::F, _) => 24,
            (Series::G, _) => 6,
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.series, self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let err = || Error::UnknownSeries(s.to_string());
        let mut chars = s.chars();
        let series = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Series::A,
            Some('B') => Series::B,
            Some('C') => Series::C,
            Some('D') => Series::D,
            Some('E') => Series::E,
            Some('F') => Series::F,
            Some('G') => Series::G,
            _ => return Err(err()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| err())?;
        SimpleType::new(series, rank).map_err(|_| err())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> SimpleType {
        s.parse().unwrap()
    }

    #[test]
    fn cartan_matrices() {
        assert_eq!(t("A2").cartan_matrix(), vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(t("B2").cartan_matrix(), vec![vec![2, -2], vec![-1, 2]]);
        assert_eq!(t("C2").cartan_matrix(), vec![vec![2, -1], vec![-2, 2]]);
        assert_eq!(t("G2").cartan_matrix(), vec![vec![2, -1], vec![-3, 2]]);
        assert_eq!(
            t("F4").cartan_matrix(),
            vec![
                vec![2, -1, 0, 0],
                vec![-1, 2, -2, 0],
                vec![0, -1, 2, -1],
                vec![0, 0, -1, 2]
            ]
        );
        let e6 = t("E6").cartan_matrix();
        assert_eq!(e6[0][2], -1);
        assert_eq!(e6[1][3], -1);
        assert_eq!(e6[3][4], -1);
        assert_eq!(e6[1][2], 0);
    }

    #[test]
    fn parse_rejects_nonsense() {
        assert!("E5".parse::<SimpleType>().is_err());
        assert!("D1".parse::<SimpleType>().is_err());
        assert!("X3".parse::<SimpleType>().is_err());
        assert!("F3".parse::<SimpleType>().is_err());
    }

    #[test]
    fn so_lattice_of_b3() {
        // e1 = w1, e2 = w2 - w1, e3 = 2 w3 - w2.
        assert_eq!(
            t("B3").standard_vectors().unwrap(),
            vec![vec![1, 0, 0], vec![-1, 1, 0], vec![0, -1, 2]]
        );
    }
}
