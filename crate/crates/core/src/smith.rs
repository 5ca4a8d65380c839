//! Smith normal form and abelian group descriptors for integer matrices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A finitely generated abelian group `Z^rank + Z/t_1 + ... + Z/t_k` with
/// `1 < t_1 | t_2 | ... | t_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn free(rank: usize) -> Self {
        Self {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Order of the group, or `None` when it is infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.rank == 0).then(|| self.torsion.iter().fold(BigInt::one(), |acc, t| acc * t))
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

/// Nonzero invariant factors `d_1 | d_2 | ...` of an integer matrix given as
/// rows. The number of factors is the rank.
pub fn invariant_factors(rows: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let n_rows = a.len();
    let n_cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < n_rows.min(n_cols) {
        // Smallest nonzero entry of the remaining block as pivot.
        let pivot = (t..n_rows)
            .flat_map(|i| (t..n_cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()));
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..n_rows {
            if a[i][t].is_zero() {
                continue;
            }
            let q = a[i][t].div_floor(&a[t][t]);
            for j in t..n_cols {
                let v = &q * &a[t][j];
                a[i][j] -= v;
            }
            if !a[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..n_cols {
            if a[t][j].is_zero() {
                continue;
            }
            let q = a[t][j].div_floor(&a[t][t]);
            for i in t..n_rows {
                let v = &q * &a[i][t];
                a[i][j] -= v;
            }
            if !a[t][j].is_zero() {
                clean = false;
            }
        }
        if clean {
            diag.push(a[t][t].abs());
            t += 1;
        }
    }
    // Enforce the divisibility chain.
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = diag[i].gcd(&diag[j]);
            let l = diag[i].lcm(&diag[j]);
            diag[i] = g;
            diag[j] = l;
        }
    }
    diag
}

/// Cokernel of the map `Z^cols -> Z^rows` given by the matrix.
pub fn cokernel(rows: &[Vec<BigInt>], n_rows: usize) -> AbelianGroup {
    let factors = invariant_factors(rows);
    AbelianGroup {
        rank: n_rows - factors.len(),
        torsion: factors.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

/// Determinant of a square integer matrix by fraction-free elimination.
pub fn determinant(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = rows.to_vec();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Converts a small integer matrix to big integers.
pub fn to_big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_factors_of_small_matrices() {
        let m = to_big(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let f = invariant_factors(&m);
        assert_eq!(f, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        assert!(invariant_factors(&to_big(&[vec![0, 0]])).is_empty());
        assert_eq!(invariant_factors(&to_big(&[vec![2], vec![3]])), vec![BigInt::from(1)]);
    }

    #[test]
    fn cokernels_and_display() {
        let g = cokernel(&to_big(&[vec![2, 0], vec![0, 0]]), 2);
        assert_eq!(g.to_string(), "Z+Z/2");
        assert_eq!(cokernel(&[], 0).to_string(), "0");
        assert_eq!(cokernel(&to_big(&[vec![1]]), 1), AbelianGroup::trivial());
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&to_big(&[vec![0, 1], vec![1, 5]])), BigInt::from(-1));
        assert_eq!(determinant(&[]), BigInt::one());
        assert_eq!(determinant(&to_big(&[vec![1, 2], vec![2, 4]])), BigInt::zero());
    }
}
