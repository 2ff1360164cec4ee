//! Symmetric integer matrices and exact determinants.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("row {row} has {len} entries, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
}

/// A symmetric `n x n` integer matrix stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct SymIntMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl SymIntMatrix {
    pub fn empty() -> Self {
        Self { n: 0, entries: Vec::new() }
    }

    pub fn zeros(n: usize) -> Self {
        Self { n, entries: vec![0; n * n] }
    }

    pub fn diagonal(values: &[i64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m.entries[i * m.n + i] = v;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self, MatrixError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(MatrixError::Ragged { row, len: r.len(), expected: n });
            }
            entries.extend_from_slice(r);
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if entries[i * n + j] != entries[j * n + i] {
                    return Err(MatrixError::NotSymmetric(i, j));
                }
            }
        }
        Ok(Self { n, entries })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, value: i64) {
        self.entries[i * self.n + j] = value;
        self.entries[j * self.n + i] = value;
    }

    pub fn diag(&self) -> Vec<i64> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.n.max(1)).take(self.n).map(<[i64]>::to_vec).collect()
    }

    pub fn to_big_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| BigInt::from(self.get(i, j))).collect())
            .collect()
    }

    /// Evaluates `v^T Q v` exactly.
    pub fn quadratic_form(&self, v: &[i64]) -> BigInt {
        assert_eq!(v.len(), self.n, "vector length does not match dimension");
        let mut total = BigInt::zero();
        for i in 0..self.n {
            if v[i] == 0 {
                continue;
            }
            let mut row = BigInt::zero();
            for j in 0..self.n {
                row += BigInt::from(self.get(i, j)) * v[j];
            }
            total += row * v[i];
        }
        total
    }

    /// Returns `U^T Q U`, or `None` if an entry leaves the `i64` range.
    pub fn congruent(&self, u: &[Vec<i64>]) -> Option<SymIntMatrix> {
        let n = self.n;
        assert_eq!(u.len(), n);
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                let mut acc = BigInt::zero();
                for k in 0..n {
                    if u[k][i] == 0 {
                        continue;
                    }
                    for l in 0..n {
                        acc += BigInt::from(u[k][i]) * self.get(k, l) * u[l][j];
                    }
                }
                out.set(i, j, i64::try_from(acc).ok()?);
            }
        }
        Some(out)
    }

    pub fn determinant(&self) -> BigInt {
        bareiss_determinant(self.to_big_rows())
    }
}

impl TryFrom<Vec<Vec<i64>>> for SymIntMatrix {
    type Error = MatrixError;

    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self, Self::Error> {
        Self::from_rows(rows)
    }
}

impl From<SymIntMatrix> for Vec<Vec<i64>> {
    fn from(m: SymIntMatrix) -> Self {
        m.rows()
    }
}

/// Fraction-free Gaussian elimination. The empty matrix has determinant 1.
pub fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &a[n - 1][n - 1]
}

/// Determinants of the leading principal submatrices, `d_1 .. d_n`.
pub fn leading_minors(q: &SymIntMatrix) -> Vec<BigInt> {
    (1..=q.dim())
        .map(|k| {
            let rows = (0..k)
                .map(|i| (0..k).map(|j| BigInt::from(q.get(i, j))).collect())
                .collect();
            bareiss_determinant(rows)
        })
        .collect()
}
