//! Classical invariants of integral symmetric bilinear forms.
//!
//! Signature and definiteness come from an exact congruence diagonalization
//! over the rationals; the determinant comes from fraction-free elimination.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::matrix::SymIntMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Definiteness {
    NegativeDefinite,
    PositiveDefinite,
    Indefinite,
    Degenerate,
}

impl fmt::Display for Definiteness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Definiteness::NegativeDefinite => "negative-definite",
            Definiteness::PositiveDefinite => "positive-definite",
            Definiteness::Indefinite => "indefinite",
            Definiteness::Degenerate => "degenerate",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub b2: usize,
    #[serde(with = "crate::report::bigint_json")]
    pub determinant: BigInt,
    pub signature: i64,
    pub b2_plus: usize,
    pub b2_minus: usize,
    pub b2_zero: usize,
    /// `1 + b2`, the Euler characteristic of a plumbing over a forest of spheres
    /// with one 0-handle.
    pub euler: i64,
    pub definiteness: Definiteness,
    pub parity: Parity,
}

pub fn parity(q: &SymIntMatrix) -> Parity {
    if q.diag().iter().all(|d| d % 2 == 0) {
        Parity::Even
    } else {
        Parity::Odd
    }
}

/// Diagonal entries of a rational matrix congruent to `q`.
///
/// Uses symmetric row/column operations only (swaps and additions), so the
/// product of the returned pivots equals `det(q)` and their signs give the
/// inertia.
pub fn congruence_diagonal(q: &SymIntMatrix) -> Vec<BigRational> {
    let n = q.dim();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| BigRational::from_integer(q.get(i, j).into())).collect())
        .collect();
    let mut pivots = Vec::with_capacity(n);
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // e_k <- e_k + e_j makes the pivot 2 a[k][j]
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[k][c] += v;
                }
                for row in a.iter_mut() {
                    let v = row[j].clone();
                    row[k] += v;
                }
            }
        }
        let pivot = a[k][k].clone();
        if !pivot.is_zero() {
            for i in (k + 1)..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let factor = &a[i][k] / &pivot;
                for c in k..n {
                    let v = &factor * &a[k][c];
                    a[i][c] -= v;
                }
                for r in a.iter_mut().skip(k) {
                    let v = &factor * &r[k];
                    r[i] -= v;
                }
            }
        }
        pivots.push(pivot);
    }
    pivots
}

pub fn invariants(q: &SymIntMatrix) -> InvariantReport {
    let pivots = congruence_diagonal(q);
    let b2_plus = pivots.iter().filter(|p| p.is_positive()).count();
    let b2_minus = pivots.iter().filter(|p| p.is_negative()).count();
    let b2_zero = pivots.len() - b2_plus - b2_minus;
    let b2 = q.dim();
    let definiteness = if b2_zero > 0 {
        Definiteness::Degenerate
    } else if b2_plus == 0 {
        // includes the empty form
        Definiteness::NegativeDefinite
    } else if b2_minus == 0 {
        Definiteness::PositiveDefinite
    } else {
        Definiteness::Indefinite
    };
    InvariantReport {
        b2,
        determinant: q.determinant(),
        signature: b2_plus as i64 - b2_minus as i64,
        b2_plus,
        b2_minus,
        b2_zero,
        euler: 1 + b2 as i64,
        definiteness,
        parity: parity(q),
    }
}

/// Sylvester's count from the leading principal minors, available only when
/// every leading minor is nonzero: the number of sign changes in
/// `1, d_1, .., d_n` is the number of negative eigenvalues.
pub fn sylvester_signature(q: &SymIntMatrix) -> Option<i64> {
    let minors = crate::matrix::leading_minors(q);
    if minors.iter().any(Zero::is_zero) {
        return None;
    }
    let mut prev_positive = true;
    let mut negatives = 0i64;
    for d in &minors {
        let positive = d.is_positive();
        if positive != prev_positive {
            negatives += 1;
        }
        prev_positive = positive;
    }
    Some(q.dim() as i64 - 2 * negatives)
}
