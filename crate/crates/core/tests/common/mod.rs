//! Independent oracles. None of these share code paths with the library
//! routines they are used to check.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use plumb_core::SymIntMatrix;

/// Cofactor expansion along the first row.
pub fn laplace_det(rows: &[Vec<i64>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    if n == 1 {
        return BigInt::from(rows[0][0]);
    }
    let mut total = BigInt::zero();
    for col in 0..n {
        if rows[0][col] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = rows[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(j, _)| j != col).map(|(_, &v)| v).collect())
            .collect();
        let term = BigInt::from(rows[0][col]) * laplace_det(&minor);
        if col % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// `x_1 - 1/(x_2 - 1/(...))` by literal nested division; `None` if some
/// intermediate denominator vanishes.
pub fn nested_fraction(terms: &[i64]) -> Option<BigRational> {
    let (last, rest) = terms.split_last()?;
    let mut value = BigRational::from_integer(BigInt::from(*last));
    for &x in rest.iter().rev() {
        if value.is_zero() {
            return None;
        }
        value = BigRational::from_integer(BigInt::from(x)) - value.recip();
    }
    Some(value)
}

/// Diagonal of `a^{-1}` by Gauss–Jordan over the rationals.
pub fn inverse_diagonal(a: &SymIntMatrix) -> Vec<BigRational> {
    let n = a.dim();
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    let v = if j < n { a.get(i, j) } else { i64::from(j - n == i) };
                    BigRational::from_integer(BigInt::from(v))
                })
                .collect()
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&r| !m[r][c].is_zero()).expect("nonsingular");
        m.swap(c, piv);
        let inv = m[c][c].recip();
        for v in m[c].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for j in 0..2 * n {
                    let v = &f * &m[c][j];
                    m[r][j] -= v;
                }
            }
        }
    }
    (0..n).map(|i| m[i][n + i].clone()).collect()
}

/// Coordinate bound for `|v^T a v| = norm` on a definite `a`: by
/// Cauchy–Schwarz in the form's inner product, `v_i^2 <= norm * (a^{-1})_{ii}`.
pub fn cauchy_schwarz_box(q: &SymIntMatrix, norm: i64) -> i64 {
    inverse_diagonal(q)
        .into_iter()
        .map(|d| {
            let bound = (d * BigRational::from_integer(BigInt::from(norm))).abs();
            let mut k = 0i64;
            while BigRational::from_integer(BigInt::from((k + 1) * (k + 1))) <= bound {
                k += 1;
            }
            k
        })
        .max()
        .unwrap_or(0)
}

trait Abs {
    fn abs(self) -> Self;
}

impl Abs for BigRational {
    fn abs(self) -> Self {
        if self < BigRational::zero() {
            -self
        } else {
            self
        }
    }
}

/// Every `v` with `max |v_i| <= bound` and `v^T q v = target`, in
/// lexicographic order of the reversed coordinates.
pub fn box_scan(q: &SymIntMatrix, target: i64, bound: i64) -> Vec<Vec<i64>> {
    let n = q.dim();
    let mut out = Vec::new();
    let mut v = vec![-bound; n];
    if n == 0 {
        return out;
    }
    let target = i128::from(target);
    loop {
        let mut value = 0i128;
        for i in 0..n {
            for j in 0..n {
                value += i128::from(v[i]) * i128::from(q.get(i, j)) * i128::from(v[j]);
            }
        }
        if value == target {
            out.push(v.clone());
        }
        let mut k = 0;
        loop {
            if k == n {
                return out;
            }
            if v[k] < bound {
                v[k] += 1;
                break;
            }
            v[k] = -bound;
            k += 1;
        }
    }
}

pub fn sorted(mut vs: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    vs.sort();
    vs
}
