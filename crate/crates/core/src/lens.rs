//! Negative continued fractions and lens spaces bounding linear plumbings.
//!
//! Orientation convention: the boundary of the linear plumbing with weights
//! `e_1, .., e_n` is `L(P, Q)` where `P/Q = [-e_1, .., -e_n]` is the negative
//! continued fraction. A pair with `P < 0` is normalized to `(-P, -Q)`, which
//! reverses the orientation of the naive `L(|P|, Q mod |P|)`; that flip is
//! reported alongside the result.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LensError {
    #[error("invalid fraction {p}/{q}: need 0 < q < p with gcd(p, q) = 1")]
    InvalidFraction { p: BigInt, q: BigInt },
    #[error("invalid lens space L({p},{q})")]
    InvalidLens { p: BigInt, q: BigInt },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ContinuedFraction(pub Vec<i64>);

impl ContinuedFraction {
    /// Numerator and denominator of `x_1 - 1/(x_2 - 1/(...))`.
    ///
    /// Computed with the three-term recursion `P_i = x_i P_{i-1} - P_{i-2}`,
    /// so a vanishing intermediate denominator never causes a division. The
    /// denominator is the numerator of the tail `[x_2, .., x_n]`. The pair is
    /// always coprime.
    pub fn eval(&self) -> (BigInt, BigInt) {
        let numerator = |terms: &[i64]| {
            let (mut cur, mut prev) = (BigInt::one(), BigInt::zero());
            for &x in terms {
                let next = &cur * x - &prev;
                prev = std::mem::replace(&mut cur, next);
            }
            cur
        };
        match self.0.split_first() {
            None => (BigInt::one(), BigInt::zero()),
            Some((_, tail)) => (numerator(&self.0), numerator(tail)),
        }
    }

    /// The unique expansion of `p/q` with every term at least 2.
    pub fn hirzebruch_jung(p: &BigInt, q: &BigInt) -> Result<Self, LensError> {
        if !(q.is_positive() && q < p) || !p.gcd(q).is_one() {
            return Err(LensError::InvalidFraction { p: p.clone(), q: q.clone() });
        }
        let (mut a, mut b) = (p.clone(), q.clone());
        let mut terms = Vec::new();
        while b.is_positive() {
            let x = Integer::div_ceil(&a, &b);
            let r = &x * &b - &a;
            terms.push(i64::try_from(&x).expect("continued fraction term exceeds i64"));
            a = std::mem::replace(&mut b, r);
        }
        Ok(Self(terms))
    }
}

pub fn neg_cf_eval(terms: &[i64]) -> (BigInt, BigInt) {
    ContinuedFraction(terms.to_vec()).eval()
}

pub fn hj_expand(p: &BigInt, q: &BigInt) -> Result<ContinuedFraction, LensError> {
    ContinuedFraction::hirzebruch_jung(p, q)
}

/// An oriented lens space, with the two degenerate cases kept separate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Boundary3Manifold {
    S3,
    S1xS2,
    /// Normalized: `p >= 2`, `0 < q < p`, `gcd(p, q) = 1`.
    Lens { p: BigInt, q: BigInt },
}

/// Result of normalizing a signed pair `(P, Q)` into a boundary manifold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedBoundary {
    pub manifold: Boundary3Manifold,
    pub raw: (BigInt, BigInt),
    /// `P < 0` was normalized by negating both entries.
    pub flipped: bool,
}

impl Boundary3Manifold {
    pub fn lens(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self, LensError> {
        let (p, q) = (p.into(), q.into());
        if p < BigInt::from(2) || !q.is_positive() || q >= p || !p.gcd(&q).is_one() {
            return Err(LensError::InvalidLens { p, q });
        }
        Ok(Boundary3Manifold::Lens { p, q })
    }

    /// Normalizes the manifold presented by the signed pair `(P, Q)`.
    ///
    /// `|P| = 1` gives `S3`, `P = 0` gives `S1xS2`. The pair must be coprime
    /// for a lens result; a non-coprime pair with `|P| >= 2` is rejected.
    pub fn from_pair(p: &BigInt, q: &BigInt) -> Result<NormalizedBoundary, LensError> {
        let flipped = p.is_negative();
        let (np, nq) = if flipped { (-p, -q) } else { (p.clone(), q.clone()) };
        let manifold = if np.is_zero() {
            Boundary3Manifold::S1xS2
        } else if np.is_one() {
            Boundary3Manifold::S3
        } else {
            let r = nq.mod_floor(&np);
            if !np.gcd(&r).is_one() {
                return Err(LensError::InvalidLens { p: p.clone(), q: q.clone() });
            }
            Boundary3Manifold::Lens { p: np, q: r }
        };
        Ok(NormalizedBoundary { manifold, raw: (p.clone(), q.clone()), flipped })
    }

    /// Order of the first homology; 0 for `S1xS2` (infinite).
    pub fn order(&self) -> BigInt {
        match self {
            Boundary3Manifold::S3 => BigInt::one(),
            Boundary3Manifold::S1xS2 => BigInt::zero(),
            Boundary3Manifold::Lens { p, .. } => p.clone(),
        }
    }

    /// `-L(p, q) = L(p, p - q)`; `S3` and `S1xS2` are fixed.
    pub fn reverse(&self) -> Self {
        match self {
            Boundary3Manifold::Lens { p, q } => Boundary3Manifold::Lens { p: p.clone(), q: p - q },
            other => other.clone(),
        }
    }

    pub fn equiv(&self, other: &Self, orientation: Orientation) -> bool {
        match (self, other) {
            (Boundary3Manifold::S3, Boundary3Manifold::S3) => true,
            (Boundary3Manifold::S1xS2, Boundary3Manifold::S1xS2) => true,
            (Boundary3Manifold::Lens { p, q }, Boundary3Manifold::Lens { p: p2, q: q2 }) => {
                if p != p2 {
                    return false;
                }
                let oriented = |a: &BigInt| a == q2 || (a * q2).mod_floor(p).is_one();
                match orientation {
                    Orientation::Oriented => oriented(q),
                    Orientation::Unoriented => oriented(q) || oriented(&(p - q)),
                }
            }
            _ => false,
        }
    }
}

impl fmt::Display for Boundary3Manifold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Boundary3Manifold::S3 => f.write_str("S3"),
            Boundary3Manifold::S1xS2 => f.write_str("S1xS2"),
            Boundary3Manifold::Lens { p, q } => write!(f, "L({p},{q})"),
        }
    }
}

impl Serialize for Boundary3Manifold {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Oriented,
    Unoriented,
}

pub fn lens_reverse(b: &Boundary3Manifold) -> Boundary3Manifold {
    b.reverse()
}

pub fn lens_equiv(a: &Boundary3Manifold, b: &Boundary3Manifold, orientation: Orientation) -> bool {
    a.equiv(b, orientation)
}

/// Boundary of the linear plumbing with the given weights, with the
/// normalization record.
pub fn chain_boundary_detailed(weights: &[i64]) -> NormalizedBoundary {
    let negated: Vec<i64> = weights.iter().map(|w| -w).collect();
    let (p, q) = neg_cf_eval(&negated);
    Boundary3Manifold::from_pair(&p, &q).expect("continued fraction pairs are coprime")
}

pub fn chain_boundary(weights: &[i64]) -> Boundary3Manifold {
    chain_boundary_detailed(weights).manifold
}

/// Which orientations of `a` are homeomorphic to `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct OrientationRelation {
    pub same: bool,
    pub reversed: bool,
}

impl OrientationRelation {
    pub fn between(a: &Boundary3Manifold, b: &Boundary3Manifold) -> Self {
        Self {
            same: a.equiv(b, Orientation::Oriented),
            reversed: a.reverse().equiv(b, Orientation::Oriented),
        }
    }

    pub fn unoriented(&self) -> bool {
        self.same || self.reversed
    }
}

impl fmt::Display for OrientationRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match (self.same, self.reversed) {
            (true, true) => "both",
            (true, false) => "same",
            (false, true) => "reversed",
            (false, false) => "none",
        })
    }
}
