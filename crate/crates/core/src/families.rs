//! The parametric objects around the rational blow-up of `B_p` in `M(p, m)`.
//!
//! `M(p, m)` is modeled by its 1x1 intersection form `[p^2 m - p - 1]`
//! together with the torus knot its attaching circle is isotopic to.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use serde::Serialize;
use thiserror::Error;

use crate::forms::{invariants, InvariantReport};
use crate::graph::PlumbingGraph;
use crate::kirby;
use crate::lens::{chain_boundary_detailed, Boundary3Manifold, NormalizedBoundary, OrientationRelation};
use crate::matrix::SymIntMatrix;
use crate::report::{Check, VerificationReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("p must be at least 2, got {0}")]
    InvalidP(i64),
    #[error("parameters (p, m) = ({0}, {1}) overflow i64 arithmetic")]
    Overflow(i64, i64),
    #[error("empty m range: m_min = {0} > m_max = {1}")]
    EmptyRange(i64, i64),
}

pub(crate) fn check_p(p: i64) -> Result<(), FamilyError> {
    if p < 2 {
        Err(FamilyError::InvalidP(p))
    } else {
        Ok(())
    }
}

/// The torus knot `T(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TorusKnot {
    pub a: i64,
    pub b: i64,
}

impl TorusKnot {
    pub fn new(a: i64, b: i64) -> Option<Self> {
        if a != 0 && b != 0 && a.unsigned_abs().gcd(&b.unsigned_abs()) != 1 {
            return None;
        }
        Some(Self { a, b })
    }

    pub fn is_unknot(&self) -> bool {
        self.a.abs() <= 1 || self.b.abs() <= 1
    }
}

impl fmt::Display for TorusKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({},{})", self.a, self.b)?;
        if self.is_unknot() {
            f.write_str(" (unknot)")?;
        }
        Ok(())
    }
}

/// `K(p, m)` is isotopic to `T(p, mp - 1)`.
pub fn knot_descriptor(p: i64, m: i64) -> Result<TorusKnot, FamilyError> {
    check_p(p)?;
    let b = m
        .checked_mul(p)
        .and_then(|v| v.checked_sub(1))
        .ok_or(FamilyError::Overflow(p, m))?;
    // gcd(p, mp - 1) = 1 always
    Ok(TorusKnot::new(p, b).expect("p and mp - 1 are coprime"))
}

/// `p^2 m - p - 1`, the framing of the 2-handle of `M(p, m)`.
pub fn framing(p: i64, m: i64) -> Result<i64, FamilyError> {
    check_p(p)?;
    p.checked_mul(p)
        .and_then(|v| v.checked_mul(m))
        .and_then(|v| v.checked_sub(p))
        .and_then(|v| v.checked_sub(1))
        .ok_or(FamilyError::Overflow(p, m))
}

/// A single 2-handle attached to `D^4` along a torus knot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HandlebodyModel {
    pub knot: TorusKnot,
    pub framing: i64,
}

impl HandlebodyModel {
    pub fn intersection_form(&self) -> SymIntMatrix {
        SymIntMatrix::diagonal(&[self.framing])
    }
}

pub fn handlebody(p: i64, m: i64) -> Result<HandlebodyModel, FamilyError> {
    Ok(HandlebodyModel { knot: knot_descriptor(p, m)?, framing: framing(p, m)? })
}

fn cp_weights(p: i64) -> Result<Vec<i64>, FamilyError> {
    check_p(p)?;
    let len = usize::try_from(p - 1).map_err(|_| FamilyError::Overflow(p, 0))?;
    let mut w = vec![-2; len];
    w[0] = -(p + 2);
    Ok(w)
}

/// The linear plumbing `C_p`: weights `-(p+2), -2, .., -2` on `p - 1` vertices.
pub fn cp_chain(p: i64) -> Result<PlumbingGraph, FamilyError> {
    Ok(PlumbingGraph::linear_chain(&cp_weights(p)?))
}

/// The plumbing obtained by rationally blowing up `B_p` in `M(p, m)`:
/// `C_p` with one more vertex of weight `m - 1` at the `-2` end.
pub fn blowup_chain(p: i64, m: i64) -> Result<PlumbingGraph, FamilyError> {
    let mut w = cp_weights(p)?;
    w.push(m.checked_sub(1).ok_or(FamilyError::Overflow(p, m))?);
    Ok(PlumbingGraph::linear_chain(&w))
}

/// `L(p(mp - 1) - 1, p^2)`, normalized like every other signed pair.
pub fn mpm_boundary_detailed(p: i64, m: i64) -> Result<NormalizedBoundary, FamilyError> {
    check_p(p)?;
    let (bp, bm) = (BigInt::from(p), BigInt::from(m));
    let order = &bp * (&bm * &bp - 1) - 1;
    let q = &bp * &bp;
    Ok(Boundary3Manifold::from_pair(&order, &q).expect("gcd(p(mp-1)-1, p^2) = 1"))
}

pub fn mpm_boundary(p: i64, m: i64) -> Result<Boundary3Manifold, FamilyError> {
    Ok(mpm_boundary_detailed(p, m)?.manifold)
}

/// The shared boundary `∂C_p = ∂B_p`, read off the `C_p` chain.
pub fn bp_boundary(p: i64) -> Result<Boundary3Manifold, FamilyError> {
    Ok(chain_boundary_detailed(&cp_weights(p)?).manifold)
}

/// `|H_1(B_p)|`, from the Smith form of the ball's 2-handle relation.
pub fn bp_first_homology_order(p: i64) -> Result<BigInt, FamilyError> {
    let ball = kirby::bp_presentation(p).map_err(|e| match e {
        kirby::KirbyError::Family(f) => f,
        _ => FamilyError::InvalidP(p),
    })?;
    Ok(ball.first_homology().order().expect("B_p has finite first homology"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    BlowDown,
    BlowUp,
}

/// Change in `(b2, signature, b2+, euler)` under a rational blow-down or blow-up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct InvariantDelta {
    pub d_b2: i64,
    pub d_signature: i64,
    pub d_b2_plus: i64,
    pub d_euler: i64,
}

impl InvariantDelta {
    pub fn between(before: &InvariantReport, after: &InvariantReport) -> Self {
        Self {
            d_b2: after.b2 as i64 - before.b2 as i64,
            d_signature: after.signature - before.signature,
            d_b2_plus: after.b2_plus as i64 - before.b2_plus as i64,
            d_euler: after.euler - before.euler,
        }
    }
}

impl std::ops::Neg for InvariantDelta {
    type Output = Self;

    fn neg(self) -> Self {
        Self {
            d_b2: -self.d_b2,
            d_signature: -self.d_signature,
            d_b2_plus: -self.d_b2_plus,
            d_euler: -self.d_euler,
        }
    }
}

impl std::ops::Add for InvariantDelta {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        Self {
            d_b2: self.d_b2 + o.d_b2,
            d_signature: self.d_signature + o.d_signature,
            d_b2_plus: self.d_b2_plus + o.d_b2_plus,
            d_euler: self.d_euler + o.d_euler,
        }
    }
}

pub fn blowdown_delta(p: i64, direction: Direction) -> Result<InvariantDelta, FamilyError> {
    check_p(p)?;
    let k = p - 1;
    let down = InvariantDelta { d_b2: -k, d_signature: k, d_b2_plus: 0, d_euler: -k };
    Ok(match direction {
        Direction::BlowDown => down,
        Direction::BlowUp => -down,
    })
}

/// Both sides of the boundary identity for the blown-up plumbing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryComparison {
    pub chain: NormalizedBoundary,
    pub handlebody: NormalizedBoundary,
    pub relation: OrientationRelation,
}

pub fn compare_blowup_boundaries(p: i64, m: i64) -> Result<BoundaryComparison, FamilyError> {
    let weights = blowup_chain(p, m)?.weights();
    let chain = chain_boundary_detailed(&weights);
    let handlebody = mpm_boundary_detailed(p, m)?;
    let relation = OrientationRelation::between(&chain.manifold, &handlebody.manifold);
    Ok(BoundaryComparison { chain, handlebody, relation })
}

/// Invariant-level certificate that the rational blow-up of `M(p, m)` is the
/// plumbing `blowup_chain(p, m)`.
///
/// Checks, in order: `determinant`, `boundary`, `bookkeeping`.
pub fn verify_blowup_theorem(p: i64, m: i64) -> Result<VerificationReport, FamilyError> {
    let f = framing(p, m)?;
    let graph = blowup_chain(p, m)?;
    let chain_form = invariants(&graph.intersection_matrix());
    let model_form = invariants(&handlebody(p, m)?.intersection_form());
    let mut report = VerificationReport::new(p, m);

    let det = &chain_form.determinant;
    report.push(Check::new(
        "determinant",
        det.abs() == BigInt::from(f).abs(),
        format!("det {det} vs framing {f}"),
    ));

    let cmp = compare_blowup_boundaries(p, m)?;
    report.push(Check::new(
        "boundary",
        cmp.relation.unoriented(),
        format!(
            "chain {} (raw {}/{}{}) vs handlebody {} (raw {}/{}{}); oriented relation: {}",
            cmp.chain.manifold,
            cmp.chain.raw.0,
            cmp.chain.raw.1,
            if cmp.chain.flipped { ", flipped" } else { "" },
            cmp.handlebody.manifold,
            cmp.handlebody.raw.0,
            cmp.handlebody.raw.1,
            if cmp.handlebody.flipped { ", flipped" } else { "" },
            cmp.relation,
        ),
    ));

    if f == 0 || chain_form.b2_zero > 0 {
        report.push(Check::skipped("bookkeeping", "degenerate form; signature bookkeeping not asserted"));
    } else {
        let observed = InvariantDelta::between(&model_form, &chain_form);
        let expected = blowdown_delta(p, Direction::BlowUp)?;
        report.push(Check::new(
            "bookkeeping",
            observed == expected,
            format!(
                "sigma {} vs {}, b2+ {} vs {}; delta (b2, sigma, b2+, euler) = ({}, {}, {}, {}), expected ({}, {}, {}, {})",
                chain_form.signature,
                model_form.signature,
                chain_form.b2_plus,
                model_form.b2_plus,
                observed.d_b2,
                observed.d_signature,
                observed.d_b2_plus,
                observed.d_euler,
                expected.d_b2,
                expected.d_signature,
                expected.d_b2_plus,
                expected.d_euler,
            ),
        ));
    }
    Ok(report)
}
