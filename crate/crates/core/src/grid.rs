//! Parameter grids and order-preserving fan-out.
//!
//! With the `parallel` feature, [`map_ordered`] runs on the rayon pool when
//! asked to; otherwise it is a plain sequential map. Either way results come
//! back in input order, so grid output does not depend on scheduling.

use serde::Serialize;

use crate::families::{self, FamilyError};
use crate::kirby::{self, KirbyError, ReplayOutcome};
use crate::lattice::{self, NormSearchResult};
use crate::report::{Check, VerificationReport};

pub fn map_ordered<T, R, F>(items: &[T], parallel: bool, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = parallel;
    items.iter().map(f).collect()
}

/// The rectangle `2 <= p <= p_max`, `m_min <= m <= m_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Grid {
    pub p_min: i64,
    pub p_max: i64,
    pub m_min: i64,
    pub m_max: i64,
}

impl Grid {
    pub fn new(p_max: i64, m_min: i64, m_max: i64) -> Result<Self, FamilyError> {
        Self::with_p_range(2, p_max, m_min, m_max)
    }

    pub fn with_p_range(p_min: i64, p_max: i64, m_min: i64, m_max: i64) -> Result<Self, FamilyError> {
        if p_min < 2 {
            return Err(FamilyError::InvalidP(p_min));
        }
        if p_max < p_min {
            return Err(FamilyError::InvalidP(p_max));
        }
        if m_min > m_max {
            return Err(FamilyError::EmptyRange(m_min, m_max));
        }
        Ok(Self { p_min, p_max, m_min, m_max })
    }

    pub fn single(p: i64, m: i64) -> Result<Self, FamilyError> {
        Self::with_p_range(p, p, m, m)
    }

    /// Points in `(p, m)`-lexicographic order.
    pub fn points(&self) -> Vec<(i64, i64)> {
        (self.p_min..=self.p_max)
            .flat_map(|p| (self.m_min..=self.m_max).map(move |m| (p, m)))
            .collect()
    }
}

pub fn verify_blowup_grid(
    grid: &Grid,
    parallel: bool,
) -> Result<Vec<VerificationReport>, FamilyError> {
    map_ordered(&grid.points(), parallel, |&(p, m)| families::verify_blowup_theorem(p, m))
        .into_iter()
        .collect()
}

pub fn replay_grid(grid: &Grid, parallel: bool) -> Result<Vec<ReplayOutcome>, KirbyError> {
    map_ordered(&grid.points(), parallel, |&(p, m)| kirby::replay_theorem_1_2(p, m))
        .into_iter()
        .collect()
}

/// Which hypothesis of the no-(-1)-class statement applies at `(p, m)`.
fn corollary_branch(p: i64, m: i64) -> Option<&'static str> {
    if p % 2 == 0 && m % 2 != 0 {
        Some("even")
    } else if m - 1 <= -2 {
        Some("definite")
    } else {
        None
    }
}

/// Lattice-level check that the blown-up plumbing has no class of square -1
/// whenever `p` is even and `m` odd, or `m <= -1`.
pub fn verify_minus_one_classes(p: i64, m: i64, parallel: bool) -> Result<VerificationReport, FamilyError> {
    let graph = families::blowup_chain(p, m)?;
    let result = lattice::has_minus_one_class_with(&graph, parallel);
    let mut report = VerificationReport::new(p, m);
    let details = serde_json::to_string(&result).expect("serializable");
    let check = match corollary_branch(p, m) {
        Some("even") => Check::new("minus-one-class", result == NormSearchResult::NoneByEvenness, details),
        Some(_) => {
            let exhaustive = matches!(result, NormSearchResult::NoneByEnumeration { .. })
                || (result == NormSearchResult::NoneByEvenness);
            Check::new("minus-one-class", exhaustive, details)
        }
        None => Check::skipped("minus-one-class", format!("hypotheses do not apply; {details}")),
    };
    report.push(check);
    Ok(report)
}

pub fn verify_minus_one_grid(
    grid: &Grid,
    parallel: bool,
) -> Result<Vec<VerificationReport>, FamilyError> {
    // the per-point search is already small; fan out over points only
    map_ordered(&grid.points(), parallel, |&(p, m)| verify_minus_one_classes(p, m, false))
        .into_iter()
        .collect()
}
