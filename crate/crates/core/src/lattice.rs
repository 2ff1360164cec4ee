//! Evenness, definiteness and exhaustive search for vectors of a given norm.
//!
//! The search is a Fincke–Pohst enumeration driven by the exact rational
//! `L D L^T` decomposition of the (sign-corrected) form, so the coordinate
//! bounds are certificates rather than floating-point estimates.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::forms::{invariants, Definiteness};
use crate::graph::PlumbingGraph;
use crate::grid;
use crate::matrix::SymIntMatrix;

pub fn is_even(q: &SymIntMatrix) -> bool {
    q.diag().iter().all(|d| d % 2 == 0)
}

/// Pivots of `L D L^T` without row exchanges. Stops after the first
/// nonpositive pivot, so the result is a positivity certificate exactly when
/// it has full length and every entry is positive.
fn ldl_pivots(a: &SymIntMatrix) -> (Vec<BigRational>, Vec<Vec<BigRational>>) {
    let n = a.dim();
    let mut work: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| BigRational::from_integer(a.get(i, j).into())).collect())
        .collect();
    let mut lower = vec![vec![BigRational::zero(); n]; n];
    let mut pivots = Vec::with_capacity(n);
    for k in 0..n {
        let d = work[k][k].clone();
        pivots.push(d.clone());
        if !d.is_positive() {
            break;
        }
        for i in (k + 1)..n {
            lower[i][k] = &work[i][k] / &d;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = &lower[i][k] * &work[k][j];
                work[i][j] -= v;
            }
        }
    }
    (pivots, lower)
}

/// Whether `-q` is positive definite, with the exact pivots of `-q` as evidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegativeDefiniteness {
    pub holds: bool,
    pub pivots: Vec<BigRational>,
}

pub fn is_negative_definite(q: &SymIntMatrix) -> NegativeDefiniteness {
    let (pivots, _) = ldl_pivots(&negate(q));
    let holds = pivots.len() == q.dim() && pivots.iter().all(Signed::is_positive);
    NegativeDefiniteness { holds, pivots }
}

fn negate(q: &SymIntMatrix) -> SymIntMatrix {
    let n = q.dim();
    let mut out = SymIntMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            out.set(i, j, -q.get(i, j));
        }
    }
    out
}

fn serialize_rationals<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

/// Evidence that an enumeration was exhaustive: the positive pivots of the
/// definite form and the size of the search tree that was walked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchCertificate {
    pub target: i64,
    #[serde(serialize_with = "serialize_rationals")]
    pub pivots: Vec<BigRational>,
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum NormSearchResult {
    NoneByEvenness,
    NoneByEnumeration { certificate: SearchCertificate },
    Witness { vector: Vec<i64> },
    Inconclusive { reason: String },
}

impl NormSearchResult {
    pub fn label(&self) -> &'static str {
        match self {
            NormSearchResult::NoneByEvenness => "NoneByEvenness",
            NormSearchResult::NoneByEnumeration { .. } => "NoneByEnumeration",
            NormSearchResult::Witness { .. } => "Witness",
            NormSearchResult::Inconclusive { .. } => "Inconclusive",
        }
    }

    pub fn is_none(&self) -> bool {
        matches!(
            self,
            NormSearchResult::NoneByEvenness | NormSearchResult::NoneByEnumeration { .. }
        )
    }
}

/// All vectors of a definite form with a given norm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub vectors: Vec<Vec<i64>>,
    pub certificate: SearchCertificate,
}

struct Search<'a> {
    lower: &'a [Vec<BigRational>],
    pivots: &'a [BigRational],
}

impl Search<'_> {
    /// Integers `x` with `d (x - c)^2 <= budget`.
    fn candidates(&self, i: usize, coords: &[i64], budget: &BigRational) -> Vec<(i64, BigRational)> {
        let n = self.pivots.len();
        let mut center = BigRational::zero();
        for j in (i + 1)..n {
            center -= &self.lower[j][i] * BigInt::from(coords[j]);
        }
        let d = &self.pivots[i];
        let radius = (budget / d).floor().to_integer().sqrt() + 1;
        let lo = center.floor().to_integer() - &radius;
        let hi = center.ceil().to_integer() + &radius;
        let lo = i64::try_from(lo).expect("search box exceeds i64");
        let hi = i64::try_from(hi).expect("search box exceeds i64");
        (lo..=hi)
            .filter_map(|x| {
                let off = BigRational::from_integer(x.into()) - &center;
                let cost = d * &off * &off;
                (cost <= *budget).then(|| (x, budget - cost))
            })
            .collect()
    }

    fn walk(&self, i: usize, coords: &mut Vec<i64>, budget: BigRational, hits: &mut Vec<Vec<i64>>) -> u64 {
        let mut nodes = 1;
        for (x, rest) in self.candidates(i, coords, &budget) {
            coords[i] = x;
            if i == 0 {
                nodes += 1;
                if rest.is_zero() {
                    hits.push(coords.clone());
                }
            } else {
                nodes += self.walk(i - 1, coords, rest, hits);
            }
        }
        coords[i] = 0;
        nodes
    }
}

/// Exhaustive enumeration of `{v : v^T q v = target}` for a definite `q`
/// whose sign matches `target`. Returns `None` for indefinite or degenerate
/// forms and for a sign mismatch between form and target.
pub fn enumerate_norm(q: &SymIntMatrix, target: i64, parallel: bool) -> Option<Enumeration> {
    let n = q.dim();
    let a = match (target.signum(), invariants(q).definiteness) {
        (-1, Definiteness::NegativeDefinite) => negate(q),
        (1, Definiteness::PositiveDefinite) => q.clone(),
        _ => return None,
    };
    let (pivots, lower) = ldl_pivots(&a);
    if n == 0 {
        let certificate = SearchCertificate { target, pivots, nodes: 0 };
        return Some(Enumeration { vectors: Vec::new(), certificate });
    }
    debug_assert!(pivots.iter().all(Signed::is_positive));
    let budget = BigRational::from_integer(BigInt::from(target).abs());
    let search = Search { lower: &lower, pivots: &pivots };
    let top = n - 1;
    let first = search.candidates(top, &vec![0; n], &budget);
    let branches = grid::map_ordered(&first, parallel, |(x, rest)| {
        let mut coords = vec![0; n];
        coords[top] = *x;
        let mut hits = Vec::new();
        let nodes = if top == 0 {
            if rest.is_zero() {
                hits.push(coords.clone());
            }
            1
        } else {
            search.walk(top - 1, &mut coords, rest.clone(), &mut hits)
        };
        (hits, nodes)
    });
    let mut vectors = Vec::new();
    let mut nodes = 1;
    for (hits, count) in branches {
        vectors.extend(hits);
        nodes += count;
    }
    Some(Enumeration { vectors, certificate: SearchCertificate { target, pivots, nodes } })
}

pub fn vectors_of_norm_with(q: &SymIntMatrix, target: i64, parallel: bool) -> NormSearchResult {
    let definiteness = invariants(q).definiteness;
    if target == 0 && matches!(definiteness, Definiteness::NegativeDefinite | Definiteness::PositiveDefinite) {
        return NormSearchResult::Witness { vector: vec![0; q.dim()] };
    }
    if q.is_empty() {
        let certificate = SearchCertificate { target, pivots: Vec::new(), nodes: 0 };
        return NormSearchResult::NoneByEnumeration { certificate };
    }
    match definiteness {
        Definiteness::Indefinite | Definiteness::Degenerate => {
            return NormSearchResult::Inconclusive { reason: definiteness.to_string() };
        }
        Definiteness::NegativeDefinite if target > 0 => {
            let (pivots, _) = ldl_pivots(&negate(q));
            return NormSearchResult::NoneByEnumeration {
                certificate: SearchCertificate { target, pivots, nodes: 0 },
            };
        }
        Definiteness::PositiveDefinite if target < 0 => {
            let (pivots, _) = ldl_pivots(q);
            return NormSearchResult::NoneByEnumeration {
                certificate: SearchCertificate { target, pivots, nodes: 0 },
            };
        }
        _ => {}
    }
    let found = enumerate_norm(q, target, parallel).expect("definite form with matching sign");
    match found.vectors.into_iter().next() {
        Some(vector) => NormSearchResult::Witness { vector },
        None => NormSearchResult::NoneByEnumeration { certificate: found.certificate },
    }
}

pub fn vectors_of_norm(q: &SymIntMatrix, target: i64) -> NormSearchResult {
    vectors_of_norm_with(q, target, cfg!(feature = "parallel"))
}

/// Lattice-level test for a class of square `-1`: an even form has none, a
/// negative-definite form is searched exhaustively, anything else is
/// inconclusive.
pub fn has_minus_one_class(g: &PlumbingGraph) -> NormSearchResult {
    has_minus_one_class_with(g, cfg!(feature = "parallel"))
}

pub fn has_minus_one_class_with(g: &PlumbingGraph, parallel: bool) -> NormSearchResult {
    let q = g.intersection_matrix();
    if is_even(&q) {
        return NormSearchResult::NoneByEvenness;
    }
    if !is_negative_definite(&q).holds {
        return NormSearchResult::Inconclusive { reason: invariants(&q).definiteness.to_string() };
    }
    vectors_of_norm_with(&q, -1, parallel)
}
