//! Kirby calculus at the level of linking matrices.
//!
//! A [`FramedPresentation`] records dotted circles (1-handles) and framed
//! 2-handles through their linking numbers only. Band choices and isotopies
//! carry no data here; every move is an integral change of basis.

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::families::{self, FamilyError};
use crate::matrix::SymIntMatrix;
use crate::report::{Check, VerificationReport};
use crate::snf::AbelianGroup;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KirbyError {
    #[error("cannot slide two-handle {0} over itself")]
    SelfSlide(usize),
    #[error("two-handle index {0} out of range")]
    NoTwoHandle(usize),
    #[error("one-handle index {0} out of range")]
    NoOneHandle(usize),
    #[error("no label {0:?}")]
    UnknownLabel(String),
    #[error("two-handle {handle} links one-handle {one_handle} {linking} times; cancellation needs +-1")]
    NotCancelling { handle: usize, one_handle: usize, linking: i64 },
    #[error("two-handle {handle} has framing {framing}; blow-down needs +-1")]
    NotExceptional { handle: usize, framing: i64 },
    #[error("two-handle {0} links a one-handle and cannot be blown down")]
    LinksOneHandle(usize),
    #[error("linking data overflowed i64")]
    Overflow,
    #[error("inconsistent dimensions: {0}")]
    Shape(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// 1-handles and framed 2-handles described by linking data.
///
/// `framing[i][i]` is the framing of 2-handle `i`, `framing[i][j]` the linking
/// number of 2-handles `i` and `j`, and `linking[i][u]` the linking number of
/// 2-handle `i` with dotted circle `u`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FramedPresentation {
    pub one_handles: Vec<String>,
    pub two_handles: Vec<String>,
    #[serde(rename = "F")]
    pub framing: SymIntMatrix,
    #[serde(rename = "L")]
    pub linking: Vec<Vec<i64>>,
}

fn mul(a: i64, b: i64) -> Result<i64, KirbyError> {
    a.checked_mul(b).ok_or(KirbyError::Overflow)
}

fn add(a: i64, b: i64) -> Result<i64, KirbyError> {
    a.checked_add(b).ok_or(KirbyError::Overflow)
}

impl FramedPresentation {
    pub fn new(
        one_handles: Vec<String>,
        two_handles: Vec<String>,
        framing: SymIntMatrix,
        linking: Vec<Vec<i64>>,
    ) -> Result<Self, KirbyError> {
        if framing.dim() != two_handles.len() {
            return Err(KirbyError::Shape(format!(
                "F is {0}x{0} for {1} two-handles",
                framing.dim(),
                two_handles.len()
            )));
        }
        if linking.len() != two_handles.len()
            || linking.iter().any(|r| r.len() != one_handles.len())
        {
            return Err(KirbyError::Shape(format!(
                "L must be {}x{}",
                two_handles.len(),
                one_handles.len()
            )));
        }
        Ok(Self { one_handles, two_handles, framing, linking })
    }

    pub fn empty() -> Self {
        Self {
            one_handles: Vec::new(),
            two_handles: Vec::new(),
            framing: SymIntMatrix::empty(),
            linking: Vec::new(),
        }
    }

    pub fn two_handle(&self, label: &str) -> Result<usize, KirbyError> {
        self.two_handles
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| KirbyError::UnknownLabel(label.to_string()))
    }

    pub fn one_handle(&self, label: &str) -> Result<usize, KirbyError> {
        self.one_handles
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| KirbyError::UnknownLabel(label.to_string()))
    }

    fn check_two(&self, i: usize) -> Result<(), KirbyError> {
        if i < self.two_handles.len() {
            Ok(())
        } else {
            Err(KirbyError::NoTwoHandle(i))
        }
    }

    /// Slides 2-handle `i` over 2-handle `j`, `c` times (negative `c`
    /// reverses the band orientation).
    pub fn slide(&self, i: usize, j: usize, c: i64) -> Result<Self, KirbyError> {
        self.check_two(i)?;
        self.check_two(j)?;
        if i == j {
            return Err(KirbyError::SelfSlide(i));
        }
        let f = &self.framing;
        let mut out = self.clone();
        // f(i) + c^2 f(j) + 2c lk(i, j)
        let fii = add(
            add(f.get(i, i), mul(mul(c, c)?, f.get(j, j))?)?,
            mul(mul(2, c)?, f.get(i, j))?,
        )?;
        for k in 0..f.dim() {
            if k != i {
                out.framing.set(i, k, add(f.get(i, k), mul(c, f.get(j, k))?)?);
            }
        }
        out.framing.set(i, i, fii);
        for u in 0..self.one_handles.len() {
            out.linking[i][u] = add(self.linking[i][u], mul(c, self.linking[j][u])?)?;
        }
        Ok(out)
    }

    /// Cancels 2-handle `i` against dotted circle `u`.
    ///
    /// Every other 2-handle passing through `u` is first slid over `i` until
    /// it no longer links `u`.
    pub fn cancel(&self, i: usize, u: usize) -> Result<Self, KirbyError> {
        self.check_two(i)?;
        if u >= self.one_handles.len() {
            return Err(KirbyError::NoOneHandle(u));
        }
        let lk = self.linking[i][u];
        if lk.abs() != 1 {
            return Err(KirbyError::NotCancelling { handle: i, one_handle: u, linking: lk });
        }
        let mut pres = self.clone();
        for k in 0..pres.two_handles.len() {
            if k != i && pres.linking[k][u] != 0 {
                let c = -mul(pres.linking[k][u], lk)?;
                pres = pres.slide(k, i, c)?;
            }
        }
        pres.remove_two_handle(i);
        pres.one_handles.remove(u);
        for row in pres.linking.iter_mut() {
            row.remove(u);
        }
        Ok(pres)
    }

    /// Adds an unlinked 2-handle with framing `sign` (`+1` or `-1`).
    pub fn blow_up(&self, sign: i64) -> Self {
        assert!(sign == 1 || sign == -1, "blow-up framing must be +-1");
        let n = self.two_handles.len();
        let mut framing = SymIntMatrix::zeros(n + 1);
        for a in 0..n {
            for b in a..n {
                framing.set(a, b, self.framing.get(a, b));
            }
        }
        framing.set(n, n, sign);
        let mut label = format!("e{n}");
        while self.two_handles.contains(&label) {
            label.push('\'');
        }
        let mut out = self.clone();
        out.framing = framing;
        out.two_handles.push(label);
        out.linking.push(vec![0; self.one_handles.len()]);
        out
    }

    /// Removes a `+-1`-framed 2-handle after sliding the other 2-handles off it.
    pub fn blow_down(&self, i: usize) -> Result<Self, KirbyError> {
        self.check_two(i)?;
        let eps = self.framing.get(i, i);
        if eps.abs() != 1 {
            return Err(KirbyError::NotExceptional { handle: i, framing: eps });
        }
        if self.linking[i].iter().any(|&l| l != 0) {
            return Err(KirbyError::LinksOneHandle(i));
        }
        let mut pres = self.clone();
        for k in 0..pres.two_handles.len() {
            let lk = pres.framing.get(k, i);
            if k != i && lk != 0 {
                pres = pres.slide(k, i, -mul(lk, eps)?)?;
            }
        }
        pres.remove_two_handle(i);
        Ok(pres)
    }

    fn remove_two_handle(&mut self, i: usize) {
        let n = self.two_handles.len();
        let keep: Vec<usize> = (0..n).filter(|&k| k != i).collect();
        let mut framing = SymIntMatrix::zeros(n - 1);
        for (a, &ka) in keep.iter().enumerate() {
            for (b, &kb) in keep.iter().enumerate().skip(a) {
                framing.set(a, b, self.framing.get(ka, kb));
            }
        }
        self.framing = framing;
        self.two_handles.remove(i);
        self.linking.remove(i);
    }

    /// First homology of the 4-manifold: `Z^{1-handles}` modulo the rows of `L`.
    pub fn first_homology(&self) -> AbelianGroup {
        let rows: Vec<Vec<BigInt>> = self
            .linking
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        AbelianGroup::from_relations(&rows, self.one_handles.len())
    }

    /// The symmetric block matrix `[[F, L], [L^T, 0]]`, treating each dotted
    /// circle as a 0-framed unknot.
    pub fn block_matrix(&self) -> SymIntMatrix {
        let n2 = self.two_handles.len();
        let n1 = self.one_handles.len();
        let mut q = SymIntMatrix::zeros(n2 + n1);
        for a in 0..n2 {
            for b in a..n2 {
                q.set(a, b, self.framing.get(a, b));
            }
            for u in 0..n1 {
                q.set(a, n2 + u, self.linking[a][u]);
            }
        }
        q
    }

    /// Cokernel of the block matrix, i.e. the first homology of the boundary.
    pub fn boundary_homology(&self) -> AbelianGroup {
        let q = self.block_matrix();
        AbelianGroup::from_relations(&q.to_big_rows(), q.dim())
    }

    /// Restriction to the listed 2-handles (all 1-handles kept).
    pub fn sub_presentation(&self, keep: &[usize]) -> Result<Self, KirbyError> {
        for &k in keep {
            self.check_two(k)?;
        }
        let mut framing = SymIntMatrix::zeros(keep.len());
        for (a, &ka) in keep.iter().enumerate() {
            for (b, &kb) in keep.iter().enumerate().skip(a) {
                framing.set(a, b, self.framing.get(ka, kb));
            }
        }
        Ok(Self {
            one_handles: self.one_handles.clone(),
            two_handles: keep.iter().map(|&k| self.two_handles[k].clone()).collect(),
            framing,
            linking: keep.iter().map(|&k| self.linking[k].clone()).collect(),
        })
    }

    fn summary(&self) -> String {
        format!(
            "1-handles {:?}, 2-handles {:?}, F={:?}, L={:?}",
            self.one_handles,
            self.two_handles,
            self.framing.rows(),
            self.linking
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Move {
    Start,
    Slide,
    Cancel,
    BlowUp,
    BlowDown,
}

/// One audited step: the move, its arguments and the presentation after it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceStep {
    #[serde(rename = "move")]
    pub kind: Move,
    pub args: serde_json::Value,
    #[serde(rename = "F")]
    pub framing: Vec<Vec<i64>>,
    #[serde(rename = "L")]
    pub linking: Vec<Vec<i64>>,
}

impl TraceStep {
    pub fn record(kind: Move, args: serde_json::Value, pres: &FramedPresentation) -> Self {
        Self { kind, args, framing: pres.framing.rows(), linking: pres.linking.clone() }
    }
}

/// The Figure-4-style diagram: dotted circle `x`, 2-handles `a` (framing
/// `p - 1`, through `x` `p` times) and `b` (framing `m`, through `x` once
/// with the opposite sign), with `lk(a, b) = -1`.
pub fn presentation_figure4(p: i64, m: i64) -> Result<FramedPresentation, KirbyError> {
    families::check_p(p)?;
    FramedPresentation::new(
        vec!["x".into()],
        vec!["a".into(), "b".into()],
        SymIntMatrix::from_rows(vec![vec![p - 1, -1], vec![-1, m]]).expect("symmetric"),
        vec![vec![p], vec![-1]],
    )
}

/// The rational ball part `(x; a)` of [`presentation_figure4`].
pub fn bp_presentation(p: i64) -> Result<FramedPresentation, KirbyError> {
    presentation_figure4(p, 0)?.sub_presentation(&[0])
}

/// Framing and framing-matrix checks for one executed slide, recomputed
/// from the pre-slide data by an explicit change of basis.
pub fn slide_is_consistent(
    before: &FramedPresentation,
    after: &FramedPresentation,
    i: usize,
    j: usize,
    c: i64,
) -> bool {
    let n = before.two_handles.len();
    let mut basis: Vec<Vec<i64>> =
        (0..n).map(|r| (0..n).map(|s| i64::from(r == s)).collect()).collect();
    basis[j][i] = c;
    let expected_f = before.framing.congruent(&basis);
    let identity = before.framing.get(i, i) as i128
        + (c as i128).pow(2) * before.framing.get(j, j) as i128
        + 2 * c as i128 * before.framing.get(i, j) as i128;
    let linking_ok = (0..before.one_handles.len()).all(|u| {
        after.linking[i][u] as i128
            == before.linking[i][u] as i128 + c as i128 * before.linking[j][u] as i128
    });
    expected_f.as_ref() == Some(&after.framing)
        && identity == after.framing.get(i, i) as i128
        && linking_ok
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReplayOutcome {
    pub report: VerificationReport,
    pub trace: Vec<TraceStep>,
}

/// Replays the slide-and-cancel sequence turning the Figure-4 diagram into
/// a single `(p^2 m - p - 1)`-framed 2-handle, checking each step.
pub fn replay_theorem_1_2(p: i64, m: i64) -> Result<ReplayOutcome, KirbyError> {
    let target = families::framing(p, m)?;
    let start = presentation_figure4(p, m)?;
    let (a, b, x) = (start.two_handle("a")?, start.two_handle("b")?, start.one_handle("x")?);
    let mut report = VerificationReport::new(p, m);
    let mut trace = vec![TraceStep::record(Move::Start, serde_json::json!({}), &start)];

    let ball = bp_presentation(p)?.first_homology();
    let whole = start.first_homology();
    report.push(Check::new(
        "ball-homology",
        ball.order() == Some(BigInt::from(p)) && whole.is_trivial(),
        format!("H1(x; a) = {ball}, H1(x; a, b) = {whole}; {}", start.summary()),
    ));

    let slid = start.slide(a, b, p)?;
    trace.push(TraceStep::record(Move::Slide, serde_json::json!({"i": "a", "j": "b", "c": p}), &slid));
    report.push(Check::new(
        "slide",
        slide_is_consistent(&start, &slid, a, b, p) && slid.linking[a][x] == 0,
        format!("a over b, {p} times; lk(a, x) = {}; {}", slid.linking[a][x], slid.summary()),
    ));

    let cancelled = slid.cancel(b, x)?;
    trace.push(TraceStep::record(Move::Cancel, serde_json::json!({"i": "b", "u": "x"}), &cancelled));
    let single = cancelled.one_handles.is_empty() && cancelled.two_handles.len() == 1;
    report.push(Check::new(
        "cancel",
        single,
        format!("cancel b against x; {}", cancelled.summary()),
    ));

    let model = families::handlebody(p, m)?.intersection_form();
    report.push(Check::new(
        "final-framing",
        single && cancelled.framing == model,
        format!("final F = {:?}, expected [[{target}]]", cancelled.framing.rows()),
    ));

    let groups = [start.boundary_homology(), slid.boundary_homology(), cancelled.boundary_homology()];
    report.push(Check::new(
        "boundary-homology",
        groups.windows(2).all(|w| w[0] == w[1])
            && model.determinant() == cancelled.framing.determinant(),
        format!("H1 of boundary along the trace: {}, {}, {}", groups[0], groups[1], groups[2]),
    ));

    Ok(ReplayOutcome { report, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn pres(f: Vec<Vec<i64>>, l: Vec<Vec<i64>>) -> FramedPresentation {
        let n2 = f.len();
        let n1 = l.first().map_or(0, Vec::len);
        FramedPresentation::new(
            (0..n1).map(|u| format!("x{u}")).collect(),
            (0..n2).map(|k| format!("h{k}")).collect(),
            SymIntMatrix::from_rows(f).unwrap(),
            l,
        )
        .unwrap()
    }

    #[test]
    fn slide_inverse() {
        let p = presentation_figure4(3, 1).unwrap();
        let back = p.slide(0, 1, 4).unwrap().slide(0, 1, -4).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn slide_framing_update() {
        for (p, m) in [(2, 1), (3, 1), (4, 2), (5, -3)] {
            let pres = presentation_figure4(p, m).unwrap();
            let slid = pres.slide(0, 1, p).unwrap();
            assert_eq!(slid.framing.get(0, 0), p * p * m - p - 1);
            assert!(slide_is_consistent(&pres, &slid, 0, 1, p));
        }
    }

    #[test]
    fn slide_rejects_self() {
        let p = presentation_figure4(3, 1).unwrap();
        assert_eq!(p.slide(1, 1, 1), Err(KirbyError::SelfSlide(1)));
        assert_eq!(p.slide(0, 5, 1), Err(KirbyError::NoTwoHandle(5)));
    }

    #[test]
    fn slide_preserves_block_determinant() {
        let p = presentation_figure4(4, -2).unwrap();
        let before = p.block_matrix().determinant().abs();
        for c in [-3, -1, 2, 5] {
            assert_eq!(p.slide(1, 0, c).unwrap().block_matrix().determinant().abs(), before);
        }
    }

    #[test]
    fn minimal_cancelling_pair() {
        let p = pres(vec![vec![7]], vec![vec![1]]);
        assert_eq!(p.cancel(0, 0).unwrap(), FramedPresentation::empty());
    }

    #[test]
    fn cancel_requires_unit_linking() {
        let p = presentation_figure4(3, 1).unwrap();
        assert_eq!(
            p.cancel(0, 0),
            Err(KirbyError::NotCancelling { handle: 0, one_handle: 0, linking: 3 })
        );
    }

    #[test]
    fn cancel_auto_clears_other_handles() {
        // without the explicit slide, a must first be slid off x
        let p = presentation_figure4(3, 1).unwrap();
        let direct = p.cancel(1, 0).unwrap();
        let replayed = p.slide(0, 1, 3).unwrap().cancel(1, 0).unwrap();
        assert_eq!(direct, replayed);
        assert_eq!(direct.framing.rows(), vec![vec![5]]);
    }

    #[test]
    fn blow_up_down_round_trip() {
        let p = presentation_figure4(3, 1).unwrap();
        for sign in [1, -1] {
            let up = p.blow_up(sign);
            assert_eq!(up.two_handles.len(), 3);
            assert_eq!(up.blow_down(2).unwrap(), p);
        }
    }

    #[test]
    fn blow_up_changes_b2_and_signature() {
        let base = pres(vec![vec![-2, 1], vec![1, -3]], vec![vec![], vec![]]);
        let before = crate::forms::invariants(&base.framing);
        for sign in [1, -1] {
            let after = crate::forms::invariants(&base.blow_up(sign).framing);
            assert_eq!(after.b2, before.b2 + 1);
            assert_eq!(after.signature, before.signature + sign);
        }
    }

    #[test]
    fn blow_down_rejects_non_exceptional() {
        let p = pres(vec![vec![-2]], vec![vec![]]);
        assert_eq!(p.blow_down(0), Err(KirbyError::NotExceptional { handle: 0, framing: -2 }));
    }

    #[test]
    fn blow_down_of_linked_handle_shifts_framings() {
        // -1 unknot linking a 0-framed handle twice: framing becomes 0 + 4
        let p = pres(vec![vec![0, 2], vec![2, -1]], vec![vec![], vec![]]);
        let down = p.blow_down(1).unwrap();
        assert_eq!(down.framing.rows(), vec![vec![4]]);
    }

    #[test]
    fn figure4_instance() {
        let p = presentation_figure4(3, 1).unwrap();
        assert_eq!(p.framing.rows(), vec![vec![2, -1], vec![-1, 1]]);
        assert_eq!(p.linking, vec![vec![3], vec![-1]]);
        assert!(p.first_homology().is_trivial());
        for q in 2..=7 {
            let ball = bp_presentation(q).unwrap().first_homology();
            assert_eq!(ball.order(), Some(BigInt::from(q)));
        }
        assert!(presentation_figure4(1, 0).is_err());
    }

    #[test]
    fn replay_examples() {
        for (p, m, f) in [(3, 1, 5), (2, 1, 1), (4, 2, 27)] {
            let out = replay_theorem_1_2(p, m).unwrap();
            assert!(out.report.passed(), "{:?}", out.report);
            assert_eq!(out.trace.last().unwrap().framing, vec![vec![f]]);
            assert!(out.trace.last().unwrap().linking.iter().all(Vec::is_empty));
        }
    }

    #[test]
    fn trace_json_shape() {
        let out = replay_theorem_1_2(3, 1).unwrap();
        let v = serde_json::to_value(&out.trace).unwrap();
        assert_eq!(v[1]["move"], "slide");
        assert_eq!(v[2]["move"], "cancel");
        assert_eq!(v[2]["F"], serde_json::json!([[5]]));
        assert_eq!(v[0]["L"], serde_json::json!([[3], [-1]]));
    }
}
