//! Acceptance suite. Every criterion is exact: zero tolerance, integer
//! arithmetic throughout. Run with `--nocapture` to see one line per criterion.

mod common;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use plumb_core::families::compare_blowup_boundaries;
use plumb_core::kirby::{replay_theorem_1_2, FramedPresentation};
use plumb_core::lattice::{enumerate_norm, is_negative_definite};
use plumb_core::{
    blowup_chain, bp_first_homology_order, chain_boundary, cp_chain, framing, has_minus_one_class,
    hj_expand, invariants, lens_equiv, mpm_boundary, neg_cf_eval, vectors_of_norm,
    Boundary3Manifold, NormSearchResult, Orientation, PlumbingGraph, SymIntMatrix,
};

const P_RANGE: std::ops::RangeInclusive<i64> = 2..=12;
const M_RANGE: std::ops::RangeInclusive<i64> = -5..=5;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn grid() -> impl Iterator<Item = (i64, i64)> {
    P_RANGE.flat_map(|p| M_RANGE.map(move |m| (p, m)))
}

fn ac1_determinant_identity() -> Outcome {
    let mut count = 0;
    for (p, m) in grid() {
        let f = framing(p, m).unwrap();
        let det = blowup_chain(p, m).unwrap().intersection_matrix().determinant();
        ensure(det.abs() == BigInt::from(f).abs(), || format!("({p},{m}): det {det}, framing {f}"))?;
        count += 1;
    }
    for (p, m, want) in [(3, 1, 5), (2, 2, 5), (2, 1, 1)] {
        let det = blowup_chain(p, m).unwrap().intersection_matrix().determinant();
        ensure(det.abs() == BigInt::from(want), || format!("anchor ({p},{m}): |det| {det} != {want}"))?;
    }
    Ok(format!("{count} grid points, anchors (3,1)->5 (2,2)->5 (2,1)->1"))
}

fn ac2_boundary_identity() -> Outcome {
    let (mut all_same, mut all_reversed) = (true, true);
    let mut count = 0;
    for (p, m) in grid() {
        if p * (m * p - 1) - 1 == 0 {
            continue;
        }
        let cmp = compare_blowup_boundaries(p, m).unwrap();
        let chain = &cmp.chain.manifold;
        let target = mpm_boundary(p, m).unwrap();
        ensure(lens_equiv(chain, &target, Orientation::Unoriented), || {
            format!("({p},{m}): {chain} not homeomorphic to {target}")
        })?;
        all_same &= cmp.relation.same;
        all_reversed &= cmp.relation.reversed;
        count += 1;
    }
    let sign = match (all_same, all_reversed) {
        (true, _) => "same",
        (false, true) => "reversed",
        (false, false) => return Err("no single orientation sign works on the whole grid".into()),
    };
    Ok(format!("{count} points unoriented-equivalent; global oriented sign: {sign}"))
}

fn ac3_cp_boundary() -> Outcome {
    for p in P_RANGE {
        let b = chain_boundary(&cp_chain(p).unwrap().weights());
        let want = Boundary3Manifold::lens(p * p, p - 1).unwrap();
        ensure(b == want, || format!("p={p}: {b} != {want}"))?;
        let h = bp_first_homology_order(p).unwrap();
        ensure(&h * &h == b.order(), || format!("p={p}: |H1(B_p)|^2 = {} != {}", &h * &h, b.order()))?;
    }
    Ok("dC_p = L(p^2, p-1) and |H1(B_p)|^2 = p^2 for p = 2..12".into())
}

fn ac4_replay() -> Outcome {
    let mut slides = 0;
    for (p, m) in grid() {
        let out = replay_theorem_1_2(p, m).map_err(|e| format!("({p},{m}): {e}"))?;
        ensure(out.report.passed(), || format!("({p},{m}): {:?}", out.report))?;
        let f = framing(p, m).unwrap();
        let last = out.trace.last().unwrap();
        ensure(last.framing == vec![vec![f]] && last.linking.iter().all(Vec::is_empty), || {
            format!("({p},{m}): final F {:?}, L {:?}", last.framing, last.linking)
        })?;
        // framing identity recomputed from the recorded matrices
        for w in out.trace.windows(2) {
            if w[1].kind != plumb_core::kirby::Move::Slide {
                continue;
            }
            let c = w[1].args["c"].as_i64().unwrap();
            let (before, after) = (&w[0].framing, &w[1].framing);
            let expected = before[0][0] + c * c * before[1][1] + 2 * c * before[0][1];
            ensure(after[0][0] == expected, || {
                format!("({p},{m}): slide gave {} expected {expected}", after[0][0])
            })?;
            slides += 1;
        }
    }
    Ok(format!("121 replays end in [p^2m-p-1] with no 1-handles; {slides} slides re-verified"))
}

fn ac5_even_branch() -> Outcome {
    let mut count = 0;
    for p in (2..=10).step_by(2) {
        for m in (-5..=5i64).filter(|m| m % 2 != 0) {
            let r = has_minus_one_class(&blowup_chain(p, m).unwrap());
            ensure(r == NormSearchResult::NoneByEvenness, || format!("({p},{m}): {}", r.label()))?;
            count += 1;
        }
    }
    Ok(format!("{count} points NoneByEvenness"))
}

fn ac6_definite_branch() -> Outcome {
    let mut count = 0;
    for p in 2..=8i64 {
        for m in -5..=-1i64 {
            let q = blowup_chain(p, m).unwrap().intersection_matrix();
            ensure(is_negative_definite(&q).holds, || format!("({p},{m}) not negative definite"))?;
            let r = vectors_of_norm(&q, -1);
            ensure(r.label() == "NoneByEnumeration", || format!("({p},{m}): {}", r.label()))?;
            for target in [-1, -2] {
                let found = common::sorted(enumerate_norm(&q, target, false).unwrap().vectors);
                let bound = common::cauchy_schwarz_box(&q, -target);
                let scanned = common::sorted(common::box_scan(&q, target, bound));
                ensure(found == scanned, || {
                    format!("({p},{m}) norm {target}: enumeration {found:?} vs box scan {scanned:?}")
                })?;
            }
            count += 1;
        }
    }
    Ok(format!("{count} points negative definite with no norm -1 vectors; box scan agrees at norms -1, -2"))
}

fn ac7_bookkeeping() -> Outcome {
    let mut count = 0;
    for (p, m) in grid() {
        let f = framing(p, m).unwrap();
        if f <= 0 {
            continue;
        }
        let chain = invariants(&blowup_chain(p, m).unwrap().intersection_matrix());
        let model = invariants(&SymIntMatrix::diagonal(&[f]));
        ensure(chain.b2_plus == 1, || format!("({p},{m}): b2+ = {}", chain.b2_plus))?;
        ensure(chain.signature - model.signature == -(p - 1), || {
            format!("({p},{m}): sigma {} vs {}", chain.signature, model.signature)
        })?;
        count += 1;
    }
    let r = invariants(&blowup_chain(3, 1).unwrap().intersection_matrix());
    ensure(r.signature == -1, || format!("(3,1): sigma {}", r.signature))?;
    Ok(format!("{count} points with positive framing keep b2+ = 1, delta sigma = -(p-1)"))
}

fn random_presentation(rng: &mut StdRng) -> FramedPresentation {
    let n2 = rng.gen_range(1..=3);
    let n1 = rng.gen_range(0..=(4 - n2).min(2));
    let mut f = SymIntMatrix::zeros(n2);
    for i in 0..n2 {
        for j in i..n2 {
            f.set(i, j, rng.gen_range(-5..=5));
        }
    }
    let l = (0..n2).map(|_| (0..n1).map(|_| rng.gen_range(-3..=3)).collect()).collect();
    FramedPresentation::new(
        (0..n1).map(|u| format!("x{u}")).collect(),
        (0..n2).map(|k| format!("h{k}")).collect(),
        f,
        l,
    )
    .unwrap()
}

fn ac8_property_suites() -> Outcome {
    // continued-fraction round trip
    let mut pairs = 0;
    for p in 2..=200i64 {
        for q in (1..p).filter(|q| q.gcd(&p) == 1) {
            let cf = hj_expand(&BigInt::from(p), &BigInt::from(q)).unwrap();
            ensure(cf.0.iter().all(|&t| t >= 2), || format!("{p}/{q}: term below 2"))?;
            ensure(cf.eval() == (BigInt::from(p), BigInt::from(q)), || format!("{p}/{q}: round trip"))?;
            pairs += 1;
        }
    }

    // |CF numerator| = |chain determinant|
    let mut rng = StdRng::seed_from_u64(0x5eed_c4a1);
    for _ in 0..1000 {
        let len = rng.gen_range(0..=8);
        let weights: Vec<i64> = (0..len).map(|_| rng.gen_range(-9..=9)).collect();
        let negated: Vec<i64> = weights.iter().map(|w| -w).collect();
        let (num, _) = neg_cf_eval(&negated);
        let det = common::laplace_det(&PlumbingGraph::linear_chain(&weights).intersection_matrix().rows());
        ensure(num.abs() == det.abs(), || format!("{weights:?}: {num} vs det {det}"))?;
    }

    // slide and cancel leave the boundary homology unchanged
    let mut rng = StdRng::seed_from_u64(0x0b1a_de55);
    let mut moves = 0;
    while moves < 500 {
        let pres = random_presentation(&mut rng);
        let before = pres.boundary_homology();
        let det_before = pres.block_matrix().determinant().abs();
        let n2 = pres.two_handles.len();
        let n1 = pres.one_handles.len();
        let after = if n1 > 0 && rng.gen_bool(0.5) {
            let (i, u) = (rng.gen_range(0..n2), rng.gen_range(0..n1));
            let mut pres = pres;
            pres.linking[i][u] = if rng.gen_bool(0.5) { 1 } else { -1 };
            let before = pres.boundary_homology();
            let det_before = pres.block_matrix().determinant().abs();
            let after = pres.cancel(i, u).map_err(|e| e.to_string())?;
            ensure(after.boundary_homology() == before, || format!("cancel changed H1: {pres:?}"))?;
            ensure(after.block_matrix().determinant().abs() == det_before, || {
                format!("cancel changed |det|: {pres:?}")
            })?;
            moves += 1;
            continue;
        } else if n2 >= 2 {
            let i = rng.gen_range(0..n2);
            let j = (i + rng.gen_range(1..n2)) % n2;
            pres.slide(i, j, rng.gen_range(-3..=3)).map_err(|e| e.to_string())?
        } else {
            continue;
        };
        ensure(after.boundary_homology() == before, || format!("slide changed H1: {pres:?}"))?;
        ensure(after.block_matrix().determinant().abs() == det_before, || "slide changed |det|".into())?;
        moves += 1;
    }

    // equivalence-relation axioms for p <= 50
    let mut checked = 0;
    for p in 2..=50i64 {
        let spaces: Vec<Boundary3Manifold> =
            (1..p).filter_map(|q| Boundary3Manifold::lens(p, q).ok()).collect();
        for orientation in [Orientation::Oriented, Orientation::Unoriented] {
            let rel: Vec<Vec<bool>> = spaces
                .iter()
                .map(|a| spaces.iter().map(|b| lens_equiv(a, b, orientation)).collect())
                .collect();
            let k = spaces.len();
            for a in 0..k {
                ensure(rel[a][a], || format!("not reflexive at {}", spaces[a]))?;
                for b in 0..k {
                    ensure(rel[a][b] == rel[b][a], || format!("not symmetric: {} {}", spaces[a], spaces[b]))?;
                    if rel[a][b] {
                        for c in 0..k {
                            ensure(!rel[b][c] || rel[a][c], || {
                                format!("not transitive: {} {} {}", spaces[a], spaces[b], spaces[c])
                            })?;
                        }
                    }
                }
            }
            checked += k;
        }
    }
    let degenerate = [Boundary3Manifold::S3, Boundary3Manifold::S1xS2];
    for a in &degenerate {
        ensure(lens_equiv(a, a, Orientation::Oriented), || format!("{a} not reflexive"))?;
        ensure(!lens_equiv(a, &Boundary3Manifold::lens(5, 1).unwrap(), Orientation::Unoriented), || {
            format!("{a} matched a lens space")
        })?;
    }
    ensure(!lens_equiv(&degenerate[0], &degenerate[1], Orientation::Unoriented), || "S3 ~ S1xS2".into())?;

    Ok(format!(
        "{pairs} CF round trips, 1000 random chains, {moves} random slides/cancels, {checked} lens spaces checked"
    ))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("AC1 determinant identity", ac1_determinant_identity),
        ("AC2 boundary identity", ac2_boundary_identity),
        ("AC3 boundary of C_p equals boundary of B_p", ac3_cp_boundary),
        ("AC4 proof replay", ac4_replay),
        ("AC5 even branch", ac5_even_branch),
        ("AC6 definite branch", ac6_definite_branch),
        ("AC7 signature bookkeeping", ac7_bookkeeping),
        ("AC8 property suites", ac8_property_suites),
    ];
    let mut failures = Vec::new();
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                println!("FAIL  {name}: {why}");
                failures.push(name);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
