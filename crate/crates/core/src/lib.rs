//! Exact invariants of plumbed 4-manifolds, their lens-space boundaries, and
//! the bookkeeping of rational blow-down and blow-up along `C_p` and `B_p`.
//!
//! Everything is exact integer or rational arithmetic. Grid scans fan out
//! over parameter points with rayon when the `parallel` feature is on.

pub mod families;
pub mod forms;
pub mod graph;
pub mod grid;
pub mod kirby;
pub mod lattice;
pub mod lens;
pub mod matrix;
pub mod report;
pub mod snf;

pub use families::{
    blowdown_delta, blowup_chain, bp_boundary, bp_first_homology_order, cp_chain, framing,
    knot_descriptor, mpm_boundary, verify_blowup_theorem, Direction, InvariantDelta, TorusKnot,
};
pub use forms::{invariants, Definiteness, InvariantReport, Parity};
pub use graph::{GraphError, PlumbingGraph, Vertex};
pub use kirby::{presentation_figure4, replay_theorem_1_2, FramedPresentation};
pub use lattice::{has_minus_one_class, is_even, is_negative_definite, vectors_of_norm, NormSearchResult};
pub use lens::{
    chain_boundary, hj_expand, lens_equiv, lens_reverse, neg_cf_eval, Boundary3Manifold,
    ContinuedFraction, Orientation,
};
pub use matrix::SymIntMatrix;
pub use report::{Check, CheckStatus, VerificationReport};
