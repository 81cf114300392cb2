//! Operator analysis of the inner-product game: the masked challenge set,
//! the exact split of its averaged win projector into a half-identity part
//! and a norm-bounded stripe part, the counting and norm lemmas behind the
//! split, and the two-term average whose conjectured ceiling is one half
//! plus an exponentially small excess.

pub mod conjecture;
pub mod lemmas;
pub mod sset;
pub mod wsplit;

pub use conjecture::{
    conjecture_lhs, slice_family_from_json, slice_family_to_json, ConjectureTerms, SliceFamily,
    SLICE_NORM_TOL,
};
pub use lemmas::{block_norm_bound, parseval_check, sum_xor, sum_xor_brute};
pub use sset::{in_s, prob_s, prob_s_report, ChallengeSet, ProbSReport, MAX_ENUM_N};
pub use wsplit::{
    build_avg_projector_on_s, build_w1, build_w2_closed_form, decomposition_residual, w2_bound,
    w2_norm_semiclassical, W2Bound, RESIDUAL_LIMIT,
};
