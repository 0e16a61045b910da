//! Symbolic entry domain for class-wide sign decisions.
//!
//! Fixing a placement fixes the strict total order of the 2n+1 values
//! (constants and candidate roots). With the smallest value pinned at 0 —
//! legitimate because every system entry is a product of differences, hence
//! translation invariant — all remaining freedom lives in the 2n strictly
//! positive gaps between consecutive values. Every entry of the parametric
//! system becomes an integer polynomial in those gaps, and a uniform
//! coefficient sign (possibly after multiplying by a power of the gap sum)
//! certifies the entry's sign over the entire ordering class at once.

mod poly;
mod scene;
mod sign;

pub use poly::{GapError, GapPolynomial};
pub use scene::{scene_from_placement, OrderedScene, SceneSymbol};
pub use sign::{
    sample_signs, sign_by_difference_factors, sign_of, try_decide_sign, IndeterminateReport,
    SampleClass, SamplingSummary, SignValue, DEFAULT_POLYA_MAX, SIGN_SAMPLE_COUNT,
    SIGN_SAMPLE_SEED,
};
