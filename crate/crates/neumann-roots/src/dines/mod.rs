//! The elimination engine.
//!
//! One reduction step takes an m-equation homogeneous system in which every
//! equation mixes positive and negative coefficients, splits a pivot row into
//! its positive index set I and negative index set J, and forms an
//! (m-1)-equation system in the product variables x_i * x_j for (i, j) in
//! I x J, with coefficients
//!
//! ```text
//! b'_{r,(i,j)} = b_{p,i} * b_{r,j} - b_{p,j} * b_{r,i}
//! ```
//!
//! (p the pivot row). Strictly positive solutions exist for the reduced
//! system exactly when they exist for the original, so iterating down to a
//! single equation decides existence: a uniform-sign row anywhere refutes it,
//! a final mixed row confirms it. On rational instances the construction is
//! effective in reverse — a positive solution of the final equation lifts
//! level by level back to an explicit positive solution of the input system.
//!
//! The engine is generic over the entry domain: exact rationals for instance
//! runs, gap polynomials (with class-wide sign decisions) for symbolic runs.

mod engine;
mod render;
mod witness;

pub use engine::{
    decide, partition_pivot, reduce_once, row_sign_profile, DinesTrace, EntryDomain, EntrySign,
    IndeterminateInfo, InfeasibleInfo, Level, PartitionError, PivotPolicy, RowProfile,
    SignPartition, SignPolicy, StopReason, UndecidedEntry, Verdict,
};
pub use render::{render_trace_json, render_trace_text, TraceJson};
pub use witness::{decide_and_lift, lift_witness, terminal_witness, LiftError, WitnessVector};
