//! Exact decision procedure for prescribed real-root placements.
//!
//! Given ordered real constants a_1 < ... < a_{n+1}, a sign pattern selected
//! by a subset S of {1, ..., n+1} and a placement of n candidate roots into
//! the n+2 open intervals the constants cut out of the line, this crate
//! decides — exactly, and uniformly over every parameter choice realizing the
//! placement — whether the degree-n pencil polynomial
//!
//! ```text
//! U(x) = sum_j eps_j * q_j^2 * prod_{k != j} (x - a_k),   sum_j eps_j q_j^2 = 1
//! ```
//!
//! can have its real roots in exactly those intervals. The question reduces to
//! the existence of a strictly positive solution of a homogeneous linear
//! system, which is settled by Dines elimination: symbolic mode eliminates
//! over sign-decided gap polynomials and certifies a whole ordering class at
//! once, instance mode runs the same elimination over exact rationals and
//! lifts an explicit positive witness back through the elimination levels.
//! Witness root locations are verified independently with Sturm chains.

pub mod cli;
pub mod dines;
pub mod exact;
pub mod gappoly;
pub mod neumann;
pub mod oracle;
pub mod report;
