//! Multilevel vertex separator solver.
//!
//! A graph is coarsened by heavy-edge matching, the coarsest graph is solved
//! by multistart refinement, and the solution is carried back up level by
//! level. Every level is refined on the continuous bilinear program
//!
//! ```text
//! max  cᵀ(x + y) − γ·xᵀ(A + I)y
//! s.t. 0 ≤ x, y ≤ 1,  la ≤ 1ᵀx ≤ ua,  lb ≤ 1ᵀy ≤ ub
//! ```
//!
//! by alternating exact block LPs, escaping local maxima by lowering `γ`, and
//! rounding to a binary point with `xᵀ(A + I)y = 0`, which reads off as a
//! separator `S = {i : x_i = y_i = 0}`.
//!
//! The numeric core is generic over [`Scalar`] (`f64` and `f32`); the
//! aliases below fix the usual choice.

pub mod cbp;
pub mod graph;
pub mod multilevel;
pub mod oracle;
mod scalar;

pub use cbp::{Bounds, CbpError, Partition, PartitionError};
pub use graph::{Graph, GraphError, Violation};
pub use multilevel::{solve, LevelTrace, Solution, SolveError, SolveParams};
pub use oracle::{brute_force_lp, brute_force_vsp, OracleError, OracleResult};
pub use scalar::Scalar;

pub type CbpInstance = cbp::CbpInstance<f64>;
pub type Point = cbp::Point<f64>;
pub type Level = multilevel::Level<f64>;
pub type Hierarchy = multilevel::Hierarchy<f64>;

pub type CbpInstance32 = cbp::CbpInstance<f32>;
pub type Point32 = cbp::Point<f32>;
pub type Level32 = multilevel::Level<f32>;
pub type Hierarchy32 = multilevel::Hierarchy<f32>;
