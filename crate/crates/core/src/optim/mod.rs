//! Dense two-phase simplex and monotone bisection.

mod bisect;
mod simplex;

pub use bisect::{bisect_boundary, BisectionSpec, Direction};
pub use simplex::{solve_lp, Bound, LinearProgram, LpSolution, LpStatus};
