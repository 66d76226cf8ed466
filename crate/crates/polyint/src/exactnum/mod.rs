//! Exact rational arithmetic, linear algebra, and linear programming.
//!
//! Everything downstream (polyhedra, interiors, separation, the check
//! harness) reduces its questions to the primitives here, so this module is
//! deliberately small and heavily tested: rational scalars in lowest terms,
//! dense vectors and matrices with checked dimensions, exact Gauss-Jordan
//! solving, and a deterministic two-phase simplex with certificates.

mod linalg;
mod rat;
mod simplex;

pub use linalg::{in_span, solve_linear, span_basis, LinearSolution, QMatrix, QVector};
pub use rat::{cmp_rat, Rat};
pub use simplex::{
    lp_solve, optimize, strict_feasibility, strictly_feasible, LinRel, LinRow, LpOutcome,
    LpProblem, Sense, StrictFeasibility, StrictRel, StrictRow,
};
