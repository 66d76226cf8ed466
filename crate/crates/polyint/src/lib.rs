//! Exact polyhedral geometry over the rationals.
//!
//! The crate works with finite unions of generalized polyhedra: solution sets
//! of linear systems that may mix `<=`, `<`, and `=` rows. On top of that
//! representation it provides six notions of generalized interior (interior,
//! relative interior, and the quasi variants), hull and closure computations,
//! near-convexity classification, proper separation with verified witnesses,
//! set-valued map diagnostics, and a seeded property-check harness with
//! shrinking.
//!
//! Every decision is made in exact arithmetic (arbitrary-precision rational
//! scalars); no floating point is consulted anywhere. Operations are
//! deterministic: the same inputs, seeds, and budgets produce byte-identical
//! reports, independent of thread scheduling.

pub mod exactnum;
mod exec;
pub mod genpoly;
pub mod harness;
pub mod interiors;
pub mod nearconvex;
pub mod separation;
pub mod setmap;

pub use exec::Strategy;

/// Errors shared by every operation in the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Mismatched ambient dimensions or malformed shapes.
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    /// Structurally invalid input: bad relation tag, unparsable rational,
    /// zero denominator, malformed JSON, and the like.
    #[error("invalid input: {0}")]
    Input(String),
    /// An operation that requires a nonempty set received an empty one.
    #[error("empty input: {0}")]
    EmptyInput(String),
    /// A configured resource budget was exhausted before an answer was
    /// reached. The payload names the budget that tripped.
    #[error("resource budget exceeded: {0}")]
    Resource(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Resource budgets for the combinatorial search procedures.
///
/// Covering decompositions and generator conversions can blow up
/// combinatorially on adversarial input; budgets turn that into a reported
/// [`Error::Resource`] instead of an unbounded computation.
#[derive(Clone, Debug)]
pub struct Budget {
    /// Maximum number of cells a covering decomposition may create.
    pub max_cells: usize,
    /// Maximum number of intermediate generators in a double-description run.
    pub max_generators: usize,
    /// Maximum ambient dimension for generator conversions.
    pub max_dd_dim: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_cells: 100_000, max_generators: 4096, max_dd_dim: 8 }
    }
}
