//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Malformed construction data: unsorted breakpoints, non-finite
    /// coefficients, dimension mismatches, bad configuration.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Arguments outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A quadrature did not meet the requested absolute tolerance within
    /// the configured refinement budget. Carries the achieved estimate.
    #[error("quadrature achieved {achieved:.3e} after {refinements} refinement(s); required {required:.3e}")]
    Accuracy {
        achieved: f64,
        required: f64,
        refinements: u32,
    },

    /// A quantity violated an identity that exact arithmetic would satisfy
    /// (e.g. a Gram determinant far below zero). Signals a numerical
    /// breakdown, not a mathematical finding.
    #[error("numerical consistency violated: {0}")]
    Inconsistency(String),

    #[error("unsupported dimension {dim}: {context}")]
    UnsupportedDimension { dim: usize, context: String },

    #[error("i/o: {0}")]
    Io(String),
}
