//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Invalid user-supplied parameters (bad family parameters, malformed
    /// selectors, out-of-range cutoffs).
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// Internal consistency failure; indicates wrong root data or a broken
    /// numerical invariant rather than bad input.
    #[error("integrity check failed: {0}")]
    Integrity(String),

    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Requested combination is a declared non-goal (e.g. matrix models for
    /// exceptional types).
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Singular operator where an inverse was required.
    #[error("singular operator: {0}")]
    Singular(String),

    /// Exact interpolation budget exceeded.
    #[error("interpolation budget exceeded: {0}")]
    Budget(String),
}

pub type Result<T> = std::result::Result<T, Error>;
