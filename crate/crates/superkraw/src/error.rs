//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide error enum. Shape violations (`Dimension`) are kept distinct
/// from residual failures, which are reported as values, never as errors.
#[derive(Debug, Error)]
pub enum KrawError {
    /// Incompatible shapes or indices out of range.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A degenerate input where the operation has no answer (zero vector,
    /// forbidden parameter value).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A singular matrix where an inverse or root was required.
    #[error("singular matrix: {0}")]
    Singular(String),

    /// Input outside the domain a layer assumes (e.g. the spherical layer
    /// requires positive real odd parameters).
    #[error("domain error: {0}")]
    Domain(String),

    /// Malformed parameter file or serialization payload.
    #[error("parse error: {0}")]
    Parse(String),

    /// Underlying I/O failure while reading or writing files.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, KrawError>;
