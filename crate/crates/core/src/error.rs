use thiserror::Error;

/// Errors raised by state construction and the resource-theory operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),

    #[error("trace is not 1 (got {0})")]
    InvalidTrace(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("matrix is not unitary (deviation {0:e})")]
    NotUnitary(f64),

    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    #[error("spectrum does not majorize target")]
    NotMajorized,

    #[error("numerical degeneracy: {0}")]
    Degenerate(String),

    #[error("state is not pure (largest eigenvalue {0})")]
    NotPure(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("type-class expansion too large: {0} atoms")]
    Intractable(u128),
}

pub type Result<T> = std::result::Result<T, Error>;
