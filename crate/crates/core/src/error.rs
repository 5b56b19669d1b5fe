use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension {0} is too small (need d >= 2)")]
    DimensionTooSmall(usize),

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("matrix is not Hermitian (max asymmetry {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("trace is not one (got {0})")]
    TraceNotOne(f64),

    #[error("kets are not orthonormal (Gram deviation {0:e})")]
    NotOrthonormal(f64),

    #[error("not a probability distribution: {0}")]
    NotNormalized(String),

    #[error("alpha {alpha} out of range for {kind}")]
    AlphaOutOfRange { kind: &'static str, alpha: f64 },

    #[error("{0} has no gauge function")]
    NotGaugeable(&'static str),

    #[error("relation {0} needs the overlap matrix")]
    MissingOverlap(&'static str),

    #[error("disturbed distribution does not match the overlap matrix (deviation {0:e})")]
    InconsistentTriple(f64),

    #[error("dimension {0} is not supported here")]
    UnsupportedDim(usize),

    #[error("shot-count kind mismatch: {0}")]
    KindMismatch(String),

    #[error("shot counts are empty")]
    EmptyCounts,

    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
