use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("operator is not Hermitian (deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("state trace is {0}, expected 1")]
    NotUnitTrace(f64),

    #[error("operator is not positive semidefinite (min eigenvalue {0:.3e})")]
    NotPsd(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("no composite exists with the exceptional factor: it has no embedding in complex matrices")]
    ExceptionalFactor,

    #[error("closure did not stabilize within {0} rounds")]
    ClosureCap(usize),

    #[error("identification failed: {0}")]
    Identification(String),

    #[error("{what}: residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    Residual { what: String, residual: f64, tol: f64 },

    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
