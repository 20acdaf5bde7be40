use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix contains NaN or infinite entries")]
    NonFinite,

    #[error("operator is not positive semi-definite (minimum eigenvalue {min_eigenvalue:.3e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("trace is {trace}, expected 1")]
    NotNormalized { trace: f64 },

    #[error("eigensolver did not converge on a {dim}x{dim} matrix")]
    EigenNoConvergence { dim: usize },

    #[error("invalid subsystem layout: {0}")]
    Layout(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid Rényi order: {0}")]
    InvalidAlpha(String),

    #[error("capability limit exceeded: {0}")]
    Capability(String),

    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    #[error("invalid measurement: {0}")]
    InvalidPovm(String),

    #[error("invalid suite parameters: {0}")]
    InvalidSuite(String),

    #[error("malformed file: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}
