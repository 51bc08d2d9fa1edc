use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    /// The expansion vector lies numerically inside the current subspace.
    #[error("expansion vector deflated against the subspace (projected norm {0:e})")]
    Deflated(f64),

    /// Pivot breakdown in a direct solve: the system has no (unique) solution.
    #[error("singular system: pivot {pivot:e} at column {col} below threshold {threshold:e}")]
    Singular {
        col: usize,
        pivot: f64,
        threshold: f64,
    },

    #[error("dense eigensolver did not converge after {0} QR iterations")]
    NoConvergence(usize),

    #[error("dense system of order {n} exceeds the cap {cap}")]
    DenseCapExceeded { n: usize, cap: usize },

    #[error("unknown matrix generator `{0}`")]
    UnknownGenerator(String),

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unsupported format: {0}")]
    Unsupported(String),

    /// A required data file was not found.
    #[error("{0}")]
    MissingData(String),

    #[error("empty convergence history")]
    EmptyHistory,

    #[error("no residual plateau detected: {0}")]
    NotStagnant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
