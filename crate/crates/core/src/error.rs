use thiserror::Error;

/// Errors raised by sampling, the sensitivity engine, the transfer-matrix
/// solver and the design equations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("coordinate {index} = {value} is outside [0, 1]")]
    OutOfRange { index: usize, value: f64 },

    #[error("singular material: Poisson's ratio {nu} must be below 0.5")]
    SingularMaterial { nu: f64 },

    #[error("invalid layer: {0}")]
    InvalidLayer(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("zero total variance")]
    ZeroVariance,

    #[error("no band gap below the search cap at parameters {params:?}")]
    NoGap { params: Vec<f64> },

    #[error("model evaluation failed at sample {index}: {source}")]
    Model {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("rank-deficient design matrix (rank {rank} < {columns} columns)")]
    RankDeficient { rank: usize, columns: usize },

    #[error("malformed data: {0}")]
    Data(String),
}

impl Error {
    /// Innermost error, skipping the `Model` wrappers added by the estimators.
    pub fn root(&self) -> &Error {
        match self {
            Error::Model { source, .. } => source.root(),
            other => other,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
