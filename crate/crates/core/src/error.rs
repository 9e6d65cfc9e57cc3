use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("unsupported dimension {0} (only 2 and 4 are supported)")]
    UnsupportedDimension(usize),

    #[error("tensor product needs two 2x2 operands, got {left}x{left} and {right}x{right}")]
    TensorOperands { left: usize, right: usize },

    #[error("non-finite matrix or vector entry")]
    NonFinite,

    #[error("coin constraint violated: {0}")]
    CoinConstraint(String),

    #[error("step probabilities invalid: {0}")]
    InvalidWeights(String),

    #[error("initial state is not normalized: |alpha|^2+|beta|^2+|gamma|^2+|lambda|^2 = {norm_sqr}")]
    NotNormalized { norm_sqr: f64 },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("grid under-resolves support: M = {size} but time {time} needs M >= {required}")]
    GridUnderResolved { size: usize, time: usize, required: usize },

    #[error("enumeration guard exceeded: {what} (limit {limit})")]
    GuardExceeded { what: String, limit: String },

    #[error("unknown lattice function '{name}'; available: {available}")]
    UnknownFunction { name: String, available: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by caller input (bad parameters, guards) as
    /// opposed to I/O or serialization trouble.
    pub fn is_precondition(&self) -> bool {
        !matches!(self, Error::Io(_) | Error::Json(_))
    }
}
