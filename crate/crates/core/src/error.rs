use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("party index {index} out of range for a system of {parties} parties")]
    PartyOutOfRange { index: usize, parties: usize },

    #[error("party {party} has local dimension {dim}, but the operation requires a qubit")]
    UnsupportedDimension { party: usize, dim: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("map is not invertible (condition estimate {condition:.3e})")]
    NonInvertibleMap { condition: f64 },

    #[error("parameters outside the admissible region: {}", failed.join("; "))]
    Region { failed: Vec<String> },

    #[error("alpha = {alpha} lies outside the certified range [{min}, {max}]")]
    OutOfRange { alpha: f64, min: f64, max: f64 },

    #[error("enumerating {requested} vertices exceeds the cap of {cap}; use the permutationally invariant projection instead")]
    Capacity { requested: u128, cap: u128 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
