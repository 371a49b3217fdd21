use thiserror::Error;

/// Errors produced by code construction, encoding and file handling.
#[derive(Error, Debug)]
pub enum Error {
    #[error("length {0} is not a power of two >= 2")]
    InvalidLength(usize),

    #[error("dimension K={k} out of range for N={n}")]
    DimensionOutOfRange { n: usize, k: usize },

    #[error("expected length {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("value {value} at position {index} is not a bit")]
    InvalidBit { index: usize, value: u8 },

    #[error("invalid quantization spec: {0}")]
    InvalidQuantSpec(String),

    #[error("malformed frozen-set file: {0}")]
    FrozenFile(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
