use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("element has augmentation {0}, not in the augmentation ideal")]
    NotInAugmentationIdeal(i64),
    #[error("representative {0} is not written in increasing vertex order")]
    UnorderedRepresentative(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("vertex position {position} out of range for a {dimension}-cell")]
    PositionOutOfRange { position: usize, dimension: usize },
    #[error("no {dimension}-cell with index {index}")]
    NoSuchCell { dimension: usize, index: usize },
    #[error("degree mismatch: {0}")]
    Degree(String),
    #[error("row reduction stalled: {0}")]
    ReductionStalled(String),
    #[error("invalid strategy: {0}")]
    Strategy(String),
    #[error("invalid quotient specification: {0}")]
    Quotient(String),
    #[error("resource budget exceeded: {0}")]
    Budget(String),
    #[error("integer overflow during {0}")]
    Overflow(String),
    #[error("certificate rejected: {0}")]
    Rejected(String),
    #[error("malformed input: {0}")]
    Format(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
