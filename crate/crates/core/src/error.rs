use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not invertible: {0}")]
    NotInvertible(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("radical unavailable in characteristic {0}")]
    UnsupportedCharacteristic(u64),
    #[error("kernel is not projective: {0}")]
    NotProjectiveKernel(String),
    #[error("image does not factor through a projective: {0}")]
    NotProjectiveImage(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("internal consistency failure at {locus}: {detail}")]
    Inconsistent { locus: String, detail: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
