use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension {0} is outside 1..=30")]
    InvalidDimension(u32),
    #[error("point bits {bits:#x} do not fit in dimension {dim}")]
    PointOutOfRange { bits: u64, dim: u32 },
    #[error("coordinate {coord} is outside 1..={dim}")]
    CoordinateOutOfRange { coord: u32, dim: u32 },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: u32, right: u32 },
    #[error("{0}: empty input")]
    EmptyInput(&'static str),
    #[error("query index {index} is outside the domain {domain}")]
    OutOfDomain { index: u64, domain: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("operation needs {what}, limit is {limit}")]
    TooLarge { what: String, limit: String },
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
