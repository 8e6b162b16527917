use thiserror::Error;

/// Errors raised by graph construction, parsing and the analysis modules.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("loop edge at vertex {0}")]
    Loop(usize),
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("color {color} out of range for c = {c}")]
    ColorOutOfRange { color: usize, c: usize },
    #[error("at most {max} colors are supported, got {got}")]
    TooManyColors { got: usize, max: usize },
    #[error("vertices of a pair must be distinct")]
    SameVertex,
    #[error("dimension mismatch: expected n = {expected_n}, c = {expected_c}; got n = {n}, c = {c}")]
    DimensionMismatch {
        expected_n: usize,
        expected_c: usize,
        n: usize,
        c: usize,
    },
    #[error("unknown construction `{0}`")]
    UnknownConstruction(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed scenario `{id}`: {reason}")]
    MalformedScenario { id: String, reason: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("size {got} exceeds the supported ceiling {max}")]
    SizeCeiling { got: usize, max: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
