use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("no points")]
    EmptyInput,

    #[error("point {index} has a non-finite coordinate")]
    NonFinite { index: usize },

    #[error("{n} points exceeds the oracle limit of {max}")]
    TooLarge { n: usize, max: usize },

    #[error("number of projection planes must be at least 1")]
    InvalidK,

    #[error("normal vector has zero length")]
    ZeroNormal,

    #[error("unknown point cloud kind `{0}`")]
    UnknownKind(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("insufficient samples: {0}")]
    InsufficientSamples(String),

    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
