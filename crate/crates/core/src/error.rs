use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input is not valid UTF-8 (first invalid byte at offset {offset})")]
    Decode { offset: usize },

    #[error("invalid dialect: {0}")]
    Dialect(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("rank segment [{a}, {b}] out of bounds for diversity {diversity}")]
    Bounds { a: usize, b: usize, diversity: usize },

    #[error("fit error: {0}")]
    Fit(String),

    #[error("tail is undefined: tail start {theta} leaves a single-rank tail (D = {diversity})")]
    UndefinedTail { theta: usize, diversity: usize },

    #[error("model exponent is singular at alpha = 1")]
    Singularity,

    #[error("insufficient data: need at least {needed} values, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("degenerate samples: both variances are zero")]
    DegenerateSample,

    #[error("correlation undefined: {0}")]
    UndefinedCorrelation(String),

    #[error("text `{0}` is empty after tokenization")]
    EmptyText(String),

    #[error("no texts labelled `{0}`")]
    NoMatchingTexts(String),

    #[error("no fitted models supplied")]
    EmptyModels,

    #[error("duplicate record name `{0}`")]
    DuplicateName(String),

    #[error("malformed {what}: {detail}")]
    Format { what: &'static str, detail: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
