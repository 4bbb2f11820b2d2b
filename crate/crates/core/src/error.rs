use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse `{token}`: {reason}")]
    Parse { token: String, reason: String },

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("word {0:?} is not a reduced word of the longest element")]
    NotReduced(Vec<usize>),

    #[error("not a reflection ordering: {0}")]
    InvalidOrdering(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("matrix is singular")]
    Singular,

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("sampling failed in column {column} after {attempts} attempts")]
    SamplingFailed { column: usize, attempts: usize },

    #[error("unknown format `{0}`")]
    UnknownFormat(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(token: impl Into<String>, reason: impl Into<String>) -> Error {
    Error::Parse {
        token: token.into(),
        reason: reason.into(),
    }
}
