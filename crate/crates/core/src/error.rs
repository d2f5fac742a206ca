use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate endpoint coordinate {coordinate}")]
    DuplicateEndpoint { coordinate: String },

    #[error("interval {id} has left endpoint {left} not below right endpoint {right}")]
    EmptyInterval { id: usize, left: String, right: String },

    #[error("interval ids must be 0..{n} without gaps: {detail}")]
    BadIds { n: usize, detail: String },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("layout error: {0}")]
    Layout(String),

    #[error("not a perfect matching: {0}")]
    NotPerfectMatching(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}
