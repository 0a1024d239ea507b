use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A facet of the domain whose image is not a simplex of the codomain.
    #[error("facet {{{}}} is not sent to a simplex", .facet.join(", "))]
    NotSimplicial { facet: Vec<String> },

    #[error("maps do not share domain and codomain")]
    DomainMismatch,

    #[error("certificate rejected: {0}")]
    Certificate(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
