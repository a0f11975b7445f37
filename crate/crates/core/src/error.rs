use thiserror::Error;

use crate::rack::AxiomViolation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("enumeration overflow: more than {cap} elements")]
    EnumerationOverflow { cap: usize },

    #[error("{what} of size {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("element {0} is not in the group")]
    NotMember(String),

    #[error("{0} does not normalize the group")]
    NotNormalizing(String),

    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),

    #[error("singular matrix")]
    SingularMatrix,

    #[error("unsupported field size {0}")]
    UnsupportedField(u64),

    #[error("rack axiom violated: {0}")]
    Axiom(#[from] AxiomViolation),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
