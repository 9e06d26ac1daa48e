use thiserror::Error;

/// Errors raised by the algebra engine.
///
/// Resource exhaustion ([`Error::Budget`]) is kept apart from mathematical
/// and input errors so callers can tell "gave up" from "wrong input".
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("parse error at column {column}: {message} (expected one of: {})", expected.join(", "))]
    Parse {
        column: usize,
        message: String,
        expected: Vec<String>,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not homogeneous: {0}")]
    Inhomogeneous(String),

    #[error("component of degree {degree} is infinite-dimensional")]
    InfiniteComponent { degree: u32 },

    #[error("budget exhausted: {0}")]
    Budget(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget(_))
    }

    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
