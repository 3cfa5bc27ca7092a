use thiserror::Error;

/// Errors produced by structure construction, validation and enumeration.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoreError {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("arity mismatch for `{sym}`: expected {expected}, got {got}")]
    Arity {
        sym: String,
        expected: usize,
        got: usize,
    },

    #[error("invalid structure: {0}")]
    Invalid(String),

    #[error("vertex set is not closed under functions: {0}")]
    NotClosed(String),

    #[error("order relation is not a strict total order: {0}")]
    NotTotalOrder(String),

    #[error("structures are over different languages")]
    LanguageMismatch,

    #[error("map is not a {0}")]
    NotA(&'static str),

    #[error("budget exceeded: {what} would exceed limit {limit}")]
    Budget { what: &'static str, limit: u64 },
}

pub type Result<T> = std::result::Result<T, CoreError>;
