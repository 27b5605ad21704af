use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FskError {
    #[error("arity mismatch: left side has {left} leaves, right side has {right} roots")]
    Arity { left: usize, right: usize },
    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("word letter at position {position} has index {index} > {position}")]
    WordIndex { position: usize, index: usize },
    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("unknown colour `{0}`")]
    UnknownColour(String),
    #[error("relation sides have different leaf counts ({lhs} vs {rhs})")]
    LeafMismatch { lhs: usize, rhs: usize },
    #[error("duplicate relation `{0}`")]
    DuplicateRelation(String),
    #[error("pattern does not occur at the given site")]
    NotPresent,
    #[error("presentation is not complemented")]
    NotComplemented,
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, FskError>;

pub(crate) fn syntax(line: usize, col: usize, msg: impl Into<String>) -> FskError {
    FskError::Syntax { line, col, msg: msg.into() }
}
