use thiserror::Error;

use crate::diagram::V;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("phase `{0}` is symbolic and cannot be evaluated")]
    SymbolicScalar(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(V),
    #[error("arity mismatch: {left} outputs vs {right} inputs")]
    ArityMismatch { left: usize, right: usize },
    #[error("diagram too large to evaluate: {0}")]
    TooLarge(String),
    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("stale match for rule {0}")]
    StaleMatch(String),
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("validation error: {0}")]
    Validation(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
}

pub type Result<T> = std::result::Result<T, Error>;
