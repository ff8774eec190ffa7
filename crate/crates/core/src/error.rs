use thiserror::Error;

/// Errors raised by the exact-arithmetic layers, the solver and the CLI front-end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),
    #[error("invalid step: h must be nonzero")]
    InvalidStep,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid gauge: transformation matrix is singular")]
    InvalidGauge,
    #[error("invalid equation: {0}")]
    InvalidEquation(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid multiplier: {0}")]
    InvalidMultiplier(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("pole encountered at step k = {0}")]
    Pole(usize),
    #[error("unsupported evaluation: {0}")]
    UnsupportedEvaluation(String),
    #[error("malformed document: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
