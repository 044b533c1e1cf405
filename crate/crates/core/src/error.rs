use thiserror::Error;

/// Errors raised by the algebra, model and analysis layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("invalid variable set: {0}")]
    InvalidVarSet(String),

    #[error("polynomials are over different variable sets")]
    VarSetMismatch,

    #[error("negative exponent {0}")]
    NegativeExponent(i64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("degree bound exceeded: {0}")]
    DegreeOverflow(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("variable `{0}` does not occur with positive degree")]
    NotPresent(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("internal verification failed: {0}")]
    Verification(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("resource budget exceeded: {0}")]
    Budget(String),
}

pub type Result<T> = std::result::Result<T, Error>;
