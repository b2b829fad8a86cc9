use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Bad arguments: out-of-range sizes, mismatched contexts.
    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("{x} and {y} are far")]
    Far { x: String, y: String },

    #[error("invalid generator at line {at}: {cond}")]
    InvalidGenerator { cond: &'static str, at: usize },

    #[error("not in normal form: divisible by p_G for G = [{lo},{hi}]")]
    Divisible { lo: usize, hi: usize },

    #[error("illegal move {label} at {state}")]
    IllegalMove { label: String, state: String },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("consistency error: {0}")]
    Consistency(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }
}
