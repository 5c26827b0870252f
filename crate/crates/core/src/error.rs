//! Crate-wide error type. Variants map onto the CLI exit codes:
//! validation -> 2, numeric -> 3, combinatorial -> 4.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("validation error: {0}")]
    Validation(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("combinatorial inconsistency: {0}")]
    Combinatorial(String),

    #[error("lamination depth insufficient: need depth {required}, have {available}")]
    DepthInsufficient { required: usize, available: usize },

    #[error("precision insufficient: {0}")]
    PrecisionInsufficient(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }

    pub fn combinatorial(msg: impl Into<String>) -> Self {
        Error::Combinatorial(msg.into())
    }

    /// Process exit code for the CLI contract.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation(_) => 2,
            Error::Numeric(_) | Error::PrecisionInsufficient(_) | Error::Io(_) => 3,
            Error::Combinatorial(_) | Error::DepthInsufficient { .. } => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
