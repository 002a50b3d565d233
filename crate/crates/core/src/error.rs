use thiserror::Error;

use crate::group::Diagnostic;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed input text.
    #[error("parse error: {0}")]
    Parse(String),
    /// Inputs that parse but refer to things that do not exist
    /// (unknown variables, mismatched domains, arity mismatches).
    #[error("structural error: {0}")]
    Structural(String),
    /// A documented precondition was violated.
    #[error("contract violation: {0}")]
    Contract(String),
    /// A configured size limit would be exceeded.
    #[error("{what}: required {required}, cap {cap}")]
    Cap {
        what: String,
        required: u128,
        cap: u128,
    },
    #[error("invalid group table: {0}")]
    InvalidGroup(Diagnostic),
}

impl Error {
    /// Stable process exit code for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Structural(_) | Error::InvalidGroup(_) => 2,
            Error::Cap { .. } => 3,
            Error::Contract(_) => 4,
        }
    }
}
