use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    /// A structural axiom fails; the witness names the offending basis elements.
    #[error("{axiom} fails: {witness}")]
    Validation { axiom: String, witness: String },
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    /// An internal invariant was violated. Always a bug or a corrupted input.
    #[error("internal invariant violated: {0}")]
    Inconsistent(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub fn validation(axiom: impl Into<String>, witness: impl Into<String>) -> Error {
        Error::Validation {
            axiom: axiom.into(),
            witness: witness.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
