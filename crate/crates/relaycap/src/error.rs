use thiserror::Error;

/// Errors produced by parsing, validation, and resource guards.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or semantically invalid network document.
    #[error("parse error: {0}")]
    Parse(String),
    /// An operation was called with arguments outside its contract.
    #[error("invalid argument: {0}")]
    Argument(String),
    /// The request would exceed an enumeration or memory cap.
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
