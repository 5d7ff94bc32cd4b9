use std::fmt;

/// Errors surfaced by the text, query, and index layers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A 1-based position or interval fell outside the current text.
    OutOfRange { pos: usize, len: usize },
    /// An internal invariant failed; this signals a logic bug, not bad input.
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::OutOfRange { pos, len } => {
                write!(f, "position {pos} out of range for text of length {len}")
            }
            Error::Internal(msg) => write!(f, "internal invariant violated: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub(crate) fn internal(msg: impl Into<String>) -> Error {
    Error::Internal(msg.into())
}
