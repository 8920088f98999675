use alloc::string::String;
use core::fmt;

/// Errors raised by library operations. Anything structurally wrong with
/// caller data is `InvalidInput`/`InvalidGraph`; exponential routines refuse
/// inputs past their guard with `SizeGuard` instead of running forever.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    InvalidInput(String),
    InvalidGraph(String),
    SizeGuard {
        what: &'static str,
        size: u64,
        limit: u64,
    },
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::InvalidGraph(msg) => write!(f, "invalid graph: {msg}"),
            Error::SizeGuard { what, size, limit } => {
                write!(f, "size guard: {what} is {size}, limit {limit} (raise the guard to override)")
            }
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn invalid_input(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

pub(crate) fn invalid_graph(msg: impl Into<String>) -> Error {
    Error::InvalidGraph(msg.into())
}
