use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("out of range: {0}")]
    Range(String),

    #[error("dimension mismatch: expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// A quantity that must be even (before halving) was odd.
    #[error("parity violation: {what} = {value} is odd")]
    Parity { what: &'static str, value: i64 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("exact cohomology unsupported on {surface}: {operation}")]
    Unsupported { surface: String, operation: &'static str },

    /// Two independent routes to the same quantity disagreed.
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Range(_) | Error::DimensionMismatch { .. } => 1,
            Error::Parity { .. } | Error::Precondition(_) | Error::Consistency(_) => 2,
            Error::Unsupported { .. } => 3,
        }
    }
}

/// Exact halving; odd input is a hard error.
pub(crate) fn half(value: i64, what: &'static str) -> Result<i64> {
    if value % 2 != 0 {
        return Err(Error::Parity { what, value });
    }
    Ok(value / 2)
}
