use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring parameters: {0}")]
    InvalidParams(String),

    #[error("operation requires an odd prime, got p = {0}")]
    RequiresOddPrime(u64),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("{what}: size {size} exceeds enumeration cap {cap}")]
    CapExceeded { what: &'static str, size: u128, cap: u128 },

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("the zero code has no minimum distance")]
    EmptyMinimum,

    #[error("incomplete table: {0}")]
    IncompleteTable(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// Two independent computations disagree. This falsifies a proven
    /// identity and therefore signals a bug, never bad input.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Fails with [`Error::CapExceeded`] when `size > cap`.
pub(crate) fn check_cap(what: &'static str, size: u128, cap: u128) -> Result<()> {
    if size > cap {
        Err(Error::CapExceeded { what, size, cap })
    } else {
        Ok(())
    }
}
