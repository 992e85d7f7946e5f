use alloc::string::String;

/// Errors raised by the library surface.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The working precision was exhausted; retry with more bits.
    #[error("precision exhausted: {0} (raise the working precision)")]
    Precision(String),
    /// An internal consistency check failed (e.g. root count mismatch).
    #[error("integrity error: {0}")]
    Integrity(String),
}

pub type Result<T> = core::result::Result<T, Error>;

macro_rules! domain {
    ($($arg:tt)*) => {
        $crate::error::Error::Domain(alloc::format!($($arg)*))
    };
}
pub(crate) use domain;
