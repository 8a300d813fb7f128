use alloc::string::String;

/// Failure modes shared by every algorithm in the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// The caller passed structurally invalid input (mismatched tables,
    /// wrong polynomial counts, zero polynomials where forbidden, ...).
    #[error("usage error: {0}")]
    Usage(String),
    /// A mathematical precondition does not hold (degree caps too small,
    /// not a complete intersection, format not a hypersurface, ...).
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A Monte Carlo procedure could not reach a verdict within its budget.
    #[error("indeterminate: {0}")]
    Indeterminate(String),
    /// An internal consistency check failed.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;

macro_rules! usage {
    ($($arg:tt)*) => { $crate::Error::Usage(alloc::format!($($arg)*)) };
}
macro_rules! precondition {
    ($($arg:tt)*) => { $crate::Error::Precondition(alloc::format!($($arg)*)) };
}
macro_rules! indeterminate {
    ($($arg:tt)*) => { $crate::Error::Indeterminate(alloc::format!($($arg)*)) };
}
macro_rules! internal {
    ($($arg:tt)*) => { $crate::Error::Internal(alloc::format!($($arg)*)) };
}
pub(crate) use {indeterminate, internal, precondition, usage};
