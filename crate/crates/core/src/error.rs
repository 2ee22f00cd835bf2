use alloc::string::String;

/// Errors raised by the optimization routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A caller violated an argument contract (lengths, empty sets, ranges).
    #[error("usage error: {0}")]
    Usage(String),
    /// A point or value lies outside the domain an operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),
    /// Support enumeration would exceed the configured cap.
    #[error(
        "capacity error: {count} supports to enumerate exceeds the cap of {cap}; reduce n or s"
    )]
    Capacity { count: u128, cap: u128 },
    /// Input data is malformed.
    #[error("data error: {0}")]
    Data(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

macro_rules! usage {
    ($($arg:tt)*) => { $crate::Error::Usage(alloc::format!($($arg)*)) };
}
macro_rules! domain {
    ($($arg:tt)*) => { $crate::Error::Domain(alloc::format!($($arg)*)) };
}
macro_rules! data {
    ($($arg:tt)*) => { $crate::Error::Data(alloc::format!($($arg)*)) };
}
pub(crate) use {data, domain, usage};
