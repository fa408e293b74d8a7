use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Rows of mismatched length, odd symplectic ambient dimension, and similar.
    #[error("input shape error: {0}")]
    InputShape(String),
    /// A parameter lies outside its documented integer range.
    #[error("range error: {0}")]
    Range(String),
    /// A real argument lies outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),
    /// An exhaustive enumeration would exceed its size guard.
    #[error("size guard exceeded: {what} needs {needed}, limit is {limit}")]
    SizeGuard {
        what: &'static str,
        needed: u128,
        limit: u128,
    },
    /// Code construction and search only run over prime fields.
    #[error("unsupported field order {0}: expected a prime in 2..=251")]
    UnsupportedField(u64),
    /// Malformed code file or other parse failure.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
