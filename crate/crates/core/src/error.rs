use alloc::string::String;

/// Errors produced by the core algorithms.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Inputs or parameters that cannot produce a meaningful result
    /// (empty training corpus, mismatched models, too few pairs, ...).
    #[error("configuration error: {0}")]
    Config(String),
    /// A value violated one of the data-type invariants.
    #[error("invariant violated: {0}")]
    Invariant(String),
    /// Malformed textual input.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    /// A statistic that is undefined for the given input.
    #[error("undefined statistic: {0}")]
    Undefined(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

pub(crate) fn config(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

pub(crate) fn invariant(msg: impl Into<String>) -> Error {
    Error::Invariant(msg.into())
}
