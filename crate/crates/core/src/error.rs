use alloc::string::String;

/// Errors reported by configuration checks, dataset construction and training.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A parameter combination that can never be valid for the given data.
    #[error("invalid configuration: {0}")]
    Config(String),
    /// Two sizes that must agree do not.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch {
        /// Required size.
        expected: usize,
        /// Size that was supplied.
        got: usize,
    },
    /// A NaN or infinity where only finite values are allowed.
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    /// A hidden node produced NaN or infinity while assembling the hidden-layer output matrix.
    #[error("hidden node {node} produced a non-finite output at training row {row}")]
    NonFiniteActivation {
        /// Zero-based index of the offending node.
        node: usize,
        /// Zero-based training row where it was first seen.
        row: usize,
    },
}

/// Crate-wide result alias.
pub type Result<T, E = Error> = core::result::Result<T, E>;

pub(crate) fn config(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}
