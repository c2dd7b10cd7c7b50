use thiserror::Error;

/// Errors raised by the numeric operations of this crate.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The weight does not satisfy a condition required by the operation.
    #[error("unsupported weight {weight}: {reason}")]
    UnsupportedWeight { weight: String, reason: String },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("too few samples: need at least {needed}, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    /// A structural invariant of an input object does not hold.
    #[error("invariant violated: {0}")]
    Invariant(String),

    /// A numerical procedure failed to converge or produced a non-finite value.
    #[error("numerical failure: {0}")]
    Numeric(String),

    #[error("unknown catalog id `{0}`")]
    UnknownId(String),
}

pub type Result<T> = std::result::Result<T, Error>;
