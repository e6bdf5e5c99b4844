use thiserror::Error;

/// Errors produced by the estimation pipeline.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter is outside its admissible range.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The input carries no usable information (e.g. a level with zero
    /// energy, for which the likelihood is undefined).
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// An estimator was handed fewer levels than it can work with.
    #[error("insufficient levels: need at least {required}, got {actual}")]
    InsufficientLevels { required: usize, actual: usize },

    /// An internal invariant was violated; indicates a bug, not bad input.
    #[error("internal consistency violation: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
