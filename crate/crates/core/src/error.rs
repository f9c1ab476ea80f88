use thiserror::Error;

/// Errors raised anywhere in the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("elements belong to different fields")]
    FieldMismatch,

    #[error("inversion of zero")]
    ZeroInverse,

    /// Lengths, ambients, scalar fields or forms do not fit together.
    #[error("incompatible operands: {0}")]
    Incompatible(String),

    /// A theorem's hypothesis is not met by the input.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("too large: {0}")]
    TooLarge(String),

    /// An identity that must hold by construction failed; indicates a bug.
    #[error("internal invariant failed: {0}")]
    Invariant(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
