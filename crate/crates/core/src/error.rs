use thiserror::Error;

/// Errors raised by the engine.
///
/// The CLI maps `Input`-class errors to exit code 2 and computational
/// failures to exit code 1 (see [`Error::is_input_error`]).
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("singular matrix (rank {rank} of {dim})")]
    Singular { rank: usize, dim: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("{what} exceeds cap {cap} (got {size}); too large, supply data instead")]
    CapExceeded { what: String, cap: u64, size: u64 },
    #[error("iteration limit of {limit} reached in {what}")]
    IterationLimit { what: String, limit: usize },
    #[error("simple module list does not cover a composition factor: {0}")]
    MissingSimple(String),
    #[error("module is not indecomposable: {0}")]
    NotIndecomposable(String),
    #[error("field does not split the module: {0}")]
    NonSplitting(String),
    #[error("theory violation (data bug?): {0}")]
    Theory(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::Input(_)
                | Error::Io(_)
                | Error::Shape(_)
                | Error::DegreeMismatch { .. }
                | Error::NotSubgroup(_)
                | Error::MissingSimple(_)
        )
    }

    pub(crate) fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, col, msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
