use thiserror::Error;

/// Crate-wide error type. Variants map onto the CLI exit codes:
/// semantic violations exit 1, parse errors exit 2, failed internal
/// cross-checks exit 3.
#[derive(Debug, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("validation failed:\n{}", .0.join("\n"))]
    Invalid(Vec<String>),

    #[error("realizability error: {0}")]
    Realizability(String),

    #[error("inconsistency detected: {0}")]
    Inconsistency(String),

    #[error("degree {degree} refused: {words} words exceed the {limit}-word guard")]
    GuardRefused {
        degree: usize,
        words: u64,
        limit: u64,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Exit code contract: 0 success, 1 semantic violation, 2 parse error,
    /// 3 internal inconsistency.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Io(_) => 2,
            Error::Inconsistency(_) => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
