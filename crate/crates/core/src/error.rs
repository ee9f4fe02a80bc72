use alloc::string::String;

/// Errors surfaced by the core crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RelcohError {
    #[error("invalid algebra: {0}")]
    InvalidSpec(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
    /// Ranks or verdicts disagreed across primes even after retrying with fresh primes.
    #[error("arithmetic disagreement: {0}")]
    Disagreement(String),
    #[error("not supported: {0}")]
    Unsupported(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = core::result::Result<T, RelcohError>;
