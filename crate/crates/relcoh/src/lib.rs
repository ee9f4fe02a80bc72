//! Standard-library side of relcoh: the sector engine with its on-disk cache, output formats,
//! the reproduction suite and the command-line interface.

pub mod cache;
pub mod cli;
pub mod engine;
pub mod output;
pub mod repro;

use relcoh_core::RelcohError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] RelcohError),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("invalid input: {0}")]
    Input(String),
}

impl Error {
    /// 2 when independent computations disagreed, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Core(RelcohError::Disagreement(_)) => 2,
            _ => 1,
        }
    }
}
