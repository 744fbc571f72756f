//! File formats and commands behind the `rankgpt` binary.

pub mod args;
pub mod commands;
pub mod formats;
pub mod message;

use rankgpt::gpt::GptError;
use thiserror::Error;

pub use args::Cli;
pub use commands::run;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Param(String),
    #[error("decode failure: {0}")]
    Decode(String),
    #[error("format error: {0}")]
    Format(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    /// 2 parameter error, 3 decode failure, 4 format error, 1 I/O.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => 1,
            CliError::Param(_) => 2,
            CliError::Decode(_) => 3,
            CliError::Format(_) => 4,
        }
    }
}

impl From<GptError> for CliError {
    fn from(e: GptError) -> Self {
        match e {
            GptError::Decode(_) => CliError::Decode(e.to_string()),
            other => CliError::Param(other.to_string()),
        }
    }
}

impl From<message::MessageError> for CliError {
    fn from(e: message::MessageError) -> Self {
        use message::MessageError::*;
        match e {
            Empty | FieldTooSmall { .. } => CliError::Param(e.to_string()),
            Overflow(_) => CliError::Decode(e.to_string()),
            Length { .. } => CliError::Format(e.to_string()),
        }
    }
}
