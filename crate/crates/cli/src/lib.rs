//! Library half of the `coinvest` command-line tool.

pub mod commands;
pub mod config;
pub mod pipeline;
pub mod presets;
pub mod report;

use std::path::PathBuf;

use thiserror::Error;

pub use commands::{load_config, run, verify, RunOutcome, VerifyReport};
pub use config::{parse_config, ConfigError, MethodChoice, RunConfig, ScenarioKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_CHECKS_FAILED: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Solver(#[from] coinvest_core::Error),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{failed} property check(s) failed")]
    ChecksFailed { failed: usize },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Solver(_) => EXIT_INVALID,
            CliError::ChecksFailed { .. } => EXIT_CHECKS_FAILED,
            CliError::Io { .. } | CliError::Csv(_) | CliError::Json(_) => EXIT_IO,
        }
    }
}
