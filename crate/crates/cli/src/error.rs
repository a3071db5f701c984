use greycast::{DatasetError, GreyError};

/// Failure of a command, carrying its process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Dataset(#[from] DatasetError),
    #[error(transparent)]
    Model(#[from] GreyError),
    #[error("reproduction failed for {} cell(s)", failures.len())]
    Reproduction {
        report: String,
        failures: Vec<String>,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Reproduction { .. } => 1,
            CliError::Input(_) | CliError::Dataset(_) => 2,
            CliError::Model(_) => 3,
        }
    }
}
