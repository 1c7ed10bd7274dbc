use std::path::PathBuf;

use rigiscope_core::constructions::ConstructionError;
use rigiscope_core::cover_bounds::CoverBoundError;
use rigiscope_core::flex_sign::FlexSignError;
use rigiscope_core::GraphError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {msg}")]
    Parse { path: PathBuf, msg: String },
    #[error("{0}")]
    Parameter(String),
    #[error("internal check failed: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } => 1,
            CliError::Parameter(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl From<ConstructionError> for CliError {
    fn from(e: ConstructionError) -> Self {
        CliError::Parameter(e.to_string())
    }
}

impl From<CoverBoundError> for CliError {
    fn from(e: CoverBoundError) -> Self {
        CliError::Parameter(e.to_string())
    }
}

impl From<FlexSignError> for CliError {
    fn from(e: FlexSignError) -> Self {
        match e {
            FlexSignError::AssemblyFailed(m) => CliError::Internal(m),
            other => CliError::Parameter(other.to_string()),
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Parameter(e.to_string())
    }
}
