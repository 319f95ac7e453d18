use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: vc_core::graph::format::ParseError },
    #[error("{0}")]
    Invariant(String),
    #[error("{0}")]
    OracleRefused(#[from] vc_core::oracle::OracleError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Parse { .. } => 2,
            CliError::Invariant(_) => 3,
            CliError::OracleRefused(_) => 4,
            CliError::Io { .. } => 5,
        }
    }
}

impl From<vc_core::graph::GraphError> for CliError {
    fn from(e: vc_core::graph::GraphError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<vc_core::simulator::SimError> for CliError {
    fn from(e: vc_core::simulator::SimError) -> Self {
        CliError::Invariant(e.to_string())
    }
}
