use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] fim_core::Error),
    #[error(transparent)]
    Parse(#[from] fim_core::ParseError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Input(String),
    #[error("verification failed:\n  {}", .0.join("\n  "))]
    Verification(Vec<String>),
}

impl CliError {
    /// 0 ok, 1 verification failure, 2 input error, 3 precondition, 4 internal.
    pub fn exit_code(&self) -> u8 {
        use fim_core::Error as E;
        match self {
            CliError::Verification(_) => 1,
            CliError::Parse(_) | CliError::Io { .. } | CliError::Json(_) | CliError::Input(_) => 2,
            CliError::Core(e) => match e {
                E::Parse(_)
                | E::InvalidEdge(_)
                | E::InvalidVertex(_)
                | E::InvalidGraph(_)
                | E::DimensionMismatch { .. } => 2,
                E::Precondition(_) | E::CapExceeded { .. } => 3,
                E::Infeasible(_) | E::Internal(_) => 4,
            },
        }
    }
}
