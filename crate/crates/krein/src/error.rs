use thiserror::Error;

/// Errors of the command-line layer, split by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] krein_core::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for malformed input, 1 for numerical or certification failures.
    pub fn exit_code(&self) -> u8 {
        use krein_core::Error as E;
        match self {
            CliError::Input(_) | CliError::Io(_) => 2,
            CliError::Core(E::InvalidInput(_) | E::DegenerateArc | E::Overlap) => 2,
            CliError::Core(_) => 1,
        }
    }
}
