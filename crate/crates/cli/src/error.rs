use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl From<dstar::GraphError> for CliError {
    fn from(e: dstar::GraphError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<dstar::spectral::SpectralError> for CliError {
    fn from(e: dstar::spectral::SpectralError) -> Self {
        CliError::Numeric(e.to_string())
    }
}

impl From<dstar::transfer::TransferError> for CliError {
    fn from(e: dstar::transfer::TransferError) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub fn io_err(path: &std::path::Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |e| CliError::Io(format!("{}: {e}", path.display()))
}
