use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    InvalidChannel(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Io(_) => 2,
            CliError::InvalidChannel(_) => 3,
            CliError::Domain(_) => 4,
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<qcpower_core::Error> for CliError {
    fn from(e: qcpower_core::Error) -> Self {
        use qcpower_core::Error as E;
        match e {
            E::InvalidChannel(_) | E::NotTracePreserving { .. } | E::NotPositive { .. } => {
                CliError::InvalidChannel(e.to_string())
            }
            _ => CliError::Domain(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
