use crmoser::Error;

/// Failure of a command, split by exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags or flag combinations (exit 1).
    #[error("{0}")]
    Usage(String),
    /// Unreadable, malformed or invalid input (exit 2).
    #[error("{0}")]
    Parse(String),
    /// Well-formed input that fails a mathematical requirement (exit 3).
    #[error("{0}")]
    Math(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Math(_) => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Parse(_) => "parse",
            CliError::Math(_) => "math",
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::NotNormalForm
            | Error::NonRealScale(_)
            | Error::IrrationalScale(_)
            | Error::NotPseudounitary { .. }
            | Error::NotExtractable(_)
            | Error::Constraint(_) => CliError::Math(msg),
            Error::DimensionMismatch { .. }
            | Error::NotHermitian
            | Error::Singular
            | Error::Signature { .. }
            | Error::InvalidParameters(_)
            | Error::Reality(_)
            | Error::Harmonic(_)
            | Error::WeightExceeded { .. }
            | Error::Truncation { .. }
            | Error::Parse(_) => CliError::Parse(msg),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Parse(format!("invalid JSON: {e}"))
    }
}
