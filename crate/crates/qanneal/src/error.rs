use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, IoError>;

/// Failures while reading, writing or validating files.
#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: malformed JSON: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("{path}: line {line}: {reason}")]
    Parse {
        path: PathBuf,
        line: u64,
        reason: String,
    },
    #[error("unsupported version `{0}` (expected MAJOR.MINOR.PATCH)")]
    Version(String),
    #[error("{0}")]
    Validation(String),
    #[error("{path}: schedule must cover [0, 1], found [{first}, {last}]")]
    Domain {
        path: PathBuf,
        first: f64,
        last: f64,
    },
    #[error("{path}: line {line}: s = {s} does not increase")]
    Order { path: PathBuf, line: u64, s: f64 },
    #[error(transparent)]
    Core(#[from] qanneal_core::Error),
}

impl IoError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        IoError::Io {
            path: path.into(),
            source,
        }
    }

    /// Short stable tag used as the prefix of CLI error lines.
    pub fn code(&self) -> &'static str {
        match self {
            IoError::Io { .. } => "E_IO",
            IoError::Json { .. } | IoError::Parse { .. } => "E_PARSE",
            IoError::Version(_) => "E_VERSION",
            IoError::Validation(_) | IoError::Domain { .. } | IoError::Order { .. } => {
                "E_VALIDATION"
            }
            IoError::Core(e) => core_code(e),
        }
    }
}

pub fn core_code(e: &qanneal_core::Error) -> &'static str {
    use qanneal_core::Error as E;
    match e {
        E::NumericalFailure { .. } => "E_NUMERICAL",
        E::NonConvergence { .. } => "E_CONVERGENCE",
        _ => "E_VALIDATION",
    }
}
