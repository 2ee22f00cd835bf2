use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Empty(String),
    #[error("{source}; reduce n or s so that C(n, s) stays below the enumeration cap")]
    Capacity { source: sparsemoo::Error },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Data(_) | CliError::Io { .. } => 1,
            CliError::Empty(_) => 2,
            CliError::Capacity { .. } => 3,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<sparsemoo::Error> for CliError {
    fn from(e: sparsemoo::Error) -> Self {
        match e {
            sparsemoo::Error::Usage(m) | sparsemoo::Error::Domain(m) => CliError::Usage(m),
            sparsemoo::Error::Data(m) => CliError::Data(m),
            e @ sparsemoo::Error::Capacity { .. } => CliError::Capacity { source: e },
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Shorthand for data errors with a formatted message.
macro_rules! data_err {
    ($($arg:tt)*) => { $crate::error::CliError::Data(format!($($arg)*)) };
}
pub(crate) use data_err;
