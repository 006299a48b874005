use std::path::PathBuf;

/// Errors produced by the library.
///
/// The variants split into configuration problems (the caller asked for
/// something that cannot be built) and runtime problems (I/O, malformed
/// data on disk). The CLI maps the former to exit code 2 and the latter to 3.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(
        "gram matrix needs {entries} entries but the budget is {budget}; \
         use direct correlation mode instead"
    )]
    GramBudget { entries: u128, budget: u128 },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed data: {0}")]
    Format(String),
}

impl Error {
    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for errors caused by the caller's configuration rather than
    /// by the environment.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::Config(_) | Error::InvalidInput(_) | Error::GramBudget { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
