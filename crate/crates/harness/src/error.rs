use std::io;
use std::path::PathBuf;

use fishery_core::FisheryError;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, HarnessError>;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid config: {0}")]
    Config(String),
    #[error("cannot read config {}: {source}", path.display())]
    ConfigRead { path: PathBuf, source: io::Error },
    #[error("cannot parse config {}: {source}", path.display())]
    ConfigParse { path: PathBuf, source: serde_json::Error },
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}: {source}", path.display())]
    Csv { path: PathBuf, source: csv::Error },
}

impl HarnessError {
    /// Problems with the experiment description rather than with running it.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            HarnessError::Config(_) | HarnessError::ConfigRead { .. } | HarnessError::ConfigParse { .. }
        )
    }

    pub(crate) fn io(path: impl Into<PathBuf>) -> impl FnOnce(io::Error) -> Self {
        let path = path.into();
        move |source| HarnessError::Io { path, source }
    }
}

impl From<FisheryError> for HarnessError {
    fn from(e: FisheryError) -> Self {
        HarnessError::Config(e.to_string())
    }
}
