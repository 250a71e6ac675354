use std::path::PathBuf;

use ocpc_core::{CubeError, OcelError};
use thiserror::Error;

/// Everything that can go wrong above the core.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Ocel(#[from] OcelError),
    #[error(transparent)]
    Cube(#[from] CubeError),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error("cube build exceeded the {0:?} limit")]
    Timeout(std::time::Duration),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
