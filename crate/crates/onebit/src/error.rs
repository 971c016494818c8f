use std::path::PathBuf;

use onebit_core::Method;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("trial {trial} (seed {seed}), method {method}: {source}")]
    Precoder {
        trial: usize,
        seed: u64,
        method: Method,
        #[source]
        source: onebit_core::Error,
    },

    #[error(transparent)]
    Core(#[from] onebit_core::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
