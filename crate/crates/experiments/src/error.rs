use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{origin}: {message}")]
    Parse { origin: String, message: String },

    #[error("{0}")]
    Invalid(String),

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("{path}: {source}")]
    Csv { path: PathBuf, source: csv::Error },

    #[error("{path}: malformed row {row}: {message}")]
    Malformed { path: PathBuf, row: usize, message: String },

    #[error(transparent)]
    Core(#[from] nnlsg::Error),

    #[error("run aborted: {0}")]
    Unstable(nnlsg::Error),

    #[error("thread pool: {0}")]
    Threads(#[from] rayon::ThreadPoolBuildError),
}
