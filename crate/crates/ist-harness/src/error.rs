use thiserror::Error;

/// Failures of the harness layer.
#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("unknown experiment: {0}")]
    UnknownExperiment(String),
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error("invalid report: {0}")]
    InvalidReport(String),
    #[error("slope fit: {0}")]
    Fit(String),
    #[error("solver failure: {0}")]
    Solver(#[from] ist_core::Error),
    #[error("worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, HarnessError>;
