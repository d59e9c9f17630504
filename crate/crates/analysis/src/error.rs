use thiserror::Error;
use vsc_core::Variant;

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("inputs differ in length ({left} vs {right} bytes)")]
    LengthMismatch { left: usize, right: usize },
    #[error("{0} has no IV preprocessing to measure")]
    NoPreprocessing(Variant),
    #[error("at least one trial is required")]
    NoTrials,
    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
