use std::path::PathBuf;

use thiserror::Error;

/// Errors raised anywhere in the simulation, sensing, and awareness pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("failed to parse {path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error("invalid scenario: {0}")]
    Validation(String),

    #[error("cannot step past end of scenario (t = {t_s} s, duration = {duration_s} s)")]
    EndOfScenario { t_s: f64, duration_s: f64 },

    #[error("time {0} s is outside the scenario")]
    OutOfRange(f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("no samples in window for channel {0}")]
    EmptyWindow(String),

    #[error("weather dictionary is empty")]
    EmptyDictionary,

    #[error("unknown template {0:?}")]
    UnknownTemplate(String),

    #[error("unknown sensor {0:?}")]
    UnknownSensor(String),

    #[error("timestamp {t_s} is not after the last stored timestamp {last_s}")]
    NonMonotonicTimestamp { t_s: f64, last_s: f64 },

    #[error("log does not belong to this scenario: {0}")]
    MismatchedScenario(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
