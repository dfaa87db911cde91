use thiserror::Error;

use crate::models::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("angle {theta} outside [0, pi]")]
    Domain { theta: f64 },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("no sign change across bracket [{lo}, {hi}]: d(lo) = {d_lo}, d(hi) = {d_hi}")]
    Bracketing { lo: f64, hi: f64, d_lo: f64, d_hi: f64 },

    #[error("malformed model file: {0}")]
    Parse(#[from] serde_json::Error),

    #[error("invalid model: {0}")]
    Validation(ValidationReport),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
