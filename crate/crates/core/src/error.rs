use thiserror::Error;

use crate::document::DocumentError;
use crate::geometry::PatternError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument fell outside the domain of the operation.
    #[error("{0}")]
    Domain(String),

    #[error("pattern has {pattern} beats but the timing law has {law}")]
    BeatsMismatch { pattern: u32, law: u32 },

    #[error(transparent)]
    Pattern(#[from] PatternError),

    #[error(transparent)]
    Document(#[from] DocumentError),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

/// Rejects NaN and infinities with a message naming the argument.
pub(crate) fn ensure_finite(name: &str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::domain(format!("{name} must be finite, got {value}")))
    }
}

pub(crate) fn ensure_unit_interval(name: &str, value: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(Error::domain(format!("{name} = {value} is outside [0, 1]")))
    }
}
