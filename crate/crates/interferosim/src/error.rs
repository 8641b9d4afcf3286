use thiserror::Error;

/// Errors produced by grid construction, spectral sampling and trace generation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("sample length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("frequency grid does not cover the spectrum: {0}")]
    GridCoverage(String),

    #[error("spectrum has zero norm; cannot normalize")]
    DegenerateSpectrum,

    #[error(
        "delay grid undersamples the fringe carrier: spacing {spacing} ps exceeds {max_spacing} ps \
         (need at least 8 samples per period)"
    )]
    UndersampledFringe { spacing: f64, max_spacing: f64 },
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
