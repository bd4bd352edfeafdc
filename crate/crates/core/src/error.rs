use thiserror::Error;

/// Errors produced by the spectral computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectrumError {
    /// Surface parameters or operation arguments outside their domain.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// A real argument outside the domain of a function.
    #[error("domain error: {0}")]
    Domain(String),

    /// The adaptive integrator could not meet its tolerance.
    #[error("integration failed at y = {at}: {reason}")]
    Integration { at: f64, reason: String },

    /// A root bracket or eigenfunction classification could not be resolved.
    #[error("unresolved near lambda in [{lo}, {hi}]: {reason}")]
    Unresolved { lo: f64, hi: f64, reason: String },

    /// A structural property that must hold did not.
    #[error("inconsistency: {0}")]
    Inconsistency(String),

    /// Dense or sparse eigensolver failure.
    #[error("eigensolver failure: {0}")]
    Eigensolver(String),
}

impl SpectrumError {
    /// True for errors caused by bad input rather than numerics.
    pub fn is_invalid_input(&self) -> bool {
        matches!(self, Self::InvalidParams(_) | Self::Domain(_))
    }
}

pub type Result<T> = std::result::Result<T, SpectrumError>;
