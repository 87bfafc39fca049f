use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("quadrature rule construction failed: {0}")]
    RuleConstruction(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("grid too small: {0}")]
    GridTooSmall(String),

    #[error("kernel is singular at t = {t} (|sin 2t| <= 1e-6); use harmonic_flow instead")]
    SingularTime { t: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("matrix is not an isometry (max |A^T A - I| = {deviation:e})")]
    NotIsometry { deviation: f64 },

    #[error("axis must be nonzero")]
    ZeroAxis,

    #[error("slot mismatch: {0}")]
    SlotMismatch(String),

    #[error("problem too large: {0}")]
    TooLarge(String),

    #[error("truncation margin violated: {0}")]
    Margin(String),

    #[error("integration diverged after t = {last_good_time}")]
    Divergence { last_good_time: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for failures of the numerics rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::RuleConstruction(_) | Error::Divergence { .. } | Error::SingularTime { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
