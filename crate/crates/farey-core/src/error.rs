use thiserror::Error;

/// Errors from slope arithmetic and endpoint handling.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FareyError {
    /// Continued fractions of the slope at infinity do not exist.
    #[error("no expansion")]
    NoExpansion,

    /// The endpoint coincides with the curve whose annulus is being projected
    /// to; the twisting difference is undefined.
    #[error("lamination equals the curve")]
    LaminationEqualsCurve,

    #[error("invalid slope: {0}")]
    InvalidSlope(String),

    #[error("invalid continued fraction: {0}")]
    InvalidContinuedFraction(String),

    #[error("matrix is not unimodular (det {0})")]
    NotUnimodular(i128),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An interval evaluation failed to separate the quantity of interest
    /// before hitting the working-precision cap.
    #[error("precision exhausted while {0}")]
    PrecisionExhausted(&'static str),
}

pub type Result<T> = std::result::Result<T, FareyError>;
