use farey_core::FareyError;
use thiserror::Error;

/// Errors for length estimates and trace-map walks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EstimateError {
    /// Trace exactly +-2: the isometry translates nothing.
    #[error("parabolic")]
    Parabolic,
    /// Real trace strictly inside (-2, 2).
    #[error("elliptic or parabolic, no translation length")]
    EllipticOrParabolic,
    /// Triple fails the trace relation beyond tolerance; carries the relative residual.
    #[error("seed violates x^2 + y^2 + z^2 = xyz: relative residual {0:.3e}")]
    InvalidSeed(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Slope(#[from] FareyError),
}

pub type Result<T> = std::result::Result<T, EstimateError>;
