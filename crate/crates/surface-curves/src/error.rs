use thiserror::Error;

/// Errors for curve construction and the projection-distance operations.
///
/// The distance routines fail loudly instead of guessing: a projection that is
/// empty reports `DoesNotMeet`, and a search that runs out of its configured
/// budget reports `CutoffExceeded` with the cutoff it was given.
#[derive(Debug, Error)]
pub enum CurveError {
    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),

    #[error("invalid curve coordinates: {0}")]
    InvalidCoordinates(String),

    #[error("not an essential simple closed curve: {0}")]
    NotSimple(String),

    #[error("curves live on different carriers: {0} vs {1}")]
    CarrierMismatch(String, String),

    #[error("does not meet Y")]
    DoesNotMeet,

    #[error("distance exceeds cutoff {cutoff}")]
    CutoffExceeded { cutoff: u64 },

    #[error("no move")]
    NoMove,

    #[error("coordinate overflow: {0}")]
    Overflow(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, CurveError>;
