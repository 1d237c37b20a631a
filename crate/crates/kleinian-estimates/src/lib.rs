//! Estimates for complex translation lengths of short curves in hyperbolic
//! 3-manifolds fibering over the punctured torus, and the trace machinery
//! behind them.
//!
//! The crate has three layers:
//!
//! * value types: [`ComplexLength`], [`UHPoint`], [`CoefficientSet`], and
//!   trace seeds on the relation surface `x^2 + y^2 + z^2 = xyz`;
//! * pointwise maps: the tube parameter `2 pi i / lambda`, the hyperbolic
//!   metric, harmonic-mean length bounds, and coefficient-driven predictions
//!   of where a tube parameter should land;
//! * scans: breadth-first walks over the triangle tree of slopes that
//!   enumerate short curves, compare two representations, and report tube
//!   positions.
//!
//! Scans run data-parallel by default; disabling the `parallel` feature (or
//! calling the `_seq` variants) uses a single thread with identical output.

mod error;
mod estimate;
mod markov;
pub mod oracle;
mod scan;
mod types;

pub use error::{EstimateError, Result};
pub use estimate::{
    bers_upper_bound, complex_length_from_trace, conjecture_lambda, conjecture_rhs, hyp_distance,
    lambda_from_uh, teich_param, DEFAULT_THRESHOLD,
};
pub use markov::{guarded_flip, markov_flip, trace_propagate, IntegerTriple, WALK_MAGNITUDE_CAP};
pub use scan::{
    short_slope_scan, short_slope_scan_seq, simple_length_ratio_scan, torus_consistency_report,
    triangle_ball, ConsistencyRow, RatioReport, RatioRow, ScanReport, ScanRow, MAX_SCAN_DEPTH,
};
pub use types::{
    complex_pair, markov_residual, CoefficientSet, ComplexLength, TraceSeed, UHPoint,
    SEED_TOLERANCE,
};
