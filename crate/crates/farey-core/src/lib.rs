//! Exact arithmetic on slopes of the torus and their Farey graph.
//!
//! A slope is a primitive pair `p/q` (with `1/0` for infinity). Slopes are the
//! vertices of the Farey graph, where `p/q` and `r/s` are joined exactly when
//! `|ps - qr| = 1`. This crate provides:
//!
//! * [`Slope`] and [`UnimodularMap`]: primitive fractions and integer `2x2`
//!   changes of basis acting on them,
//! * [`farey_distance`]: exact graph distance via a Stern-Brocot descent,
//!   together with a brute-force BFS reference in [`oracle`],
//! * [`cf_expand`]: canonical continued-fraction expansions,
//! * [`RealSlope`]: endpoints on the boundary circle, either rational or
//!   quadratic irrational (eventually periodic continued fraction), with exact
//!   surd arithmetic behind comparisons,
//! * [`w_coefficient`] / [`torus_d_alpha`]: the normalized difference of two
//!   endpoints after the basis change sending a curve to infinity, and the
//!   twisting count derived from it,
//! * [`torus_short_slopes`]: slopes short with respect to a flat metric given
//!   by a point in the upper half-plane.
//!
//! All comparisons that feed integer outputs are exact; floating-point only
//! appears when converting a value for display, at a documented working
//! precision (default [`DEFAULT_PRECISION`]).

mod cf;
mod distance;
mod error;
pub mod oracle;
mod real_slope;
mod short_slopes;
mod slope;
mod surd;
mod unimodular;
mod wcoeff;

pub use cf::{cf_expand, cf_to_rational, cf_to_slope};
pub use distance::{farey_adjacent, farey_distance};
pub use error::FareyError;
pub use real_slope::RealSlope;
pub use short_slopes::torus_short_slopes;
pub use slope::Slope;
pub use surd::{QuadSurd, SurdValue};
pub use unimodular::{basis_change_to_infinity, UnimodularMap};
pub use wcoeff::{torus_d_alpha, w_coefficient, w_coefficient_with_precision};

/// Default working precision for rendering exact values as floats.
///
/// Overridable per call where it matters; the CLI wires the
/// `LAMINATE_PRECISION` environment variable to this.
pub const DEFAULT_PRECISION: f64 = 1e-12;
