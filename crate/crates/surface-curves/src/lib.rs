//! Curves on triangulated surfaces: normal coordinates, intersection
//! numbers, twists, pants decompositions, and subsurface-projection
//! coefficients.
//!
//! Every carrier is an ideal triangulation of a model surface with one
//! distinguished vertex.  Curves are stored both as edge-crossing
//! coordinates and as reduced cyclic walks through the dual graph; the
//! walk's canonical rotation is a complete isotopy invariant, so equality,
//! hashing, and set membership are exact.

mod carrier;
mod curve;
mod cut;
mod error;
mod geometry;
mod moves;
mod subsurface;
mod twist;

pub use carrier::{builtin, SurfaceSig, Triangulation, GENUS_THREE, GENUS_TWO, PUNCTURED_TORUS};
pub use curve::{torus_slope_coords, torus_slope_of, MultiCurve, NormalCurve};
pub use cut::{complement_pieces, is_pants_decomposition, PantsDecomposition, PieceSummary};
pub use error::{CurveError, Result};
pub use geometry::{crossings, intersection_number, self_crossing_number, Crossing, Flavor};
pub use moves::{apply_move, available_moves, MoveFamily};
pub use subsurface::{project, twisting_number, ArcSystem, PieceArc, SubsurfaceDescriptor};
pub use twist::dehn_twist;
