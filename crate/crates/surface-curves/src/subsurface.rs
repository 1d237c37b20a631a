//! Subsurface domains and the projection into them.
//!
//! A domain is an annulus around an essential curve or one complementary
//! piece of a multicurve.  Projecting a curve system into a domain keeps
//! its essential intersection: annuli record a crossing count and a signed
//! twisting number instead of lifting to the annulus cover; pieces record
//! the arcs the system cuts through them.  Arcs are found by drawing each
//! component over the cut: the transverse position of every step among the
//! boundary's points locates the component region by region, and each cut
//! chord its triangle path crosses is one boundary crossing.

use std::cmp::Ordering;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::carrier::{Step, Triangulation};
use crate::curve::{reverse_walk, MultiCurve, NormalCurve};
use crate::cut::Cut;
use crate::error::{CurveError, Result};
use crate::geometry::{crossings, intersection_number, transverse_order};

/// Domain of a projection.  Piece indices follow the numbering of
/// `complement_pieces` for the same boundary.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "snake_case")]
pub enum SubsurfaceDescriptor {
    Annulus { core: NormalCurve },
    Piece { boundary: MultiCurve, index: usize },
}

/// One component of a piece projection: a run of consecutive steps of an
/// input component, cut out by two boundary crossings, or that component's
/// whole walk when it lies inside the piece.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PieceArc {
    /// Which input component the arc comes from.
    pub component: usize,
    /// First step of the arc in that component's walk.
    pub start: usize,
    /// Number of steps; the component's full length for a closed component.
    pub len: usize,
    /// The steps themselves, unrolled from the cyclic walk.
    pub steps: Vec<Step>,
    /// Boundary components the two ends cross, or `None` when the arc is a
    /// closed component inside the piece.
    pub ends: Option<(usize, usize)>,
    /// Side of each crossed component's oriented walk the endpoint rests
    /// on, paired with `ends`.  One component can face a piece with both
    /// sides, so the pair `(ends, sides)` is what names a boundary circle.
    pub sides: Option<(bool, bool)>,
}

/// Essential intersection of a curve system with a domain.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum ArcSystem {
    /// The system misses the domain or meets it only trivially.
    Empty,
    /// Annular data: crossings with the core and the twisting about it.
    Annulus { crossings: u64, twisting: Ratio<i128> },
    /// Arcs and closed components inside a piece, ordered by component and
    /// start position.
    Arcs { arcs: Vec<PieceArc> },
}

impl ArcSystem {
    pub fn is_empty(&self) -> bool {
        matches!(self, ArcSystem::Empty)
    }
}

/// Signed twisting of `lambda` about `core`: the average signed length of
/// the shared runs at its crossings, in units of the core's length.  Each
/// twist about the core shifts the value by one.
pub fn twisting_number(lambda: &MultiCurve, core: &NormalCurve) -> Result<Ratio<i128>> {
    let core_len = core.walk().len() as i128;
    let mut total = 0i128;
    let mut count = 0i128;
    for c in lambda.components() {
        for cr in crossings(c, core)? {
            total += i128::from(cr.sense) * cr.len as i128;
            count += 1;
        }
    }
    if count == 0 {
        return Err(CurveError::DoesNotMeet);
    }
    Ok(Ratio::new(total, core_len * count))
}

/// Essential intersection of `lambda` with the domain; `Empty` when they
/// miss each other, or when the only intersection is a parallel copy of the
/// core or of a boundary component.
pub fn project(lambda: &MultiCurve, y: &SubsurfaceDescriptor) -> Result<ArcSystem> {
    match y {
        SubsurfaceDescriptor::Annulus { core } => {
            let mut total = 0u64;
            for c in lambda.components() {
                total += intersection_number(c, core)?;
            }
            if total == 0 {
                return Ok(ArcSystem::Empty);
            }
            Ok(ArcSystem::Annulus {
                crossings: total,
                twisting: twisting_number(lambda, core)?,
            })
        }
        SubsurfaceDescriptor::Piece { boundary, index } => {
            project_to_piece(lambda, boundary, *index)
        }
    }
}

/// Gap of the boundary cut that `wx[k]` passes through: the number of
/// boundary passages through the same edge that run below it, in the edge's
/// first-end coordinates.
fn gap_position(
    carrier: &Triangulation,
    wx: &[Step],
    k: usize,
    boundary_walks: &[(Vec<Step>, Vec<Step>)],
) -> u64 {
    let (e, d) = wx[k];
    let mut below = 0;
    for (wb, rb) in boundary_walks {
        let n = wb.len();
        for l in 0..n {
            if wb[l].0 != e {
                continue;
            }
            let ord = if wb[l].1 == d {
                transverse_order(carrier, wx, k, wb, l)
            } else {
                transverse_order(carrier, wx, k, rb, n - 1 - l)
            };
            if ord == Ordering::Greater {
                below += 1;
            }
        }
    }
    below
}

fn project_to_piece(lambda: &MultiCurve, boundary: &MultiCurve, index: usize) -> Result<ArcSystem> {
    if lambda.carrier().id() != boundary.carrier().id() {
        return Err(CurveError::CarrierMismatch(
            lambda.carrier().id().to_string(),
            boundary.carrier().id().to_string(),
        ));
    }
    let carrier = boundary.carrier().clone();
    let cut = Cut::new(boundary)?;
    if index >= cut.pieces.len() {
        return Err(CurveError::InvalidParameter(format!(
            "piece index {index} out of range: the cut has {} pieces",
            cut.pieces.len()
        )));
    }

    let boundary_walks: Vec<(Vec<Step>, Vec<Step>)> = boundary
        .components()
        .iter()
        .map(|c| (c.walk().to_vec(), reverse_walk(c.walk())))
        .collect();

    let mut arcs: Vec<PieceArc> = Vec::new();
    for (ci, comp) in lambda.components().iter().enumerate() {
        // A component parallel to the boundary is trivial in every piece.
        if boundary.components().contains(comp) {
            continue;
        }
        let walk = comp.walk();
        let m = walk.len();
        let gaps: Vec<u64> =
            (0..m).map(|k| gap_position(&carrier, walk, k, &boundary_walks)).collect();

        // Draw the component over the cut.  In the triangle entered by step
        // k it runs from the region beside its entry gap to the one beside
        // its exit gap; each chord on that path is one boundary crossing,
        // and the arc after the crossing starts at step k + 1.
        let mut events: Vec<(usize, usize, usize, bool)> = Vec::new();
        for k in 0..m {
            let (e, d) = walk[k];
            let kn = (k + 1) % m;
            let (en, dn) = walk[kn];
            let a = cut.edge_side_region(e, 1 - d as usize, gaps[k]);
            let b = cut.edge_side_region(en, dn as usize, gaps[kn]);
            let t = carrier.step_target(walk[k]);
            for ((ty, depth), after) in cut.triangle_path(t, a, b) {
                let (owner, side) = cut.chord_strand_side(t, ty, depth, after);
                events.push((kn, after, owner, side));
            }
        }
        // The drawing realizes the geometric intersection with the boundary.
        let mut expected = 0;
        for bc in boundary.components() {
            expected += crossings(comp, bc)?.len();
        }
        assert_eq!(events.len(), expected, "drawn crossings match the crossing count");

        if events.is_empty() {
            let (e, d) = walk[0];
            let region = cut.edge_side_region(e, 1 - d as usize, gaps[0]);
            if cut.piece_of_region(region) == index {
                arcs.push(PieceArc {
                    component: ci,
                    start: 0,
                    len: m,
                    steps: walk.to_vec(),
                    ends: None,
                    sides: None,
                });
            }
            continue;
        }

        let n_ev = events.len();
        for j in 0..n_ev {
            let (k1, after, from_bi, from_side) = events[j];
            if cut.piece_of_region(after) != index {
                continue;
            }
            let (k2, _, to_bi, to_side) = events[(j + 1) % n_ev];
            let mut len = (k2 + m - k1) % m;
            if len == 0 && j + 1 == n_ev {
                // All crossings sit in one gap; the final arc wraps the walk.
                len = m;
            }
            let steps = (0..len).map(|o| walk[(k1 + o) % m]).collect();
            arcs.push(PieceArc {
                component: ci,
                start: k1,
                len,
                steps,
                // The arc leaves its first chord on the entered side and
                // meets its last one from the opposite side.
                ends: Some((from_bi, to_bi)),
                sides: Some((from_side, !to_side)),
            });
        }
    }

    if arcs.is_empty() {
        Ok(ArcSystem::Empty)
    } else {
        Ok(ArcSystem::Arcs { arcs })
    }
}
