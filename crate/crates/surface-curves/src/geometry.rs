//! Crossing geometry between reduced walks.
//!
//! Realize two curves geodesically: inside a triangle, chords cutting
//! different corners have non-interleaved endpoints and never cross, so every
//! transverse crossing sits inside a maximal run of shared edge crossings
//! where the strands travel in parallel.  A maximal run carries exactly one
//! crossing when the strands peel away to opposite sides at its two ends, and
//! none otherwise.  Enumerating maximal runs therefore counts geometric
//! intersection numbers exactly, and the run bookkeeping (phases and senses)
//! is what the twist surgery in `twist` consumes.

use crate::carrier::{Step, Triangulation};
use crate::curve::{reverse_walk, NormalCurve};
use crate::error::Result;

/// Which way the second curve travels along a shared run, relative to the
/// first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    Forward,
    Reverse,
}

/// One maximal shared run that carries a crossing.
#[derive(Debug, Clone)]
pub struct Crossing {
    /// Start of the run in the first walk.
    pub x_start: usize,
    /// Number of shared edge crossings.
    pub len: usize,
    /// Start of the run in the second walk, in the traversal direction given
    /// by `flavor` (indices into the reversed walk for `Reverse`).
    pub y_start: usize,
    pub flavor: Flavor,
    /// +1 when the first curve exits the divergence triangle through the
    /// counterclockwise-next slot, -1 otherwise.  Equal at both ends of a
    /// run that crosses; this stores the shared value.
    pub sense: i8,
}

fn slot_in(carrier: &Triangulation, t: usize, edge: usize) -> usize {
    carrier
        .triangle(t)
        .iter()
        .position(|&e| e == edge)
        .expect("step leaves through a side of its triangle")
}

/// Sense of a divergence: both strands crossed `last` into the same triangle
/// and now leave through different sides.
pub(crate) fn divergence_sense(carrier: &Triangulation, last: Step, sx: Step, sy: Step) -> i8 {
    let t = carrier.step_target(last);
    debug_assert_eq!(carrier.step_source(sx), t);
    debug_assert_eq!(carrier.step_source(sy), t);
    let s = carrier.step_target_slot(last) as usize;
    let kx = slot_in(carrier, t, sx.0);
    let ky = slot_in(carrier, t, sy.0);
    debug_assert_ne!(kx, ky);
    debug_assert_ne!(kx, s, "reduced walks cannot backtrack");
    debug_assert_ne!(ky, s, "reduced walks cannot backtrack");
    if kx == (s + 1) % 3 {
        1
    } else {
        -1
    }
}

fn rev_step(s: Step) -> Step {
    (s.0, 1 - s.1)
}

/// Relative position of two strand passages through a common edge, in the
/// edge's first-end coordinates.  Both passages must cross with the same
/// step; reverse one walk first when the directions disagree.  The answer
/// follows both strands forward to their divergence and carries the corner
/// sense back through the corridor's coordinate reversals, which is exactly
/// the order a simultaneous taut drawing realizes.
pub(crate) fn transverse_order(
    carrier: &Triangulation,
    wx: &[Step],
    k: usize,
    wy: &[Step],
    l: usize,
) -> std::cmp::Ordering {
    let (m, n) = (wx.len(), wy.len());
    debug_assert_eq!(wx[k], wy[l], "passages must share an edge and direction");
    let mut j = 1;
    while wx[(k + j) % m] == wy[(l + j) % n] {
        j += 1;
        assert!(j <= m + n, "passages of distinct primitive strands diverge");
    }
    let sense =
        divergence_sense(carrier, wx[(k + j - 1) % m], wx[(k + j) % m], wy[(l + j) % n]);
    // A step leaving through end 0 enters the far triangle through end 1,
    // where the slot position runs against the point index; every transit
    // reverses the nesting once more, and leaving through end 1 reverses
    // the exit position back into point coordinates.
    let mut flipped = false;
    for t in 0..j - 1 {
        let d0 = wx[(k + t) % m].1;
        let d1 = wx[(k + t + 1) % m].1;
        flipped ^= (d0 == 0) ^ true ^ (d1 == 1);
    }
    flipped ^= wx[(k + j - 1) % m].1 == 0;
    // The strand peeling off through the counterclockwise-next slot is the
    // one entering at the larger slot position.
    if (sense > 0) ^ flipped {
        std::cmp::Ordering::Greater
    } else {
        std::cmp::Ordering::Less
    }
}

/// All crossings between two reduced cyclic walks.  Runs that wrap both
/// walks completely (parallel curves) carry no crossing and are skipped.
/// With `skip_identity`, the identity alignment of a walk against itself is
/// ignored; used for self-crossing counts.
fn crossings_of_walks(
    carrier: &Triangulation,
    x: &[Step],
    y: &[Step],
    skip_identity: bool,
) -> Vec<Crossing> {
    let m = x.len();
    let mut out = Vec::new();
    if m == 0 || y.is_empty() {
        return out;
    }
    for flavor in [Flavor::Forward, Flavor::Reverse] {
        let yy: Vec<Step> = match flavor {
            Flavor::Forward => y.to_vec(),
            Flavor::Reverse => reverse_walk(y),
        };
        let n = yy.len();
        for i in 0..m {
            for j in 0..n {
                if yy[j] != x[i] {
                    continue;
                }
                if skip_identity && flavor == Flavor::Forward && i == j {
                    continue;
                }
                // A run is enumerated once, at the alignment where it cannot
                // extend to the left.
                let prev_matches = x[(i + m - 1) % m] == yy[(j + n - 1) % n]
                    && !(skip_identity
                        && flavor == Flavor::Forward
                        && (i + m - 1) % m == (j + n - 1) % n);
                if prev_matches {
                    continue;
                }
                let mut len = 1;
                while len < m + n {
                    let xi = (i + len) % m;
                    let yj = (j + len) % n;
                    if skip_identity && flavor == Flavor::Forward && xi == yj {
                        break;
                    }
                    if x[xi] != yy[yj] {
                        break;
                    }
                    len += 1;
                }
                if len >= m + n {
                    // Bi-infinite agreement of primitive cyclic words: the
                    // curves are parallel and never cross.
                    continue;
                }
                let sense_r = divergence_sense(
                    carrier,
                    x[(i + len - 1) % m],
                    x[(i + len) % m],
                    yy[(j + len) % n],
                );
                let sense_l = divergence_sense(
                    carrier,
                    rev_step(x[i]),
                    rev_step(x[(i + m - 1) % m]),
                    rev_step(yy[(j + n - 1) % n]),
                );
                // Opposite-side peel-offs can be drawn disjointly through the
                // corridor; same-side peel-offs force one crossing.
                if sense_l == sense_r {
                    out.push(Crossing {
                        x_start: i,
                        len,
                        y_start: j,
                        flavor,
                        sense: sense_r,
                    });
                }
            }
        }
    }
    out
}

/// Crossings of two curves on a shared carrier, with run data.
pub fn crossings(x: &NormalCurve, y: &NormalCurve) -> Result<Vec<Crossing>> {
    x.same_carrier(y)?;
    Ok(crossings_of_walks(x.carrier(), x.walk(), y.walk(), false))
}

/// Geometric intersection number.  Symmetric; zero exactly when the curves
/// are disjoint or parallel.
pub fn intersection_number(x: &NormalCurve, y: &NormalCurve) -> Result<u64> {
    Ok(crossings(x, y)?.len() as u64)
}

/// Raw crossing count of a walk against itself, identity alignment excluded.
/// Zero exactly for embedded curves; a positive value double-counts most
/// self-crossings, so treat it as a flag rather than a tally.
pub fn self_crossing_number(x: &NormalCurve) -> u64 {
    crossings_of_walks(x.carrier(), x.walk(), x.walk(), true).len() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carrier::{builtin, GENUS_THREE, GENUS_TWO, PUNCTURED_TORUS};
    use crate::curve::{torus_slope_coords, NormalCurve};
    use farey_core::Slope;

    fn torus_curve(p: i64, q: i64) -> NormalCurve {
        let t = builtin(PUNCTURED_TORUS).unwrap();
        NormalCurve::from_coords(&t, &torus_slope_coords(&Slope::new(p, q).unwrap())).unwrap()
    }

    #[test]
    fn torus_intersections_match_determinants() {
        let slopes = [(0, 1), (1, 0), (1, 1), (-1, 1), (1, 2), (2, 1), (3, 2), (-2, 3), (5, 3)];
        for &(p, q) in &slopes {
            for &(r, s) in &slopes {
                let want = (i128::from(p) * i128::from(s) - i128::from(q) * i128::from(r))
                    .unsigned_abs() as u64;
                let got = intersection_number(&torus_curve(p, q), &torus_curve(r, s)).unwrap();
                assert_eq!(got, want, "i({p}/{q}, {r}/{s})");
            }
        }
    }

    #[test]
    fn intersection_is_symmetric_and_vanishes_on_equals() {
        let a = torus_curve(3, 5);
        let b = torus_curve(-2, 7);
        assert_eq!(
            intersection_number(&a, &b).unwrap(),
            intersection_number(&b, &a).unwrap()
        );
        assert_eq!(intersection_number(&a, &a.clone()).unwrap(), 0);
    }

    #[test]
    fn carrier_mismatch_is_an_error() {
        let a = torus_curve(0, 1);
        let g2 = builtin(GENUS_TWO).unwrap();
        let b = NormalCurve::from_word(&g2, &[1]).unwrap();
        assert!(intersection_number(&a, &b).is_err());
    }

    #[test]
    fn handle_generators_cross_once_within_a_handle_and_never_across() {
        let g2 = builtin(GENUS_TWO).unwrap();
        let a1 = NormalCurve::from_word(&g2, &[1]).unwrap();
        let b1 = NormalCurve::from_word(&g2, &[2]).unwrap();
        let a2 = NormalCurve::from_word(&g2, &[3]).unwrap();
        let b2 = NormalCurve::from_word(&g2, &[4]).unwrap();
        assert_eq!(intersection_number(&a1, &b1).unwrap(), 1);
        assert_eq!(intersection_number(&a2, &b2).unwrap(), 1);
        for (x, y) in [(&a1, &a2), (&a1, &b2), (&b1, &a2), (&b1, &b2)] {
            assert_eq!(intersection_number(x, y).unwrap(), 0, "handles are disjoint");
        }
    }

    #[test]
    fn commutator_boundary_separates_the_handles() {
        let g2 = builtin(GENUS_TWO).unwrap();
        let sep = NormalCurve::from_word(&g2, &[1, 2, -1, -2]).unwrap();
        for w in [&[1][..], &[2], &[3], &[4]] {
            let g = NormalCurve::from_word(&g2, w).unwrap();
            assert_eq!(
                intersection_number(&sep, &g).unwrap(),
                0,
                "separating curve misses {w:?}"
            );
        }
        assert_eq!(self_crossing_number(&sep), 0);
    }

    #[test]
    fn genus_three_chain_behaves() {
        let g3 = builtin(GENUS_THREE).unwrap();
        let a1 = NormalCurve::from_word(&g3, &[1]).unwrap();
        let b3 = NormalCurve::from_word(&g3, &[6]).unwrap();
        let a3 = NormalCurve::from_word(&g3, &[5]).unwrap();
        assert_eq!(intersection_number(&a1, &b3).unwrap(), 0);
        assert_eq!(intersection_number(&a3, &b3).unwrap(), 1);
    }

    #[test]
    fn fixture_curves_are_embedded() {
        let g2 = builtin(GENUS_TWO).unwrap();
        for w in [&[1][..], &[2], &[3], &[4], &[1, 2, -1, -2], &[3, 4, -3, -4]] {
            let c = NormalCurve::from_word(&g2, w).unwrap();
            assert_eq!(self_crossing_number(&c), 0, "{w:?}");
        }
    }
}
