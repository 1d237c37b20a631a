//! Dehn twists as walk surgery.
//!
//! Twisting a curve about a disjoint curve changes nothing, and each
//! crossing picks up a full traversal of the twisting curve.  On walks that
//! is a splice: at every crossing, insert the twisting cycle, rotated so it
//! continues from the divergence point and directed by the twist sign
//! together with the crossing's local geometry.  Cyclic reduction of the
//! spliced walk lands back in canonical form, so twist identities
//! (inverses compose to the identity, intersection with the axis is
//! preserved) hold on the nose and are asserted.

use std::collections::BTreeMap;

use crate::carrier::Step;
use crate::curve::{reduce_cyclic, reverse_walk, NormalCurve};
use crate::error::{CurveError, Result};
use crate::geometry::{crossings, intersection_number, Flavor};

/// Twist `x` about `about`, `n` times (negative for the opposite handedness).
///
/// `about` must be embedded; `x` and `about` must share a carrier.  Disjoint
/// or parallel curves and `n == 0` return `x` unchanged.
pub fn dehn_twist(x: &NormalCurve, about: &NormalCurve, n: i64) -> Result<NormalCurve> {
    x.same_carrier(about)?;
    if crate::geometry::self_crossing_number(about) != 0 {
        return Err(CurveError::NotSimple(
            "twisting curve crosses itself".to_string(),
        ));
    }
    let cuts = crossings(x, about)?;
    if n == 0 || cuts.is_empty() {
        return Ok(x.clone());
    }

    let xs = x.walk();
    let m = xs.len();
    let fwd = about.walk().to_vec();
    let bwd = reverse_walk(&fwd);
    let la = fwd.len();

    // One pending insertion per crossing, keyed by the walk position of the
    // crossing's divergence point.
    struct Ins {
        sense: i8,
        reversed_strand: bool,
        // Strand index, in its direction-matched walk, at the final shared
        // step of the stretch.
        phase_last: usize,
        len: usize,
        y_start: usize,
        cycle: Vec<Step>,
    }
    let mut pending: BTreeMap<usize, Vec<Ins>> = BTreeMap::new();
    for c in &cuts {
        let at = (c.x_start + c.len) % m;
        let dir = match c.flavor {
            Flavor::Forward => &fwd,
            Flavor::Reverse => &bwd,
        };
        let phase = (c.y_start + c.len) % la;
        let continued: Vec<Step> = (0..la).map(|t| dir[(phase + t) % la]).collect();
        // Handedness: one splice direction per crossing realizes the
        // right-handed twist, flipping with the crossing's side and the sign
        // of n.  The traversal flavor is already absorbed by building the
        // cycle from the direction-matched walk.
        let forward_splice = (c.sense > 0) ^ (n < 0);
        let cycle = if forward_splice {
            continued
        } else {
            reverse_walk(&continued)
        };
        pending.entry(at).or_default().push(Ins {
            sense: c.sense,
            reversed_strand: c.flavor == Flavor::Reverse,
            phase_last: (c.y_start + c.len - 1) % la,
            len: c.len,
            y_start: c.y_start,
            cycle,
        });
    }
    // Crossings sharing a divergence point are crossed by x in the
    // transverse order of their strands, nearest first.  Strands that never
    // separate are crossed from opposite sides and commute.
    let carrier = x.carrier().as_ref();
    for v in pending.values_mut() {
        v.sort_by(|a, b| {
            if a.sense != b.sense {
                return a.sense.cmp(&b.sense);
            }
            let da: &Vec<Step> = if a.reversed_strand { &bwd } else { &fwd };
            let db: &Vec<Step> = if b.reversed_strand { &bwd } else { &fwd };
            for t in 1..=2 * la {
                let ua = da[(a.phase_last + t) % la];
                let ub = db[(b.phase_last + t) % la];
                if ua != ub {
                    let prev = da[(a.phase_last + t - 1) % la];
                    debug_assert_eq!(prev, db[(b.phase_last + t - 1) % la]);
                    let mu = crate::geometry::divergence_sense(carrier, prev, ua, ub);
                    return if mu == a.sense {
                        std::cmp::Ordering::Greater
                    } else {
                        std::cmp::Ordering::Less
                    };
                }
            }
            (a.len, a.y_start, a.reversed_strand).cmp(&(b.len, b.y_start, b.reversed_strand))
        });
    }

    let copies = n.unsigned_abs() as usize;
    let mut spliced = Vec::with_capacity(m + cuts.len() * copies * la);
    for (p, &step) in xs.iter().enumerate() {
        if let Some(ins) = pending.get(&p) {
            for one in ins {
                for _ in 0..copies {
                    spliced.extend_from_slice(&one.cycle);
                }
            }
        }
        spliced.push(step);
    }

    let result = NormalCurve::from_reduced_walk(x.carrier(), reduce_cyclic(spliced))?;
    let before = cuts.len() as u64;
    let after = intersection_number(&result, about)?;
    assert_eq!(
        after, before,
        "twisting must preserve intersection with the axis"
    );
    debug_assert_eq!(crate::geometry::self_crossing_number(&result), 0);
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carrier::{builtin, GENUS_TWO, PUNCTURED_TORUS};
    use crate::curve::{torus_slope_coords, torus_slope_of, NormalCurve};
    use farey_core::Slope;

    fn torus_curve(p: i64, q: i64) -> NormalCurve {
        let t = builtin(PUNCTURED_TORUS).unwrap();
        NormalCurve::from_coords(&t, &torus_slope_coords(&Slope::new(p, q).unwrap())).unwrap()
    }

    fn twisted_slope(a: (i64, i64), x: (i64, i64), n: i64) -> (i64, i64) {
        // x + n <a, x> a with <(a,b),(p,q)> = aq - bp, reduced with q >= 0.
        let pairing = a.0 * x.1 - a.1 * x.0;
        // The twist acts unimodularly, so the image of a primitive vector is
        // primitive; no gcd reduction is needed.
        (x.0 + n * pairing * a.0, x.1 + n * pairing * a.1)
    }

    #[test]
    fn torus_pin_five_twists() {
        let axis = torus_curve(1, 0);
        let x = torus_curve(0, 1);
        let got = dehn_twist(&x, &axis, 5).unwrap();
        assert_eq!(torus_slope_of(&got).unwrap(), Slope::new(5, 1).unwrap());
    }

    #[test]
    fn torus_twists_match_the_linear_action() {
        let slopes = [(1, 0), (0, 1), (1, 1), (-1, 1), (2, 1), (1, 2), (-3, 2)];
        for &a in &slopes {
            let axis = torus_curve(a.0, a.1);
            for &x in &slopes {
                let c = torus_curve(x.0, x.1);
                for n in [-3i64, -1, 1, 2, 3] {
                    let got = dehn_twist(&c, &axis, n).unwrap();
                    let want = twisted_slope(a, x, n);
                    assert_eq!(
                        torus_slope_of(&got).unwrap(),
                        Slope::new(want.0, want.1).unwrap(),
                        "T_{a:?}^{n}({x:?})"
                    );
                }
            }
        }
    }

    #[test]
    fn zero_and_disjoint_twists_are_identities() {
        let g2 = builtin(GENUS_TWO).unwrap();
        let a1 = NormalCurve::from_word(&g2, &[1]).unwrap();
        let a2 = NormalCurve::from_word(&g2, &[3]).unwrap();
        let b1 = NormalCurve::from_word(&g2, &[2]).unwrap();
        assert_eq!(dehn_twist(&b1, &a1, 0).unwrap(), b1);
        assert_eq!(dehn_twist(&a2, &a1, 7).unwrap(), a2);
    }

    #[test]
    fn twist_growth_is_linear_in_the_twist_count() {
        let g2 = builtin(GENUS_TWO).unwrap();
        let a1 = NormalCurve::from_word(&g2, &[1]).unwrap();
        let b1 = NormalCurve::from_word(&g2, &[2]).unwrap();
        assert_eq!(intersection_number(&a1, &b1).unwrap(), 1);
        for n in [-4i64, -1, 1, 3, 6] {
            let t = dehn_twist(&b1, &a1, n).unwrap();
            assert_eq!(intersection_number(&t, &a1).unwrap(), 1);
            assert_eq!(intersection_number(&t, &b1).unwrap(), n.unsigned_abs());
        }
    }

    #[test]
    fn opposite_twists_invert() {
        let g2 = builtin(GENUS_TWO).unwrap();
        let a1 = NormalCurve::from_word(&g2, &[1]).unwrap();
        let b1 = NormalCurve::from_word(&g2, &[2]).unwrap();
        let b2 = NormalCurve::from_word(&g2, &[4]).unwrap();
        let mut c = b1.clone();
        for (axis, n) in [(&a1, 3i64), (&b2, -2), (&a1, -1)] {
            c = dehn_twist(&c, axis, n).unwrap();
        }
        for (axis, n) in [(&a1, 1i64), (&b2, 2), (&a1, -3)] {
            c = dehn_twist(&c, axis, n).unwrap();
        }
        assert_eq!(c, b1);
    }
}
