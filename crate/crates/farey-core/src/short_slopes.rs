//! Slopes that are short in the flat metric of a marked torus.
//!
//! A point `tau = x + iy` of the upper half plane assigns the curve of slope
//! `p/q` the normalized length `E(p/q) = |p - q tau|^2 / y`. This module
//! enumerates every slope with `E <= bound`.

use num_integer::Integer;

use crate::error::{FareyError, Result};
use crate::slope::Slope;

/// Values within this much of the bound count as short, so ties on the
/// boundary are kept rather than lost to rounding.
const BOUNDARY_GUARD: f64 = 1e-12;

/// Hard cap on candidate pairs; the candidate count grows like `pi * bound`,
/// so this only trips on absurd bounds.
const MAX_CANDIDATES: u64 = 10_000_000;

/// All slopes with `E(p/q) <= bound` for `tau = tau_re + i * tau_im`, sorted
/// by `(q, p)`.
///
/// `E(1/0) = 1/tau_im`, and for `q >= 1` only `q <= sqrt(bound / tau_im)`
/// can occur, with `p` confined to an interval around `q * tau_re`; the scan
/// is exhaustive over that window.
pub fn torus_short_slopes(tau_re: f64, tau_im: f64, bound: f64) -> Result<Vec<Slope>> {
    if !(tau_im > 0.0) || !tau_im.is_finite() || !tau_re.is_finite() {
        return Err(FareyError::InvalidParameter(format!(
            "tau = {tau_re} + {tau_im}i is not in the upper half plane"
        )));
    }
    if !bound.is_finite() {
        return Err(FareyError::InvalidParameter(format!(
            "length bound {bound} is not finite"
        )));
    }

    let mut out = Vec::new();
    let cutoff = bound + BOUNDARY_GUARD;
    if 1.0 / tau_im <= cutoff {
        out.push(Slope::INFINITY);
    }
    if bound > 0.0 {
        let q_max = (bound / tau_im).sqrt() + BOUNDARY_GUARD;
        if q_max > MAX_CANDIDATES as f64 {
            return Err(FareyError::InvalidParameter(
                "length bound enumerates too many slopes".into(),
            ));
        }
        let mut candidates = 0u64;
        for q in 1..=(q_max.floor() as i64) {
            let qf = q as f64;
            let spread_sq = bound * tau_im - qf * qf * tau_im * tau_im;
            if spread_sq < -BOUNDARY_GUARD {
                continue;
            }
            let spread = spread_sq.max(0.0).sqrt();
            let center = qf * tau_re;
            let lo = (center - spread - BOUNDARY_GUARD).ceil() as i64;
            let hi = (center + spread + BOUNDARY_GUARD).floor() as i64;
            candidates += (hi - lo + 1).max(0) as u64;
            if candidates > MAX_CANDIDATES {
                return Err(FareyError::InvalidParameter(
                    "length bound enumerates too many slopes".into(),
                ));
            }
            for p in lo..=hi {
                if p.abs().gcd(&q) != 1 {
                    continue;
                }
                let dx = p as f64 - center;
                let energy = (dx * dx + qf * qf * tau_im * tau_im) / tau_im;
                if energy <= cutoff {
                    out.push(Slope::new(p, q).expect("p, q coprime and q > 0"));
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn slope(p: i64, q: i64) -> Slope {
        Slope::new(p, q).unwrap()
    }

    #[test]
    fn square_torus_unit_bound() {
        // At tau = i both 0/1 and 1/0 have E = 1 exactly; nothing else fits.
        let got = torus_short_slopes(0.0, 1.0, 1.0).unwrap();
        assert_eq!(got, vec![Slope::INFINITY, slope(0, 1)]);
    }

    #[test]
    fn sheared_torus_unit_bound() {
        // At tau = 1 + i the shortest finite slope is 1/1, not 0/1.
        let got = torus_short_slopes(1.0, 1.0, 1.0).unwrap();
        assert_eq!(got, vec![Slope::INFINITY, slope(1, 1)]);
    }

    #[test]
    fn square_torus_bound_two() {
        // E(p/q) = p^2 + q^2 at tau = i.
        let got = torus_short_slopes(0.0, 1.0, 2.0).unwrap();
        assert_eq!(
            got,
            vec![Slope::INFINITY, slope(-1, 1), slope(0, 1), slope(1, 1)]
        );
    }

    #[test]
    fn tiny_bound_is_empty() {
        assert!(torus_short_slopes(0.3, 2.0, 0.1).unwrap().is_empty());
    }

    #[test]
    fn lower_half_plane_is_rejected() {
        assert!(torus_short_slopes(0.0, -1.0, 1.0).is_err());
        assert!(torus_short_slopes(0.0, 0.0, 1.0).is_err());
        assert!(torus_short_slopes(f64::NAN, 1.0, 1.0).is_err());
    }

    #[test]
    fn energies_really_are_below_bound() {
        let (x, y, bound) = (0.37, 0.61, 9.0);
        let got = torus_short_slopes(x, y, bound).unwrap();
        assert!(!got.is_empty());
        for s in &got {
            let e = if s.is_infinity() {
                1.0 / y
            } else {
                let dx = s.p() as f64 - s.q() as f64 * x;
                (dx * dx + (s.q() as f64 * y).powi(2)) / y
            };
            assert!(e <= bound + 2.0 * BOUNDARY_GUARD, "{s} has E = {e}");
        }
        // Completeness spot check against a wide brute-force window.
        let mut brute = Vec::new();
        if 1.0 / y <= bound + BOUNDARY_GUARD {
            brute.push(Slope::INFINITY);
        }
        for q in 1..=10i64 {
            for p in -20..=20i64 {
                if p.abs().gcd(&q) != 1 {
                    continue;
                }
                let dx = p as f64 - q as f64 * x;
                if (dx * dx + (q as f64 * y).powi(2)) / y <= bound + BOUNDARY_GUARD {
                    brute.push(slope(p, q));
                }
            }
        }
        brute.sort();
        assert_eq!(got, brute);
    }
}
