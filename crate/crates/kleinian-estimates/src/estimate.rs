//! Parameter maps between translation lengths and the upper half plane,
//! the hyperbolic metric, and the coefficient-driven height predictions.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{EstimateError, Result};
use crate::types::{CoefficientSet, ComplexLength, UHPoint};

/// Default coefficient threshold for [`conjecture_rhs`].
pub const DEFAULT_THRESHOLD: u64 = 10;

/// Margulis-tube shape parameter `2 pi i / lambda` of a complex length.
///
/// Writing `lambda = ell + i theta`, the value is
/// `(2 pi theta + 2 pi i ell) / (ell^2 + theta^2)`, which always has positive
/// imaginary part, so the map into the upper half plane is total.
pub fn teich_param(lambda: &ComplexLength) -> UHPoint {
    let denom = lambda.ell() * lambda.ell() + lambda.theta() * lambda.theta();
    let x = TAU * lambda.theta() / denom;
    let y = TAU * lambda.ell() / denom;
    UHPoint::new(x, y).expect("ell > 0 and the magnitude cap keep the image in the half plane")
}

/// Inverse of [`teich_param`]: the complex length with `2 pi i / lambda = p`.
pub fn lambda_from_uh(p: &UHPoint) -> Result<ComplexLength> {
    let denom = p.x() * p.x() + p.y() * p.y();
    let ell = TAU * p.y() / denom;
    let theta = TAU * p.x() / denom;
    ComplexLength::new(ell, theta)
}

/// Distance between two points of the upper half plane in the hyperbolic
/// metric, via `cosh d = 1 + |z - w|^2 / (2 Im z Im w)`.
pub fn hyp_distance(a: &UHPoint, b: &UHPoint) -> f64 {
    let dx = a.x() - b.x();
    let dy = a.y() - b.y();
    let cosh_d = 1.0 + (dx * dx + dy * dy) / (2.0 * a.y() * b.y());
    cosh_d.acosh()
}

/// Harmonic-mean bound `2 / (1/l_plus + 1/l_minus)` on the length of a curve
/// from the lengths of its two end realizations.
pub fn bers_upper_bound(l_plus: f64, l_minus: f64) -> Result<f64> {
    for l in [l_plus, l_minus] {
        if !l.is_finite() || l <= 0.0 {
            return Err(EstimateError::InvalidParameter(format!(
                "end length {l} must be positive"
            )));
        }
    }
    Ok(2.0 * l_plus * l_minus / (l_plus + l_minus))
}

/// Predicted half-plane position of a tube parameter from projection
/// coefficients: twisting as the real part, `1` plus the sum of all
/// subsurface coefficients at least `threshold` as the imaginary part.
pub fn conjecture_rhs(coefficients: &CoefficientSet, threshold: u64) -> Result<UHPoint> {
    if threshold == 0 {
        return Err(EstimateError::InvalidParameter(
            "threshold must be at least 1".to_string(),
        ));
    }
    let height = 1 + coefficients.total_above(threshold);
    UHPoint::new(coefficients.d_gamma as f64, height as f64)
}

/// Complex length predicted by [`conjecture_rhs`], via [`lambda_from_uh`].
pub fn conjecture_lambda(coefficients: &CoefficientSet, threshold: u64) -> Result<ComplexLength> {
    lambda_from_uh(&conjecture_rhs(coefficients, threshold)?)
}

/// Complex translation length of an isometry with the given trace, using
/// `lambda = 2 arccosh(t / 2)`.
///
/// Real traces in `[-2, 2]` have no translation length and are reported as
/// errors; every other trace yields `ell > 0`.
pub fn complex_length_from_trace(t: Complex64) -> Result<ComplexLength> {
    if !t.re.is_finite() || !t.im.is_finite() {
        return Err(EstimateError::InvalidParameter(
            "trace is not finite".to_string(),
        ));
    }
    if t.im == 0.0 {
        if t.re == 2.0 || t.re == -2.0 {
            return Err(EstimateError::Parabolic);
        }
        if t.re.abs() < 2.0 {
            return Err(EstimateError::EllipticOrParabolic);
        }
    }
    let lambda = (t / 2.0).acosh() * 2.0;
    ComplexLength::new(lambda.re, lambda.im)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn tube_parameter_of_plain_two_pi_is_i() {
        let l = ComplexLength::new(TAU, 0.0).unwrap();
        let p = teich_param(&l);
        assert!(p.x().abs() < 1e-15);
        assert!((p.y() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn tube_parameter_of_short_twisted_length() {
        let l = ComplexLength::new(0.1, 0.1).unwrap();
        let p = teich_param(&l);
        assert!((p.x() - 10.0 * PI).abs() < 1e-9);
        assert!((p.y() - 10.0 * PI).abs() < 1e-9);
    }

    #[test]
    fn parameter_maps_invert_each_other() {
        let l = ComplexLength::new(0.37, -2.6).unwrap();
        let back = lambda_from_uh(&teich_param(&l)).unwrap();
        assert!((back.ell() - l.ell()).abs() < 1e-12);
        assert!((back.theta() - l.theta()).abs() < 1e-12);
    }

    #[test]
    fn distance_doubling_height_is_log_two() {
        let a = UHPoint::new(0.0, 1.0).unwrap();
        let b = UHPoint::new(0.0, 2.0).unwrap();
        assert!((hyp_distance(&a, &b) - 2.0f64.ln()).abs() < 1e-12);
        assert_eq!(hyp_distance(&a, &a), 0.0);
    }

    #[test]
    fn harmonic_mean_bound_hits_examples() {
        assert_eq!(bers_upper_bound(1.0, 3.0).unwrap(), 1.5);
        assert_eq!(bers_upper_bound(2.0, 2.0).unwrap(), 2.0);
        assert!(bers_upper_bound(0.0, 1.0).is_err());
        assert!(bers_upper_bound(1.0, -3.0).is_err());
    }

    #[test]
    fn predicted_position_sums_coefficients_over_threshold() {
        let c = CoefficientSet::new(7).with("a", 10).with("b", 3);
        let p = conjecture_rhs(&c, 5).unwrap();
        assert_eq!((p.x(), p.y()), (7.0, 11.0));
        let p = conjecture_rhs(&c, DEFAULT_THRESHOLD).unwrap();
        assert_eq!((p.x(), p.y()), (7.0, 11.0));
        let p = conjecture_rhs(&c, 11).unwrap();
        assert_eq!((p.x(), p.y()), (7.0, 1.0));
        assert!(conjecture_rhs(&c, 0).is_err());
    }

    #[test]
    fn predicted_length_is_consistent_with_position() {
        let c = CoefficientSet::new(7).with("a", 10).with("b", 3);
        let l = conjecture_lambda(&c, 5).unwrap();
        let p = teich_param(&l);
        assert!((p.x() - 7.0).abs() < 1e-12);
        assert!((p.y() - 11.0).abs() < 1e-12);
    }

    #[test]
    fn trace_three_gives_twice_arccosh_three_halves() {
        let l = complex_length_from_trace(Complex64::new(3.0, 0.0)).unwrap();
        assert!((l.ell() - 1.9248473002384139).abs() < 1e-12);
        assert_eq!(l.theta(), 0.0);
    }

    #[test]
    fn negative_real_trace_gains_a_full_turn_then_normalizes() {
        // acosh(-3/2) has imaginary part pi, so lambda = ell + 2 pi i; the
        // angle folds back to 0.
        let l = complex_length_from_trace(Complex64::new(-3.0, 0.0)).unwrap();
        assert!((l.ell() - 1.9248473002384139).abs() < 1e-12);
        assert!(l.theta().abs() < 1e-9);
    }

    #[test]
    fn degenerate_traces_are_refused_by_kind() {
        for t in [2.0, -2.0] {
            assert_eq!(
                complex_length_from_trace(Complex64::new(t, 0.0)),
                Err(EstimateError::Parabolic)
            );
        }
        for t in [0.0, 1.5, -1.99] {
            assert_eq!(
                complex_length_from_trace(Complex64::new(t, 0.0)),
                Err(EstimateError::EllipticOrParabolic)
            );
        }
        // Any nonreal trace is loxodromic.
        assert!(complex_length_from_trace(Complex64::new(0.0, 0.1)).is_ok());
    }

    #[test]
    fn trace_and_length_round_trip() {
        let samples = [
            Complex64::new(3.0, 0.0),
            Complex64::new(2.5, -4.0),
            Complex64::new(-17.0, 0.3),
            Complex64::new(0.0, 2.0),
        ];
        for t in samples {
            let l = complex_length_from_trace(t).unwrap();
            let back = (l.as_complex() / 2.0).cosh() * 2.0;
            // Normalizing theta can flip the sign of the recovered trace.
            let close = (back - t).norm() < 1e-9 * t.norm().max(1.0)
                || (back + t).norm() < 1e-9 * t.norm().max(1.0);
            assert!(close, "trace {t} came back as {back}");
        }
    }
}
