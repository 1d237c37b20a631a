//! Twisting of a lamination around a torus curve.
//!
//! Move the curve to infinity by its canonical basis change; the images of the
//! two boundary endpoints then differ by a real number `w` whose size measures
//! how much the lamination wraps around the curve. The twisting count is
//! `floor(|w|) + 1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{FareyError, Result};
use crate::real_slope::RealSlope;
use crate::slope::Slope;
use crate::surd::{QuadSurd, SurdValue};
use crate::unimodular::{basis_change_to_infinity, UnimodularMap};
use crate::DEFAULT_PRECISION;

/// Interval-evaluation rungs for values spanning two quadratic fields.
const DIGIT_LADDER: [u32; 2] = [30, 60];

/// The difference `w` of the endpoint images: exact when both endpoints land
/// in one quadratic field, otherwise a certified enclosure.
#[derive(Clone, Debug, PartialEq)]
pub enum WCoefficient {
    Exact(SurdValue),
    /// `value` is within `bound` of the true difference.
    Approx { value: f64, bound: f64 },
}

impl WCoefficient {
    pub fn to_f64(&self) -> f64 {
        match self {
            WCoefficient::Exact(v) => v.to_f64(),
            WCoefficient::Approx { value, .. } => *value,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, WCoefficient::Exact(_))
    }
}

/// `w` for the curve `alpha` and the endpoint pair, at the default precision.
pub fn w_coefficient(
    alpha: &Slope,
    plus: &RealSlope,
    minus: &RealSlope,
) -> Result<WCoefficient> {
    w_coefficient_with_precision(alpha, plus, minus, DEFAULT_PRECISION)
}

/// As [`w_coefficient`], with an explicit enclosure width for the
/// mixed-field fallback. Exact results ignore `precision`.
pub fn w_coefficient_with_precision(
    alpha: &Slope,
    plus: &RealSlope,
    minus: &RealSlope,
    precision: f64,
) -> Result<WCoefficient> {
    if !(precision > 0.0) {
        return Err(FareyError::InvalidParameter(format!(
            "precision {precision} must be positive"
        )));
    }
    let (ip, im) = endpoint_images(alpha, plus, minus)?;
    if let Some(w) = ip.checked_sub(&im) {
        return Ok(WCoefficient::Exact(w));
    }
    let target = BigRational::from_float(precision)
        .ok_or_else(|| FareyError::InvalidParameter(format!("precision {precision}")))?;
    for digits in DIGIT_LADDER {
        let (lo, hi) = difference_interval(&ip, &im, digits);
        let width = &hi - &lo;
        if width <= target {
            let mid = (lo + hi) / BigRational::from_integer(BigInt::from(2));
            return Ok(WCoefficient::Approx {
                value: mid.to_f64().unwrap_or(f64::NAN),
                bound: width.to_f64().unwrap_or(f64::INFINITY),
            });
        }
    }
    Err(FareyError::PrecisionExhausted(
        "evaluating the twisting coefficient",
    ))
}

/// Twisting count `floor(|w|) + 1`, exact in every case: mixed-field values
/// are pinned down by widening intervals until the floor is decided.
pub fn torus_d_alpha(alpha: &Slope, plus: &RealSlope, minus: &RealSlope) -> Result<u64> {
    let (ip, im) = endpoint_images(alpha, plus, minus)?;
    let floor_abs: BigInt = if let Some(w) = ip.checked_sub(&im) {
        w.abs().floor()
    } else {
        let mut decided = None;
        for digits in DIGIT_LADDER {
            let (lo, hi) = difference_interval(&ip, &im, digits);
            let (alo, ahi) = abs_interval(lo, hi);
            let (flo, fhi) = (alo.floor().to_integer(), ahi.floor().to_integer());
            if flo == fhi {
                decided = Some(flo);
                break;
            }
        }
        decided.ok_or(FareyError::PrecisionExhausted("deciding the twisting count"))?
    };
    let n = floor_abs
        .to_u64()
        .ok_or(FareyError::Overflow("twisting count"))?;
    Ok(n + 1)
}

/// Images of the two endpoints under the basis change sending `alpha` to
/// infinity. Errors when an endpoint is `alpha` itself.
fn endpoint_images(
    alpha: &Slope,
    plus: &RealSlope,
    minus: &RealSlope,
) -> Result<(SurdValue, SurdValue)> {
    if plus.equals_slope(alpha) || minus.equals_slope(alpha) {
        return Err(FareyError::LaminationEqualsCurve);
    }
    let m = basis_change_to_infinity(alpha);
    Ok((apply_moebius(&m, &plus.value())?, apply_moebius(&m, &minus.value())?))
}

/// `x -> (a x + b)/(c x + d)` on an exact real. The only pole is the point
/// sent to infinity, which callers have excluded already.
fn apply_moebius(m: &UnimodularMap, v: &SurdValue) -> Result<SurdValue> {
    let [[a, b], [c, d]] = m.entries();
    match v {
        SurdValue::Rat(r) => {
            let num = BigRational::from_integer(BigInt::from(a)) * r
                + BigRational::from_integer(BigInt::from(b));
            let den = BigRational::from_integer(BigInt::from(c)) * r
                + BigRational::from_integer(BigInt::from(d));
            if den.is_zero() {
                return Err(FareyError::LaminationEqualsCurve);
            }
            Ok(SurdValue::Rat(num / den))
        }
        SurdValue::Quad(q) => {
            let lin = |m: i64, k: i64| -> QuadSurd {
                q.checked_mul(&QuadSurd::from_integer(m))
                    .and_then(|t| t.checked_add(&QuadSurd::from_integer(k)))
                    .expect("integer coefficients stay in the field")
            };
            let num = lin(a, b);
            let den = lin(c, d);
            let out = num
                .checked_div(&den)
                .ok_or(FareyError::LaminationEqualsCurve)?;
            Ok(SurdValue::from_surd(out))
        }
    }
}

fn difference_interval(
    ip: &SurdValue,
    im: &SurdValue,
    digits: u32,
) -> (BigRational, BigRational) {
    let (plo, phi) = ip.interval(digits);
    let (mlo, mhi) = im.interval(digits);
    (plo - mhi, phi - mlo)
}

fn abs_interval(lo: BigRational, hi: BigRational) -> (BigRational, BigRational) {
    if !lo.is_negative() {
        (lo, hi)
    } else if !hi.is_positive() {
        (-hi, -lo)
    } else {
        (BigRational::zero(), (-lo).max(hi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn slope(p: i64, q: i64) -> Slope {
        Slope::new(p, q).unwrap()
    }

    #[test]
    fn golden_pair_gives_sqrt_five() {
        // Around infinity, endpoints phi and -1/phi differ by sqrt(5).
        let plus = RealSlope::periodic(vec![], vec![1]).unwrap();
        let minus = RealSlope::periodic(vec![-1, 2], vec![1]).unwrap();
        let w = w_coefficient(&Slope::INFINITY, &plus, &minus).unwrap();
        match &w {
            WCoefficient::Exact(SurdValue::Quad(q)) => {
                assert_eq!(q.radicand(), &BigInt::from(5));
                assert!((q.to_f64() - 5f64.sqrt()).abs() < 1e-12);
            }
            other => panic!("expected an exact surd, got {other:?}"),
        }
        assert_eq!(torus_d_alpha(&Slope::INFINITY, &plus, &minus).unwrap(), 3);
    }

    #[test]
    fn rational_endpoints_stay_exact() {
        let plus: RealSlope = "7/3".parse().unwrap();
        let minus: RealSlope = "1/3".parse().unwrap();
        let w = w_coefficient(&Slope::INFINITY, &plus, &minus).unwrap();
        assert_eq!(w.to_f64(), 2.0);
        assert_eq!(torus_d_alpha(&Slope::INFINITY, &plus, &minus).unwrap(), 3);
    }

    #[test]
    fn basis_change_is_applied() {
        // Around 0/1 the map is x -> -1/x: endpoints 3 and -2 go to -1/3 and
        // 1/2, so w = -5/6 and the count is 1.
        let plus: RealSlope = "3".parse().unwrap();
        let minus: RealSlope = "-2".parse().unwrap();
        let w = w_coefficient(&slope(0, 1), &plus, &minus).unwrap();
        assert!((w.to_f64() + 5.0 / 6.0).abs() < 1e-15);
        assert_eq!(torus_d_alpha(&slope(0, 1), &plus, &minus).unwrap(), 1);
    }

    #[test]
    fn endpoint_equal_to_curve_is_rejected() {
        let plus: RealSlope = "1/2".parse().unwrap();
        let minus: RealSlope = "5/8".parse().unwrap();
        assert_eq!(
            w_coefficient(&slope(1, 2), &plus, &minus),
            Err(FareyError::LaminationEqualsCurve)
        );
        assert_eq!(
            torus_d_alpha(&slope(5, 8), &plus, &minus),
            Err(FareyError::LaminationEqualsCurve)
        );
    }

    #[test]
    fn mixed_fields_fall_back_to_enclosures() {
        let plus = RealSlope::periodic(vec![1], vec![2]).unwrap(); // sqrt 2
        let minus = RealSlope::periodic(vec![-2, 3], vec![1, 2]).unwrap(); // -sqrt 3
        assert!((minus.to_f64() + 3f64.sqrt()).abs() < 1e-12);
        let w = w_coefficient(&Slope::INFINITY, &plus, &minus).unwrap();
        match w {
            WCoefficient::Approx { value, bound } => {
                assert!((value - (2f64.sqrt() + 3f64.sqrt())).abs() < 1e-9);
                assert!(bound <= DEFAULT_PRECISION);
            }
            other => panic!("expected an enclosure, got {other:?}"),
        }
        assert_eq!(torus_d_alpha(&Slope::INFINITY, &plus, &minus).unwrap(), 4);
    }

    #[test]
    fn precision_must_be_positive() {
        let plus: RealSlope = "3".parse().unwrap();
        let minus: RealSlope = "2".parse().unwrap();
        assert!(matches!(
            w_coefficient_with_precision(&Slope::INFINITY, &plus, &minus, 0.0),
            Err(FareyError::InvalidParameter(_))
        ));
    }
}
