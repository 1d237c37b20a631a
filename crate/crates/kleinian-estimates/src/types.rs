//! Value types shared by the estimate and trace-map routines.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{EstimateError, Result};

/// Relative tolerance on the trace relation when validating a seed.
pub const SEED_TOLERANCE: f64 = 1e-9;

/// Serde adapter: a complex number on the wire is the two-element array
/// `[re, im]`.
pub mod complex_pair {
    use num_complex::Complex64;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(c: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        let mut tup = s.serialize_seq(Some(2))?;
        use serde::ser::SerializeSeq;
        tup.serialize_element(&c.re)?;
        tup.serialize_element(&c.im)?;
        tup.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let parts = <[f64; 2]>::deserialize(d)?;
        if !parts[0].is_finite() || !parts[1].is_finite() {
            return Err(D::Error::custom("complex component is not finite"));
        }
        Ok(Complex64::new(parts[0], parts[1]))
    }
}

/// Complex translation length `ell + i theta` of a loxodromic isometry.
///
/// `ell` is the real translation length and `theta` the rotation angle.  The
/// length is only defined modulo `2 pi i`, so construction normalizes the
/// angle into `(-pi, pi]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ComplexLength {
    ell: f64,
    theta: f64,
}

/// Magnitude cap on stored coordinates.  Far beyond anything geometric, but
/// keeps squares finite so the parameter maps stay total.
const MAGNITUDE_CAP: f64 = 1e100;

impl ComplexLength {
    pub fn new(ell: f64, theta: f64) -> Result<Self> {
        if !ell.is_finite() || ell <= 0.0 {
            return Err(EstimateError::InvalidParameter(format!(
                "translation length {ell} must be positive"
            )));
        }
        if ell > MAGNITUDE_CAP {
            return Err(EstimateError::InvalidParameter(format!(
                "translation length {ell} is absurdly large"
            )));
        }
        if !theta.is_finite() {
            return Err(EstimateError::InvalidParameter(format!(
                "rotation angle {theta} must be finite"
            )));
        }
        let mut t = theta.rem_euclid(TAU);
        if t > PI {
            t -= TAU;
        }
        Ok(ComplexLength { ell, theta: t })
    }

    pub fn ell(&self) -> f64 {
        self.ell
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// The value `ell + i theta`.
    pub fn as_complex(&self) -> Complex64 {
        Complex64::new(self.ell, self.theta)
    }
}

impl<'de> Deserialize<'de> for ComplexLength {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            ell: f64,
            theta: f64,
        }
        let raw = Raw::deserialize(d)?;
        ComplexLength::new(raw.ell, raw.theta).map_err(serde::de::Error::custom)
    }
}

/// Point `x + i y` of the upper half plane, `y > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct UHPoint {
    x: f64,
    y: f64,
}

impl UHPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !x.is_finite() || x.abs() > MAGNITUDE_CAP {
            return Err(EstimateError::InvalidParameter(format!(
                "real part {x} out of range"
            )));
        }
        if !y.is_finite() || y <= 0.0 || y > MAGNITUDE_CAP {
            return Err(EstimateError::InvalidParameter(format!(
                "imaginary part {y} must be positive"
            )));
        }
        Ok(UHPoint { x, y })
    }

    /// The basepoint `i`.
    pub fn basepoint() -> Self {
        UHPoint { x: 0.0, y: 1.0 }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn as_complex(&self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }
}

impl<'de> Deserialize<'de> for UHPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            x: f64,
            y: f64,
        }
        let raw = Raw::deserialize(d)?;
        UHPoint::new(raw.x, raw.y).map_err(serde::de::Error::custom)
    }
}

/// Nonnegative projection coefficients for a family of subsurfaces, plus the
/// distinguished twisting count `d_gamma` of the curve itself.
///
/// Subsurfaces are keyed by caller-chosen labels; the map stays sorted so
/// serialized output is deterministic.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientSet {
    pub d_gamma: u64,
    #[serde(default)]
    pub subsurface: BTreeMap<String, u64>,
}

impl CoefficientSet {
    pub fn new(d_gamma: u64) -> Self {
        CoefficientSet {
            d_gamma,
            subsurface: BTreeMap::new(),
        }
    }

    pub fn with(mut self, label: &str, value: u64) -> Self {
        self.subsurface.insert(label.to_string(), value);
        self
    }

    /// Sum of the coefficients that meet the threshold `k`.
    pub fn total_above(&self, k: u64) -> u64 {
        self.subsurface.values().filter(|&&v| v >= k).sum()
    }
}

/// Traces `(x, y, z)` of a punctured-torus representation at the slopes
/// `(infinity, 0, 1)`, required to satisfy `x^2 + y^2 + z^2 = xyz`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TraceSeed {
    #[serde(with = "complex_pair")]
    x: Complex64,
    #[serde(with = "complex_pair")]
    y: Complex64,
    #[serde(with = "complex_pair")]
    z: Complex64,
}

/// Relative residual of the trace relation at `(x, y, z)`.
pub fn markov_residual(x: Complex64, y: Complex64, z: Complex64) -> f64 {
    let lhs = x * x + y * y + z * z;
    let rhs = x * y * z;
    (lhs - rhs).norm() / rhs.norm().max(1.0)
}

impl TraceSeed {
    pub fn new(x: Complex64, y: Complex64, z: Complex64) -> Result<Self> {
        for t in [x, y, z] {
            if !t.re.is_finite() || !t.im.is_finite() {
                return Err(EstimateError::InvalidParameter(
                    "seed trace is not finite".to_string(),
                ));
            }
        }
        let residual = markov_residual(x, y, z);
        if residual > SEED_TOLERANCE {
            return Err(EstimateError::InvalidSeed(residual));
        }
        Ok(TraceSeed { x, y, z })
    }

    /// The square punctured torus: traces `(3, 3, 3)`.
    pub fn modular_torus() -> Self {
        let three = Complex64::new(3.0, 0.0);
        TraceSeed {
            x: three,
            y: three,
            z: three,
        }
    }

    /// Completes a partial seed: the two values of `z` compatible with given
    /// `x` and `y`, roots of `z^2 - xyz + (x^2 + y^2) = 0`.
    pub fn solve_z(x: Complex64, y: Complex64) -> [Complex64; 2] {
        let b = x * y;
        let disc = (b * b - 4.0 * (x * x + y * y)).sqrt();
        [(b + disc) / 2.0, (b - disc) / 2.0]
    }

    pub fn x(&self) -> Complex64 {
        self.x
    }

    pub fn y(&self) -> Complex64 {
        self.y
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    /// Traces at the slopes `(infinity, 0, 1)` in that order.
    pub fn triple(&self) -> [Complex64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn residual(&self) -> f64 {
        markov_residual(self.x, self.y, self.z)
    }
}

impl<'de> Deserialize<'de> for TraceSeed {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            #[serde(with = "complex_pair")]
            x: Complex64,
            #[serde(with = "complex_pair")]
            y: Complex64,
            #[serde(with = "complex_pair")]
            z: Complex64,
        }
        let raw = Raw::deserialize(d)?;
        TraceSeed::new(raw.x, raw.y, raw.z).map_err(serde::de::Error::custom)
    }
}
