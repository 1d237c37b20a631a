//! Boundary points of the hyperbolic plane that arise as ending data:
//! rationals (closed curves) and quadratic irrationals (irrational
//! laminations), the latter given by eventually periodic continued fractions.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::Error as DeError;
use serde::ser::Error as SerError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cf::{cf_to_rational, rational_cf};
use crate::error::{FareyError, Result};
use crate::slope::Slope;
use crate::surd::{periodic_cf_value, QuadSurd, SurdValue};

/// A point of the boundary circle, held exactly.
///
/// Quadratic points carry both their continued-fraction presentation and the
/// evaluated surd; the two stay consistent by construction. Equality is
/// representational (same presentation), not semantic; compare via [`Self::value`]
/// when two different presentations might denote one number.
#[derive(Clone, Debug, PartialEq)]
pub enum RealSlope {
    Rational(BigRational),
    Quadratic {
        preperiod: Vec<i64>,
        period: Vec<i64>,
        value: QuadSurd,
    },
}

impl RealSlope {
    pub fn from_rational(r: BigRational) -> RealSlope {
        RealSlope::Rational(r)
    }

    /// The finite slope `p/q` as a boundary point. Infinity is rejected:
    /// boundary data here is always finite (apply a basis change first).
    pub fn from_slope(s: &Slope) -> Result<RealSlope> {
        if s.is_infinity() {
            return Err(FareyError::InvalidSlope(
                "infinite slope is not a finite boundary point".into(),
            ));
        }
        Ok(RealSlope::Rational(BigRational::new(
            BigInt::from(s.p()),
            BigInt::from(s.q()),
        )))
    }

    /// The eventually periodic continued fraction `[pre..; period.. repeating]`.
    pub fn periodic(preperiod: Vec<i64>, period: Vec<i64>) -> Result<RealSlope> {
        let value = periodic_cf_value(&preperiod, &period)?;
        Ok(RealSlope::Quadratic {
            preperiod,
            period,
            value,
        })
    }

    /// A rational point from a plain (finite) continued fraction.
    pub fn from_cf(terms: &[i64]) -> Result<RealSlope> {
        Ok(RealSlope::Rational(cf_to_rational(terms)?))
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, RealSlope::Rational(_))
    }

    /// The exact value.
    pub fn value(&self) -> SurdValue {
        match self {
            RealSlope::Rational(r) => SurdValue::Rat(r.clone()),
            RealSlope::Quadratic { value, .. } => SurdValue::Quad(value.clone()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.value().to_f64()
    }

    /// Whether this boundary point is the slope `s` itself. Quadratic points
    /// are irrational and never equal a slope; infinity never equals a
    /// rational point.
    pub fn equals_slope(&self, s: &Slope) -> bool {
        match self {
            RealSlope::Rational(r) => {
                !s.is_infinity()
                    && *r == BigRational::new(BigInt::from(s.p()), BigInt::from(s.q()))
            }
            RealSlope::Quadratic { .. } => false,
        }
    }
}

impl fmt::Display for RealSlope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealSlope::Rational(r) => write!(f, "{r}"),
            RealSlope::Quadratic {
                preperiod, period, ..
            } => {
                write!(f, "[")?;
                for (i, t) in preperiod.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{t}")?;
                }
                if !preperiod.is_empty() {
                    write!(f, "; ")?;
                }
                write!(f, "(")?;
                for (i, t) in period.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{t}")?;
                }
                write!(f, ")]")
            }
        }
    }
}

/// Wire form: `{"preperiod": [...], "period": [...]}` with an empty period for
/// rationals; `"p/q"` strings and bare integers are accepted on input.
impl Serialize for RealSlope {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            preperiod: Vec<i64>,
            period: &'a [i64],
        }
        let wire = match self {
            RealSlope::Rational(r) => Wire {
                preperiod: rational_cf(r).map_err(S::Error::custom)?,
                period: &[],
            },
            RealSlope::Quadratic {
                preperiod, period, ..
            } => Wire {
                preperiod: preperiod.clone(),
                period,
            },
        };
        wire.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for RealSlope {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Text(String),
            Cf {
                #[serde(default)]
                preperiod: Vec<i64>,
                #[serde(default)]
                period: Vec<i64>,
            },
        }
        match Repr::deserialize(de)? {
            Repr::Int(n) => Ok(RealSlope::Rational(BigRational::from_integer(
                BigInt::from(n),
            ))),
            Repr::Text(s) => s.parse().map_err(D::Error::custom),
            Repr::Cf { preperiod, period } => {
                if period.is_empty() {
                    RealSlope::from_cf(&preperiod).map_err(D::Error::custom)
                } else {
                    RealSlope::periodic(preperiod, period).map_err(D::Error::custom)
                }
            }
        }
    }
}

impl FromStr for RealSlope {
    type Err = FareyError;

    /// Parses `"p/q"` or a bare integer, at arbitrary precision.
    fn from_str(s: &str) -> Result<RealSlope> {
        let bad = |_| FareyError::InvalidSlope(format!("cannot parse {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (
                BigInt::from_str(n.trim()).map_err(bad)?,
                BigInt::from_str(d.trim()).map_err(bad)?,
            ),
            None => (BigInt::from_str(s.trim()).map_err(bad)?, BigInt::from(1)),
        };
        if den == BigInt::from(0) {
            return Err(FareyError::InvalidSlope(
                "infinite slope is not a finite boundary point".into(),
            ));
        }
        Ok(RealSlope::Rational(BigRational::new(num, den)))
    }
}
