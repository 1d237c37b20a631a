use crate::error::{FareyError, Result};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// A slope on the torus: a primitive fraction `p/q`.
///
/// Invariants: `gcd(|p|, q) = 1`, `q >= 0`, and `q = 0` forces `p = 1` (the
/// slope at infinity, written `1/0`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slope {
    // Ordering is the arbitrary-but-deterministic (q, p) lex order used for
    // canonical output listings, not the real-line order.
    q: i64,
    p: i64,
}

impl Slope {
    /// The slope at infinity, `1/0`.
    pub const INFINITY: Slope = Slope { p: 1, q: 0 };

    /// Builds a slope from any integer pair, reducing and normalizing signs.
    pub fn new(p: i64, q: i64) -> Result<Slope> {
        if p == 0 && q == 0 {
            return Err(FareyError::InvalidSlope("0/0".into()));
        }
        if p == i64::MIN || q == i64::MIN {
            return Err(FareyError::Overflow("slope normalization"));
        }
        let g = gcd(p.abs(), q.abs());
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 || (q == 0 && p < 0) {
            p = -p;
            q = -q;
        }
        Ok(Slope { p, q })
    }

    /// Numerator (sign-carrying).
    pub fn p(&self) -> i64 {
        self.p
    }

    /// Denominator (always `>= 0`).
    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn is_infinity(&self) -> bool {
        self.q == 0
    }

    /// `p s - q r` for this slope `p/q` against `r/s`, exact in `i128`.
    pub fn det(&self, other: &Slope) -> i128 {
        (self.p as i128) * (other.q as i128) - (self.q as i128) * (other.p as i128)
    }

    /// Mediant `(p + r)/(q + s)`, the third vertex of a Farey triangle.
    pub fn mediant(&self, other: &Slope) -> Result<Slope> {
        let p = self
            .p
            .checked_add(other.p)
            .ok_or(FareyError::Overflow("mediant"))?;
        let q = self
            .q
            .checked_add(other.q)
            .ok_or(FareyError::Overflow("mediant"))?;
        Slope::new(p, q)
    }

    /// Value as a float (`inf` for `1/0`).
    pub fn to_f64(&self) -> f64 {
        if self.q == 0 {
            f64::INFINITY
        } else {
            self.p as f64 / self.q as f64
        }
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl fmt::Debug for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Slope {
    type Err = FareyError;

    /// Parses `"p/q"`; a bare integer is read as `p/1`.
    fn from_str(s: &str) -> Result<Slope> {
        let s = s.trim();
        let parse_int = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| FareyError::InvalidSlope(s.into()))
        };
        match s.split_once('/') {
            Some((num, den)) => Slope::new(parse_int(num)?, parse_int(den)?),
            None => Slope::new(parse_int(s)?, 1),
        }
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Slope, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Int(i64),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Text(s) => s.parse().map_err(D::Error::custom),
            Repr::Int(n) => Slope::new(n, 1).map_err(D::Error::custom),
        }
    }
}
