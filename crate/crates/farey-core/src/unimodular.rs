use crate::error::{FareyError, Result};
use crate::slope::Slope;
use serde::{Deserialize, Serialize};
use std::fmt;

/// An integer matrix `[[a, b], [c, d]]` with `ad - bc = ±1`, acting on slopes
/// by `p/q -> (a p + b q)/(c p + d q)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[[i64; 2]; 2]", into = "[[i64; 2]; 2]")]
pub struct UnimodularMap {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl UnimodularMap {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<UnimodularMap> {
        let det = (a as i128) * (d as i128) - (b as i128) * (c as i128);
        if det != 1 && det != -1 {
            return Err(FareyError::NotUnimodular(det));
        }
        Ok(UnimodularMap { a, b, c, d })
    }

    pub fn identity() -> UnimodularMap {
        UnimodularMap { a: 1, b: 0, c: 0, d: 1 }
    }

    pub fn det(&self) -> i64 {
        // In-range by the constructor invariant.
        ((self.a as i128) * (self.d as i128) - (self.b as i128) * (self.c as i128)) as i64
    }

    /// Row-major entries `[[a, b], [c, d]]`.
    pub fn entries(&self) -> [[i64; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }

    /// Applies the map to a slope. Errors only on `i64` overflow.
    pub fn apply(&self, s: &Slope) -> Result<Slope> {
        let p = (self.a as i128) * (s.p() as i128) + (self.b as i128) * (s.q() as i128);
        let q = (self.c as i128) * (s.p() as i128) + (self.d as i128) * (s.q() as i128);
        let p = i64::try_from(p).map_err(|_| FareyError::Overflow("unimodular action"))?;
        let q = i64::try_from(q).map_err(|_| FareyError::Overflow("unimodular action"))?;
        Slope::new(p, q)
    }

    /// `self ∘ other` as matrices (apply `other` first).
    pub fn compose(&self, other: &UnimodularMap) -> Result<UnimodularMap> {
        let mul = |x: i64, y: i64| (x as i128) * (y as i128);
        let entries = [
            mul(self.a, other.a) + mul(self.b, other.c),
            mul(self.a, other.b) + mul(self.b, other.d),
            mul(self.c, other.a) + mul(self.d, other.c),
            mul(self.c, other.b) + mul(self.d, other.d),
        ];
        let mut out = [0i64; 4];
        for (slot, value) in out.iter_mut().zip(entries) {
            *slot = i64::try_from(value).map_err(|_| FareyError::Overflow("compose"))?;
        }
        UnimodularMap::new(out[0], out[1], out[2], out[3])
    }

    /// Exact inverse (again unimodular).
    pub fn inverse(&self) -> UnimodularMap {
        let s = self.det();
        // det = ±1, so the adjugate divided by det stays integral.
        UnimodularMap {
            a: s * self.d,
            b: -s * self.b,
            c: -s * self.c,
            d: s * self.a,
        }
    }
}

impl fmt::Debug for UnimodularMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl TryFrom<[[i64; 2]; 2]> for UnimodularMap {
    type Error = FareyError;
    fn try_from(m: [[i64; 2]; 2]) -> Result<UnimodularMap> {
        UnimodularMap::new(m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

impl From<UnimodularMap> for [[i64; 2]; 2] {
    fn from(m: UnimodularMap) -> [[i64; 2]; 2] {
        [[m.a, m.b], [m.c, m.d]]
    }
}

/// The canonical unimodular map sending `alpha` to `1/0`.
///
/// Second row is `(-q, p)`; the first row is the Bezout pair `(a, b)` with
/// `a p + b q = 1` whose free parameter is reduced to the least nonnegative
/// residue (`0 <= a < q` when `q != 0`, else `b = 0`). Determinant is `+1`.
pub fn basis_change_to_infinity(alpha: &Slope) -> UnimodularMap {
    let (p, q) = (alpha.p(), alpha.q());
    if q == 0 {
        // alpha is already 1/0.
        return UnimodularMap::identity();
    }
    let (a0, _) = bezout(p, q);
    let a = a0.rem_euclid(q);
    // b = (1 - a p)/q is integral and bounded by |p| + 1.
    let b = ((1i128 - (a as i128) * (p as i128)) / (q as i128)) as i64;
    UnimodularMap { a, b, c: -q, d: p }
}

/// Returns `(x, y)` with `x p + y q = gcd(p, q)` (for coprime input, `= 1`).
fn bezout(p: i64, q: i64) -> (i64, i64) {
    let (mut r0, mut r1) = (p, q);
    let (mut x0, mut x1) = (1i64, 0i64);
    let (mut y0, mut y1) = (0i64, 1i64);
    while r1 != 0 {
        let k = r0 / r1;
        (r0, r1) = (r1, r0 - k * r1);
        (x0, x1) = (x1, x0 - k * x1);
        (y0, y1) = (y1, y0 - k * y1);
    }
    if r0 < 0 {
        (-x0, -y0)
    } else {
        (x0, y0)
    }
}
