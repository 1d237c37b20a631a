//! Exact arithmetic in real quadratic fields.
//!
//! A [`QuadSurd`] is `(a + b*sqrt(d))/c` with integer parts; all comparisons,
//! floors, and field operations are exact. Values from different fields cannot
//! be combined exactly, so such combinations degrade to certified rational
//! intervals of any requested width instead of silently losing precision.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{FareyError, Result};

/// Largest trial divisor used to pull square factors out of the radicand.
///
/// A missed square factor (two primes above this bound) never causes a wrong
/// answer: the two representations just stop unifying and mixed arithmetic
/// falls back to certified intervals.
const SQUARE_EXTRACTION_BOUND: u64 = 1000;

/// `(a + b*sqrt(d))/c`, canonicalized.
///
/// Invariants after construction: `c > 0`, `gcd(a, b, c) = 1`, `d >= 0`,
/// `d` has no square factor with a prime below [`SQUARE_EXTRACTION_BOUND`]
/// and is not itself a perfect square, and `b == 0` iff `d == 0`. Structural
/// equality therefore decides value equality for operands in the same field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadSurd {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl QuadSurd {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<QuadSurd> {
        QuadSurd { a, b, c, d }.normalized()
    }

    pub fn from_rational(r: &BigRational) -> QuadSurd {
        QuadSurd {
            a: r.numer().clone(),
            b: BigInt::zero(),
            c: r.denom().clone(),
            d: BigInt::zero(),
        }
    }

    pub fn from_integer(n: i64) -> QuadSurd {
        QuadSurd {
            a: BigInt::from(n),
            b: BigInt::zero(),
            c: BigInt::one(),
            d: BigInt::zero(),
        }
    }

    /// `sqrt(n)` for `n >= 0`.
    pub fn sqrt_of(n: i64) -> Result<QuadSurd> {
        if n < 0 {
            return Err(FareyError::InvalidParameter(format!(
                "negative radicand {n}"
            )));
        }
        QuadSurd::new(BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::from(n))
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational()
            .then(|| BigRational::new(self.a.clone(), self.c.clone()))
    }

    /// The canonical radicand; `0` for rational values.
    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    fn normalized(mut self) -> Result<QuadSurd> {
        if self.c.is_zero() {
            return Err(FareyError::InvalidParameter("zero denominator".into()));
        }
        if self.d.is_negative() {
            return Err(FareyError::InvalidParameter(format!(
                "negative radicand {}",
                self.d
            )));
        }
        if self.c.is_negative() {
            self.a = -self.a;
            self.b = -self.b;
            self.c = -self.c;
        }
        if self.b.is_zero() || self.d.is_zero() {
            self.b = BigInt::zero();
            self.d = BigInt::zero();
        } else {
            // Pull square factors into b, then fold a perfect-square remainder
            // into the rational part.
            let mut f = 2u64;
            while f <= SQUARE_EXTRACTION_BOUND {
                let f2 = BigInt::from(f) * BigInt::from(f);
                if &f2 > &self.d {
                    break;
                }
                while (&self.d % &f2).is_zero() {
                    self.d /= &f2;
                    self.b *= BigInt::from(f);
                }
                f += 1;
            }
            let root = self.d.sqrt();
            if &root * &root == self.d {
                self.a += &self.b * root;
                self.b = BigInt::zero();
                self.d = BigInt::zero();
            }
        }
        let g = self.a.gcd(&self.b).gcd(&self.c);
        if !g.is_one() {
            self.a /= &g;
            self.b /= &g;
            self.c /= &g;
        }
        Ok(self)
    }

    /// Shared radicand when the two values live in one field, treating
    /// rationals as members of every field.
    fn common_radicand(&self, other: &QuadSurd) -> Option<BigInt> {
        if self.b.is_zero() {
            Some(other.d.clone())
        } else if other.b.is_zero() || self.d == other.d {
            Some(self.d.clone())
        } else {
            None
        }
    }

    /// `None` when the operands live in different quadratic fields.
    pub fn checked_add(&self, other: &QuadSurd) -> Option<QuadSurd> {
        let d = self.common_radicand(other)?;
        let a = &self.a * &other.c + &other.a * &self.c;
        let b = &self.b * &other.c + &other.b * &self.c;
        let c = &self.c * &other.c;
        Some(QuadSurd { a, b, c, d }.normalized().expect("nonzero denominator"))
    }

    pub fn neg(&self) -> QuadSurd {
        QuadSurd {
            a: -&self.a,
            b: -&self.b,
            c: self.c.clone(),
            d: self.d.clone(),
        }
    }

    pub fn checked_sub(&self, other: &QuadSurd) -> Option<QuadSurd> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &QuadSurd) -> Option<QuadSurd> {
        let d = self.common_radicand(other)?;
        let a = &self.a * &other.a + &self.b * &other.b * &d;
        let b = &self.a * &other.b + &self.b * &other.a;
        let c = &self.c * &other.c;
        Some(QuadSurd { a, b, c, d }.normalized().expect("nonzero denominator"))
    }

    /// `None` for zero. `1/((a + b sqrt d)/c) = c(a - b sqrt d)/(a^2 - b^2 d)`.
    pub fn inverse(&self) -> Option<QuadSurd> {
        let norm = &self.a * &self.a - &self.b * &self.b * &self.d;
        if norm.is_zero() {
            return None;
        }
        QuadSurd {
            a: &self.c * &self.a,
            b: -(&self.c * &self.b),
            c: norm,
            d: self.d.clone(),
        }
        .normalized()
        .ok()
    }

    pub fn checked_div(&self, other: &QuadSurd) -> Option<QuadSurd> {
        self.checked_mul(&other.inverse()?)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign of the value: `-1`, `0`, or `1`.
    pub fn sign(&self) -> i32 {
        let sa = bigint_sign(&self.a);
        if self.b.is_zero() {
            return sa;
        }
        let sb = bigint_sign(&self.b);
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        // Opposite-signed parts: the larger of a^2 and b^2 d wins.
        let rational_sq = &self.a * &self.a;
        let radical_sq = &self.b * &self.b * &self.d;
        match rational_sq.cmp(&radical_sq) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            // Would force sqrt(d) rational; d is nonsquare whenever b != 0.
            Ordering::Equal => 0,
        }
    }

    pub fn abs(&self) -> QuadSurd {
        if self.sign() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Exact comparison; `None` when the fields differ.
    pub fn compare(&self, other: &QuadSurd) -> Option<Ordering> {
        Some(self.checked_sub(other)?.sign().cmp(&0))
    }

    /// Exact floor.
    pub fn floor(&self) -> BigInt {
        if self.b.is_zero() {
            return self.a.div_floor(&self.c);
        }
        // b^2 d is never a perfect square here, so sqrt(b^2 d) lies strictly
        // between s and s+1 and the numerator sits in a unit interval with an
        // integer endpoint; floor_div of that endpoint is the answer.
        let s = (&self.b * &self.b * &self.d).sqrt();
        let shifted = if self.b.is_positive() {
            &self.a + s
        } else {
            &self.a - s - BigInt::one()
        };
        shifted.div_floor(&self.c)
    }

    /// Encloses the value in a rational interval of width at most
    /// `2 * 10^-digits` (exact point interval for rationals).
    pub fn interval(&self, digits: u32) -> (BigRational, BigRational) {
        if self.b.is_zero() {
            let v = BigRational::new(self.a.clone(), self.c.clone());
            return (v.clone(), v);
        }
        let scale = BigInt::from(10u32).pow(digits);
        // r <= scale * sqrt(d) < r + 1
        let r = (&self.d * &scale * &scale).sqrt();
        let (lo_rad, hi_rad) = if self.b.is_positive() {
            (&self.b * &r, &self.b * (&r + BigInt::one()))
        } else {
            (&self.b * (&r + BigInt::one()), &self.b * &r)
        };
        let denom = &self.c * &scale;
        let lo = BigRational::new(&self.a * &scale + lo_rad, denom.clone());
        let hi = BigRational::new(&self.a * &scale + hi_rad, denom);
        (lo, hi)
    }

    pub fn to_f64(&self) -> f64 {
        if let Some(r) = self.as_rational() {
            return r.to_f64().unwrap_or(f64::NAN);
        }
        let (lo, hi) = self.interval(22);
        ((lo + hi) / BigRational::from_integer(BigInt::from(2)))
            .to_f64()
            .unwrap_or(f64::NAN)
    }
}

fn bigint_sign(n: &BigInt) -> i32 {
    if n.is_zero() {
        0
    } else if n.is_positive() {
        1
    } else {
        -1
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            if self.c.is_one() {
                write!(f, "{}", self.a)
            } else {
                write!(f, "{}/{}", self.a, self.c)
            }
        } else {
            write!(f, "({} + {}*sqrt({}))/{}", self.a, self.b, self.d, self.c)
        }
    }
}

/// A real number known exactly: rational, or quadratic over a single field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurdValue {
    Rat(BigRational),
    Quad(QuadSurd),
}

impl SurdValue {
    /// Collapses a rational `QuadSurd` into the `Rat` arm.
    pub fn from_surd(s: QuadSurd) -> SurdValue {
        match s.as_rational() {
            Some(r) => SurdValue::Rat(r),
            None => SurdValue::Quad(s),
        }
    }

    pub fn from_rational(r: BigRational) -> SurdValue {
        SurdValue::Rat(r)
    }

    fn as_surd(&self) -> QuadSurd {
        match self {
            SurdValue::Rat(r) => QuadSurd::from_rational(r),
            SurdValue::Quad(q) => q.clone(),
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, SurdValue::Rat(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            SurdValue::Rat(r) => Some(r),
            SurdValue::Quad(_) => None,
        }
    }

    /// Exact difference, `None` when the two values span distinct fields.
    pub fn checked_sub(&self, other: &SurdValue) -> Option<SurdValue> {
        self.as_surd()
            .checked_sub(&other.as_surd())
            .map(SurdValue::from_surd)
    }

    pub fn sign(&self) -> i32 {
        match self {
            SurdValue::Rat(r) => bigint_sign(r.numer()),
            SurdValue::Quad(q) => q.sign(),
        }
    }

    pub fn abs(&self) -> SurdValue {
        match self {
            SurdValue::Rat(r) => SurdValue::Rat(r.abs()),
            SurdValue::Quad(q) => SurdValue::Quad(q.abs()),
        }
    }

    pub fn floor(&self) -> BigInt {
        match self {
            SurdValue::Rat(r) => r.floor().to_integer(),
            SurdValue::Quad(q) => q.floor(),
        }
    }

    pub fn interval(&self, digits: u32) -> (BigRational, BigRational) {
        match self {
            SurdValue::Rat(r) => (r.clone(), r.clone()),
            SurdValue::Quad(q) => q.interval(digits),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            SurdValue::Rat(r) => r.to_f64().unwrap_or(f64::NAN),
            SurdValue::Quad(q) => q.to_f64(),
        }
    }
}

impl fmt::Display for SurdValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurdValue::Rat(r) => write!(f, "{r}"),
            SurdValue::Quad(q) => write!(f, "{q}"),
        }
    }
}

/// Value of the continued fraction `[pre..; period.. repeating]`.
///
/// Period terms must all be positive (the repeating tail is then greater than
/// one, making the expansion canonical); preperiod terms after the first must
/// be positive as well. The leading term may be any integer.
pub fn periodic_cf_value(preperiod: &[i64], period: &[i64]) -> Result<QuadSurd> {
    if period.is_empty() {
        return Err(FareyError::InvalidContinuedFraction(
            "empty period".into(),
        ));
    }
    if let Some(&t) = period.iter().find(|&&t| t < 1) {
        return Err(FareyError::InvalidContinuedFraction(format!(
            "period term {t} is not positive"
        )));
    }
    if let Some(&t) = preperiod.iter().skip(1).find(|&&t| t < 1) {
        return Err(FareyError::InvalidContinuedFraction(format!(
            "preperiod term {t} is not positive"
        )));
    }

    // Fold the period into [[p, p'], [q, q']]; the purely periodic value is
    // the positive fixed point of t -> (p t + p')/(q t + q').
    let mut m = [
        [BigInt::one(), BigInt::zero()],
        [BigInt::zero(), BigInt::one()],
    ];
    for &t in period {
        let t = BigInt::from(t);
        let row0 = [&m[0][0] * &t + &m[0][1], m[0][0].clone()];
        let row1 = [&m[1][0] * &t + &m[1][1], m[1][0].clone()];
        m = [row0, row1];
    }
    let (p, pp) = (m[0][0].clone(), m[0][1].clone());
    let (q, qp) = (m[1][0].clone(), m[1][1].clone());
    // q t^2 + (q' - p) t - p' = 0, positive root.
    let disc = (&qp - &p) * (&qp - &p) + BigInt::from(4) * &q * &pp;
    let mut x = QuadSurd::new(p - qp, BigInt::one(), BigInt::from(2) * q, disc)?;

    for &t in preperiod.iter().rev() {
        let inv = x.inverse().ok_or_else(|| {
            FareyError::InvalidContinuedFraction("zero tail value".into())
        })?;
        x = QuadSurd::from_integer(t)
            .checked_add(&inv)
            .expect("tail stays in one field");
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surd(a: i64, b: i64, c: i64, d: i64) -> QuadSurd {
        QuadSurd::new(
            BigInt::from(a),
            BigInt::from(b),
            BigInt::from(c),
            BigInt::from(d),
        )
        .unwrap()
    }

    #[test]
    fn normalization_extracts_squares() {
        // sqrt(8) = 2 sqrt(2)
        assert_eq!(surd(0, 1, 1, 8), surd(0, 2, 1, 2));
        // sqrt(49) folds into the rational part
        assert_eq!(surd(0, 1, 1, 49), QuadSurd::from_integer(7));
        // sqrt(45) = 3 sqrt(5)
        assert_eq!(surd(0, 1, 1, 45), surd(0, 3, 1, 5));
        // negative denominators flip through
        assert_eq!(surd(1, 1, -2, 5), surd(-1, -1, 2, 5));
    }

    #[test]
    fn golden_ratio_from_period() {
        let phi = periodic_cf_value(&[], &[1]).unwrap();
        assert_eq!(phi, surd(1, 1, 2, 5));
        assert_eq!(phi.floor(), BigInt::one());
        assert!((phi.to_f64() - 1.618_033_988_749_895).abs() < 1e-12);
    }

    #[test]
    fn sqrt_two_from_period() {
        let r = periodic_cf_value(&[1], &[2]).unwrap();
        assert_eq!(r, surd(0, 1, 1, 2));
        assert!((r.to_f64() - std::f64::consts::SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn negative_inverse_golden_ratio() {
        // [-1; 2, 1, 1, 1, ...] = (1 - sqrt(5))/2
        let v = periodic_cf_value(&[-1, 2], &[1]).unwrap();
        assert_eq!(v, surd(1, -1, 2, 5));
        assert_eq!(v.floor(), BigInt::from(-1));
        assert!(v.sign() < 0);
    }

    #[test]
    fn field_arithmetic() {
        let phi = surd(1, 1, 2, 5);
        let conj = surd(1, -1, 2, 5);
        // phi + (phi - 1) has no rational part left after the conjugate trick:
        // phi - conj = sqrt(5), phi * conj = -1.
        assert_eq!(phi.checked_sub(&conj).unwrap(), surd(0, 1, 1, 5));
        assert_eq!(phi.checked_mul(&conj).unwrap(), QuadSurd::from_integer(-1));
        let inv = phi.inverse().unwrap();
        assert_eq!(phi.checked_mul(&inv).unwrap(), QuadSurd::from_integer(1));
        // 1/phi = phi - 1
        assert_eq!(inv, surd(-1, 1, 2, 5));
    }

    #[test]
    fn cross_field_is_refused() {
        let a = surd(0, 1, 1, 2);
        let b = surd(0, 1, 1, 3);
        assert!(a.checked_add(&b).is_none());
        assert!(a.compare(&b).is_none());
    }

    #[test]
    fn exact_signs() {
        assert!(surd(3, -2, 1, 2).sign() > 0); // 3 - 2 sqrt 2 > 0
        assert!(surd(2, -2, 1, 2).sign() < 0); // 2 - 2 sqrt 2 < 0
        assert_eq!(surd(0, 0, 3, 0).sign(), 0);
        assert!(surd(-10, 1, 7, 5).sign() < 0);
    }

    #[test]
    fn exact_floors() {
        assert_eq!(surd(0, 1, 1, 5).floor(), BigInt::from(2));
        assert_eq!(surd(0, -1, 1, 5).floor(), BigInt::from(-3));
        assert_eq!(surd(7, -1, 3, 2).floor(), BigInt::one()); // (7 - sqrt 2)/3
        assert_eq!(surd(-7, 0, 2, 0).floor(), BigInt::from(-4));
    }

    #[test]
    fn intervals_enclose_and_shrink() {
        let v = surd(3, 2, 7, 13); // (3 + 2 sqrt 13)/7
        let f = v.to_f64();
        for digits in [5u32, 15, 30] {
            let (lo, hi) = v.interval(digits);
            assert!(lo < hi);
            assert!(lo.to_f64().unwrap() <= f && f <= hi.to_f64().unwrap());
        }
        let (lo, hi) = v.interval(30);
        let width = (&hi - &lo).to_f64().unwrap();
        assert!(width < 1e-29);
    }

    #[test]
    fn period_validation() {
        assert!(periodic_cf_value(&[], &[]).is_err());
        assert!(periodic_cf_value(&[], &[2, 0]).is_err());
        assert!(periodic_cf_value(&[1, -2], &[3]).is_err());
        // A negative leading preperiod term is fine.
        assert!(periodic_cf_value(&[-4, 2], &[3]).is_ok());
    }

    #[test]
    fn surd_value_collapses_rationals() {
        let v = SurdValue::from_surd(surd(3, 0, 2, 0));
        assert!(v.is_rational());
        let phi = SurdValue::from_surd(surd(1, 1, 2, 5));
        let half = SurdValue::from_rational(BigRational::new(
            BigInt::one(),
            BigInt::from(2),
        ));
        // phi - 1/2 = sqrt(5)/2
        assert_eq!(
            phi.checked_sub(&half).unwrap(),
            SurdValue::Quad(surd(0, 1, 2, 5))
        );
    }
}
