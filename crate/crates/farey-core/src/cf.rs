use crate::error::{FareyError, Result};
use crate::slope::Slope;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Canonical continued-fraction expansion `[a0; a1, ..., an]` of a finite
/// slope: `a0` is the floor, all later terms are positive, and the last term
/// is `>= 2` unless the slope is an integer. The slope `1/0` has none.
pub fn cf_expand(s: &Slope) -> Result<Vec<i64>> {
    if s.is_infinity() {
        return Err(FareyError::NoExpansion);
    }
    let mut terms = Vec::new();
    let (mut num, mut den) = (s.p(), s.q());
    while den != 0 {
        let a = num.div_euclid(den);
        terms.push(a);
        (num, den) = (den, num.rem_euclid(den));
    }
    // Euclid with floor division already yields the canonical form except for
    // a possible trailing 1 coming from .../1 steps; fold it.
    if terms.len() > 1 && *terms.last().unwrap() == 1 {
        terms.pop();
        *terms.last_mut().unwrap() += 1;
    }
    Ok(terms)
}

/// Evaluates a continued fraction with integer terms to a slope.
///
/// Terms after the first must be positive; `[]` is rejected.
pub fn cf_to_slope(terms: &[i64]) -> Result<Slope> {
    validate(terms)?;
    // Fold back-to-front: x -> a + 1/x over (p, q) pairs.
    let (mut p, mut q) = (1i64, 0i64);
    for &a in terms.iter().rev() {
        let next_p = a
            .checked_mul(p)
            .and_then(|ap| ap.checked_add(q))
            .ok_or(FareyError::Overflow("continued fraction"))?;
        (p, q) = (next_p, p);
    }
    Slope::new(p, q)
}

/// Evaluates a continued fraction exactly in arbitrary precision.
pub fn cf_to_rational(terms: &[i64]) -> Result<BigRational> {
    validate(terms)?;
    let (mut p, mut q) = (BigInt::one(), BigInt::zero());
    for &a in terms.iter().rev() {
        let next_p = BigInt::from(a) * &p + &q;
        q = std::mem::replace(&mut p, next_p);
    }
    Ok(BigRational::new(p, q))
}

/// Canonical expansion of an arbitrary rational (floor-based Euclid).
pub fn rational_cf(x: &BigRational) -> Result<Vec<i64>> {
    let mut terms: Vec<BigInt> = Vec::new();
    let (mut num, mut den) = (x.numer().clone(), x.denom().clone());
    while !den.is_zero() {
        // den > 0 throughout, so floor division is Euclidean division.
        let (a, r) = num.div_mod_floor(&den);
        terms.push(a);
        (num, den) = (den, r);
    }
    if terms.len() > 1 && terms.last().unwrap().is_one() {
        terms.pop();
        *terms.last_mut().unwrap() += 1;
    }
    terms
        .into_iter()
        .map(|t| i64::try_from(&t).map_err(|_| FareyError::Overflow("partial quotient")))
        .collect()
}

fn validate(terms: &[i64]) -> Result<()> {
    if terms.is_empty() {
        return Err(FareyError::InvalidContinuedFraction("empty".into()));
    }
    if let Some(&bad) = terms[1..].iter().find(|&&a| a < 1) {
        return Err(FareyError::InvalidContinuedFraction(format!(
            "partial quotient {bad} after the first must be >= 1"
        )));
    }
    Ok(())
}
