//! Independent route to punctured-torus traces: build the free-group word of
//! a slope, multiply out explicit integer matrices, and read off the trace.
//!
//! This never touches the trace-map recurrences, so agreement with
//! [`trace_propagate`](crate::trace_propagate) checks the whole walk.

use num_bigint::BigInt;

use farey_core::Slope;

/// Generator letters.  `X` and `Y` are the standard pair
/// `[[1,1],[1,2]]` and `[[1,-1],[-1,2]]`, whose commutator has trace -2;
/// their traces and the trace of `XY` are all 3, matching the `(3,3,3)` seed
/// at slopes `(infinity, 0, 1)` under `slope 1 <-> XY`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Letter {
    X,
    XInv,
    Y,
}

/// Word of the curve of slope `r/q`, `0 < r < q`, on the Stern-Brocot path
/// from the pair `(0 -> Y, infinity -> X)`: the word of a mediant is the
/// concatenation of the words of its parents.
fn christoffel(r: i64, q: i64) -> Vec<Letter> {
    debug_assert!(0 < r && r < q);
    let (mut lp, mut lq, mut lw) = (0i64, 1i64, vec![Letter::Y]);
    let (mut rp, mut rq, mut rw) = (1i64, 0i64, vec![Letter::X]);
    loop {
        let (mp, mq) = (lp + rp, lq + rq);
        let mut mw = lw.clone();
        mw.extend_from_slice(&rw);
        if (mp, mq) == (r, q) {
            return mw;
        }
        // Descend toward r/q: compare r/q against the mediant.
        if r * mq < mp * q {
            (rp, rq, rw) = (mp, mq, mw);
        } else {
            (lp, lq, lw) = (mp, mq, mw);
        }
    }
}

/// Word of the curve of slope `p/q` in the generators.  The integer part `n`
/// of the slope acts by the twist substitution `Y -> X^n Y`, reducing to a
/// word for a slope in `[0, 1)`.
fn slope_word(slope: &Slope) -> Vec<Letter> {
    let (p, q) = (slope.p(), slope.q());
    if q == 0 {
        return vec![Letter::X];
    }
    let n = p.div_euclid(q);
    let r = p.rem_euclid(q);
    let inner = if r == 0 {
        vec![Letter::Y]
    } else {
        christoffel(r, q)
    };
    let mut out = Vec::new();
    for letter in inner {
        match letter {
            Letter::X => out.push(Letter::X),
            Letter::XInv => unreachable!("inner words use only X and Y"),
            Letter::Y => {
                let twist = if n >= 0 { Letter::X } else { Letter::XInv };
                for _ in 0..n.unsigned_abs() {
                    out.push(twist);
                }
                out.push(Letter::Y);
            }
        }
    }
    out
}

type M2 = [[BigInt; 2]; 2];

fn letter_matrix(l: Letter) -> M2 {
    let m = |a: i64, b: i64, c: i64, d: i64| {
        [
            [BigInt::from(a), BigInt::from(b)],
            [BigInt::from(c), BigInt::from(d)],
        ]
    };
    match l {
        Letter::X => m(1, 1, 1, 2),
        Letter::XInv => m(2, -1, -1, 1),
        Letter::Y => m(1, -1, -1, 2),
    }
}

fn mat_mul(a: &M2, b: &M2) -> M2 {
    [
        [
            &a[0][0] * &b[0][0] + &a[0][1] * &b[1][0],
            &a[0][0] * &b[0][1] + &a[0][1] * &b[1][1],
        ],
        [
            &a[1][0] * &b[0][0] + &a[1][1] * &b[1][0],
            &a[1][0] * &b[0][1] + &a[1][1] * &b[1][1],
        ],
    ]
}

/// Exact trace of the slope's curve in the `(3,3,3)` representation,
/// computed by multiplying generator matrices.
pub fn modular_torus_trace(slope: &Slope) -> BigInt {
    let mut acc = [
        [BigInt::from(1), BigInt::from(0)],
        [BigInt::from(0), BigInt::from(1)],
    ];
    for letter in slope_word(slope) {
        acc = mat_mul(&acc, &letter_matrix(letter));
    }
    &acc[0][0] + &acc[1][1]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tr(p: i64, q: i64) -> BigInt {
        modular_torus_trace(&Slope::new(p, q).unwrap())
    }

    #[test]
    fn generator_traces_match_the_seed() {
        assert_eq!(tr(1, 0), BigInt::from(3));
        assert_eq!(tr(0, 1), BigInt::from(3));
        assert_eq!(tr(1, 1), BigInt::from(3));
    }

    #[test]
    fn twisted_and_mirrored_slopes() {
        assert_eq!(tr(2, 1), BigInt::from(6));
        assert_eq!(tr(-1, 1), BigInt::from(6));
        assert_eq!(tr(1, 2), BigInt::from(6));
        assert_eq!(tr(2, 3), BigInt::from(15));
        assert_eq!(tr(5, 2), BigInt::from(87));
        assert_eq!(tr(5, 8), BigInt::from(1299));
        // -5/8 sits one triangle deeper than 5/8; its trace continues the
        // spine 3, 6, 15, 87, 1299 by 87 * 1299 - 15.
        assert_eq!(tr(-5, 8), BigInt::from(112998));
        // s -> 1 - s fixes the seed triple, so 13/8 matches -5/8.
        assert_eq!(tr(13, 8), BigInt::from(112998));
    }

    #[test]
    fn word_lengths_grow_like_the_coordinates() {
        // |word(p/q)| = |p| + q for slopes in lowest terms with p, q > 0.
        for (p, q) in [(1, 1), (1, 2), (2, 3), (3, 5), (5, 8), (7, 9)] {
            assert_eq!(
                slope_word(&Slope::new(p, q).unwrap()).len() as i64,
                p + q,
                "slope {p}/{q}"
            );
        }
    }
}
