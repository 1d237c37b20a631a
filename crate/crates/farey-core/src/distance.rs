use crate::cf::cf_expand;
use crate::slope::Slope;
use crate::unimodular::basis_change_to_infinity;

/// Whether two slopes span an edge of the Farey graph: `|ps - qr| = 1`.
pub fn farey_adjacent(a: &Slope, b: &Slope) -> bool {
    a.det(b).abs() == 1
}

/// Exact distance in the Farey graph, by continued-fraction descent.
///
/// The pair is first normalized so one endpoint is `1/0`; the distance to
/// infinity is then read off the Stern-Brocot triangle chain of the other
/// endpoint. Each Farey edge of the chain separates the plane, so any path
/// from infinity into the region beyond the edge passes through one of its
/// endpoints; the chain recursion `D(mediant) = 1 + min(D(u), D(v))` is
/// therefore exact, and continued-fraction blocks collapse it to
/// `O(length of expansion)` via `D(moving_k) = min(D(moving_0) + k, D(static) + 1)`.
///
/// Panics only if the normalizing basis change overflows `i64`, which needs
/// slope entries around `2^31` or larger.
pub fn farey_distance(a: &Slope, b: &Slope) -> u64 {
    if a == b {
        return 0;
    }
    if farey_adjacent(a, b) {
        return 1;
    }
    let m = basis_change_to_infinity(b);
    let w = m
        .apply(a)
        .expect("basis change of a bounded slope stays in range");
    depth_from_infinity(&w)
}

/// Distance from `w` (finite, non-integral at the call sites below) to `1/0`.
fn depth_from_infinity(w: &Slope) -> u64 {
    debug_assert!(!w.is_infinity());
    if w.q() == 1 {
        return 1;
    }
    let cf = cf_expand(w).expect("finite slope expands");
    // Frontier edge (floor, floor + 1): both endpoints are integers, hence at
    // distance exactly 1 from infinity. The descent consumes runs of
    // same-direction mediant steps of lengths a1 - 1, a2, ..., an, with the
    // final mediant of the last run equal to w itself.
    let mut d_static = 1u64; // endpoint the current run moves towards
    let mut d_moving = 1u64; // endpoint being replaced by mediants
    let runs = cf.len() - 1;
    for (i, &a) in cf[1..].iter().enumerate() {
        let steps = if i == 0 { (a - 1) as u64 } else { a as u64 };
        let last = i + 1 == runs;
        if steps > 0 {
            let arrived = (d_moving + steps).min(d_static + 1);
            if last {
                return arrived;
            }
            d_moving = arrived;
        }
        // Direction flips: the endpoint we were moving becomes static.
        std::mem::swap(&mut d_static, &mut d_moving);
    }
    unreachable!("canonical expansions of non-integers have at least one run");
}
