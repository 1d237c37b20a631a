//! Brute-force reference for the Farey graph, used to pin down the fast
//! distance routine in tests.
//!
//! Everything here works inside the finite box of slopes with `|p|, |q|`
//! bounded by `max_entry` and computes by breadth-first search. Distances in a
//! subgraph can only overestimate the true graph distance, so equality with
//! the closed-form routine across growing boxes is the check that matters.

use std::collections::{BTreeMap, VecDeque};

use num_integer::Integer;

use crate::slope::Slope;

/// Every slope `p/q` with `|p| <= max_entry` and `0 <= q <= max_entry`,
/// sorted.
pub fn slopes_in_box(max_entry: i64) -> Vec<Slope> {
    assert!(max_entry >= 1, "box must contain at least 0/1 and 1/0");
    let mut out = vec![Slope::INFINITY];
    for q in 1..=max_entry {
        for p in -max_entry..=max_entry {
            if p.abs().gcd(&q) == 1 {
                out.push(Slope::new(p, q).expect("coprime pair"));
            }
        }
    }
    out.sort();
    out
}

/// The Farey neighbours of `s` that stay inside the box, sorted.
///
/// Solutions of `r v - s u = 1` form the single family
/// `(u0 + k r, v0 + k s)`; after slope normalization it also covers the
/// determinant `-1` side, each neighbour exactly once.
pub fn neighbors_in_box(s: &Slope, max_entry: i64) -> Vec<Slope> {
    let (r, sden) = (s.p(), s.q());
    let eg = r.extended_gcd(&sden);
    debug_assert_eq!(eg.gcd, 1);
    let (u0, v0) = (-eg.y, eg.x);

    // Intersect the k-windows keeping |u0 + k r| and |v0 + k sden| in range.
    let mut lo = i64::MIN;
    let mut hi = i64::MAX;
    for (x0, m) in [(u0, r), (v0, sden)] {
        if m == 0 {
            debug_assert!(x0.abs() <= 1);
            continue;
        }
        let (a, b) = (-max_entry - x0, max_entry - x0);
        let (wlo, whi) = if m > 0 {
            (ceil_div(a, m), Integer::div_floor(&b, &m))
        } else {
            (ceil_div(b, m), Integer::div_floor(&a, &m))
        };
        lo = lo.max(wlo);
        hi = hi.min(whi);
    }

    let mut out = Vec::new();
    for k in lo..=hi {
        let (u, v) = (u0 + k * r, v0 + k * sden);
        debug_assert_eq!((r as i128) * (v as i128) - (sden as i128) * (u as i128), 1);
        out.push(Slope::new(u, v).expect("unimodular partner is primitive"));
    }
    out.sort();
    out
}

fn ceil_div(a: i64, b: i64) -> i64 {
    -Integer::div_floor(&-a, &b)
}

/// BFS distances from `start` to everything reachable inside the box.
pub fn distances_from(start: &Slope, max_entry: i64) -> BTreeMap<Slope, u64> {
    let mut dist = BTreeMap::new();
    dist.insert(start.clone(), 0u64);
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(v) = queue.pop_front() {
        let d = dist[&v];
        for n in neighbors_in_box(&v, max_entry) {
            if !dist.contains_key(&n) {
                dist.insert(n.clone(), d + 1);
                queue.push_back(n);
            }
        }
    }
    dist
}

/// BFS distance between two slopes inside the box; `None` if the box is too
/// small to connect them.
pub fn bfs_distance(a: &Slope, b: &Slope, max_entry: i64) -> Option<u64> {
    if a == b {
        return Some(0);
    }
    let mut dist = BTreeMap::new();
    dist.insert(a.clone(), 0u64);
    let mut queue = VecDeque::from([a.clone()]);
    while let Some(v) = queue.pop_front() {
        let d = dist[&v];
        for n in neighbors_in_box(&v, max_entry) {
            if n == *b {
                return Some(d + 1);
            }
            if !dist.contains_key(&n) {
                dist.insert(n.clone(), d + 1);
                queue.push_back(n);
            }
        }
    }
    None
}
