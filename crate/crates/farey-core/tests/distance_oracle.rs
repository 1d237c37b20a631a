//! Pins the closed-form Farey distance to breadth-first search.
//!
//! BFS inside a finite box can only overestimate the true graph distance, so
//! agreement across two box sizes, exhaustively on small slopes and on chosen
//! hard cases, is the evidence that the fast routine is exact.

use farey_core::oracle::{bfs_distance, distances_from, slopes_in_box};
use farey_core::{farey_distance, torus_short_slopes, Slope, UnimodularMap};

fn slope(p: i64, q: i64) -> Slope {
    Slope::new(p, q).unwrap()
}

#[test]
fn exhaustive_small_slopes_match_bfs() {
    let small = slopes_in_box(12);
    for a in &small {
        let table = distances_from(a, 24);
        for b in &small {
            assert_eq!(
                farey_distance(a, b),
                table[b],
                "distance mismatch between {a} and {b}"
            );
        }
    }
}

#[test]
fn growing_the_box_changes_nothing() {
    // If geodesics were being clipped by the box, a larger box would shrink
    // some BFS distance. Spot-check stability on a spread of pairs.
    let pairs = [
        (slope(5, 8), Slope::INFINITY),
        (slope(8, 13), slope(0, 1)),
        (slope(-7, 12), slope(9, 11)),
        (slope(11, 12), slope(-11, 12)),
        (slope(1, 12), slope(12, 1)),
    ];
    for (a, b) in &pairs {
        let d24 = bfs_distance(a, b, 24).unwrap();
        let d48 = bfs_distance(a, b, 48).unwrap();
        assert_eq!(d24, d48, "box growth shrank d({a}, {b})");
        assert_eq!(farey_distance(a, b), d24, "at ({a}, {b})");
    }
}

#[test]
fn hand_derived_distances() {
    // Worked by hand: expansion chains plus a check that no shorter hop
    // exists among the Bezout neighbour families.
    let cases = [
        (slope(5, 8), Slope::INFINITY, 3),
        (slope(8, 13), Slope::INFINITY, 4),
        (slope(5, 26), Slope::INFINITY, 3),
        // infinity -> 1 -> 2/3 -> 5/8 -> 13/21, and no neighbour of 13/21
        // sits at distance 2.
        (slope(13, 21), Slope::INFINITY, 4),
        // 1/30 - 0 - infinity - 30, and v - 30u = e1, 30v - u = e2 forces
        // 899 | e2 - 30 e1, impossible for |e| = 1.
        (slope(1, 30), slope(30, 1), 3),
    ];
    for (a, b, want) in &cases {
        assert_eq!(farey_distance(a, b), *want, "closed form at ({a}, {b})");
    }
}

#[test]
fn harder_pairs_match_bfs_in_a_wide_box() {
    // Fibonacci-style slopes maximize distance for their size; spiky
    // continued fractions minimize it. Two box sizes guard against clipped
    // geodesics.
    let cases = [
        (slope(13, 21), Slope::INFINITY),
        (slope(21, 34), Slope::INFINITY),
        (slope(29, 30), slope(-29, 30)),
        (slope(1, 30), slope(30, 1)),
        (slope(17, 29), slope(-21, 23)),
        (slope(5, 26), Slope::INFINITY),
    ];
    for (a, b) in &cases {
        let want = farey_distance(a, b);
        assert_eq!(bfs_distance(a, b, 120), Some(want), "oracle at ({a}, {b})");
        assert_eq!(
            bfs_distance(a, b, 200),
            Some(want),
            "wider oracle at ({a}, {b})"
        );
    }
}

#[test]
fn short_slope_sets_transform_with_the_basis() {
    // Changing basis by S or T moves both the flat structure and the slopes;
    // the short set must follow along. Generic parameters keep energies away
    // from the bound so float guards cannot flip membership.
    let t_map = UnimodularMap::new(1, 1, 0, 1).unwrap();
    let s_map = UnimodularMap::new(0, -1, 1, 0).unwrap();
    for k in 0..20 {
        let x = -0.93 + 0.11 * k as f64;
        let y = 0.53 + 0.09 * k as f64;
        let bound = 2.95 + 0.07 * k as f64;

        let base = torus_short_slopes(x, y, bound).unwrap();
        assert!(!base.is_empty());

        // T: tau -> tau + 1, slope p/q -> (p + q)/q.
        let mut mapped: Vec<Slope> =
            base.iter().map(|s| t_map.apply(s).unwrap()).collect();
        mapped.sort();
        assert_eq!(torus_short_slopes(x + 1.0, y, bound).unwrap(), mapped);

        // S: tau -> -1/tau, slope p/q -> -q/p.
        let norm = x * x + y * y;
        let mut mapped: Vec<Slope> =
            base.iter().map(|s| s_map.apply(s).unwrap()).collect();
        mapped.sort();
        assert_eq!(
            torus_short_slopes(-x / norm, y / norm, bound).unwrap(),
            mapped
        );
    }
}
