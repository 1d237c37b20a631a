//! Randomized invariants of the slope arithmetic.

use farey_core::{
    basis_change_to_infinity, cf_expand, cf_to_slope, farey_adjacent, farey_distance,
    Slope, UnimodularMap,
};
use proptest::prelude::*;

fn slope_strategy(max: i64) -> impl Strategy<Value = Slope> {
    (-max..=max, 0..=max).prop_filter_map("0/0 is not a slope", |(p, q)| {
        Slope::new(p, q).ok()
    })
}

/// Words in S and T of bounded length, as an honest sample of small
/// unimodular maps.
fn map_strategy() -> impl Strategy<Value = UnimodularMap> {
    prop::collection::vec(0..3u8, 0..8).prop_map(|word| {
        let s = UnimodularMap::new(0, -1, 1, 0).unwrap();
        let t = UnimodularMap::new(1, 1, 0, 1).unwrap();
        let t_inv = t.inverse();
        let mut m = UnimodularMap::identity();
        for g in word {
            let gen = match g {
                0 => &s,
                1 => &t,
                _ => &t_inv,
            };
            m = m.compose(gen).unwrap();
        }
        m
    })
}

proptest! {
    #[test]
    fn distance_is_symmetric(a in slope_strategy(60), b in slope_strategy(60)) {
        prop_assert_eq!(farey_distance(&a, &b), farey_distance(&b, &a));
    }

    #[test]
    fn distance_zero_iff_equal(a in slope_strategy(60), b in slope_strategy(60)) {
        prop_assert_eq!(farey_distance(&a, &b) == 0, a == b);
    }

    #[test]
    fn distance_one_iff_adjacent(a in slope_strategy(60), b in slope_strategy(60)) {
        prop_assert_eq!(farey_distance(&a, &b) == 1, farey_adjacent(&a, &b));
    }

    #[test]
    fn distance_is_unimodular_invariant(
        a in slope_strategy(50),
        b in slope_strategy(50),
        m in map_strategy(),
    ) {
        let ma = m.apply(&a).unwrap();
        let mb = m.apply(&b).unwrap();
        prop_assert_eq!(farey_distance(&a, &b), farey_distance(&ma, &mb));
    }

    #[test]
    fn triangle_inequality(
        a in slope_strategy(40),
        b in slope_strategy(40),
        c in slope_strategy(40),
    ) {
        let ab = farey_distance(&a, &b);
        let bc = farey_distance(&b, &c);
        let ac = farey_distance(&a, &c);
        prop_assert!(ac <= ab + bc, "d({a},{c}) = {ac} > {ab} + {bc}");
        // Distances are graph distances, so each hop changes d by at most 1.
        prop_assert!(ac + bc >= ab && ab + ac >= bc);
    }

    #[test]
    fn expansion_round_trips(s in slope_strategy(200)) {
        prop_assume!(!s.is_infinity());
        let cf = cf_expand(&s).unwrap();
        prop_assert!(cf[1..].iter().all(|&a| a >= 1));
        if cf.len() > 1 {
            prop_assert!(*cf.last().unwrap() >= 2);
        }
        prop_assert_eq!(cf_to_slope(&cf).unwrap(), s);
    }

    #[test]
    fn basis_change_sends_curve_to_infinity(s in slope_strategy(80)) {
        let m = basis_change_to_infinity(&s);
        prop_assert_eq!(m.det(), 1);
        prop_assert_eq!(m.apply(&s).unwrap(), Slope::INFINITY);
    }

    #[test]
    fn distance_to_infinity_matches_denominator_structure(s in slope_strategy(100)) {
        prop_assume!(!s.is_infinity());
        let d = farey_distance(&s, &Slope::INFINITY);
        if s.q() == 1 {
            prop_assert_eq!(d, 1);
        } else {
            // Non-integers are never adjacent to infinity but always within
            // one more step than their expansion length allows.
            prop_assert!(d >= 2);
            let cf = cf_expand(&s).unwrap();
            prop_assert!(d <= cf.len() as u64);
        }
    }
}
