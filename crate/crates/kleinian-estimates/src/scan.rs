//! Breadth-first scans over the triangle tree of slopes: short-curve
//! enumeration, length-ratio minimization, and tube-position reports.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use farey_core::Slope;

use crate::error::{EstimateError, Result};
use crate::estimate::{complex_length_from_trace, hyp_distance, teich_param};
use crate::types::{TraceSeed, UHPoint};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Deepest allowed scan; keeps slope entries far inside `i64`.
pub const MAX_SCAN_DEPTH: u32 = 48;

/// Guard added to length cutoffs so exact boundary values are kept.
const LENGTH_GUARD: f64 = 1e-12;

/// Frontier size below which splitting work across threads is a loss.
#[cfg(feature = "parallel")]
const PAR_THRESHOLD: usize = 64;

/// Triangle of pairwise adjacent slopes entered across the edge `(a, b)`;
/// `c` is the vertex created by the entering flip.
#[derive(Clone, Copy)]
struct TriState {
    a: Slope,
    b: Slope,
    c: Slope,
    ta: Complex64,
    tb: Complex64,
    tc: Complex64,
}

/// Third vertex of the triangle across edge `(u, v)` from `w`: of the two
/// candidates `u + v` and `u - v` (componentwise), the one that is not `w`.
fn flip_partner(u: &Slope, v: &Slope, w: &Slope) -> Slope {
    let sum = Slope::new(u.p() + v.p(), u.q() + v.q()).expect("sum of adjacent slopes is primitive");
    if sum != *w {
        return sum;
    }
    Slope::new(u.p() - v.p(), u.q() - v.q()).expect("difference of adjacent slopes is primitive")
}

fn child_across(u: Slope, v: Slope, w: Slope, tu: Complex64, tv: Complex64, tw: Complex64) -> TriState {
    let c = flip_partner(&u, &v, &w);
    TriState {
        a: u,
        b: v,
        c,
        ta: tu,
        tb: tv,
        tc: tu * tv - tw,
    }
}

/// The two triangles reachable from `s` without flipping back.
fn expand(s: &TriState) -> [TriState; 2] {
    [
        child_across(s.a, s.c, s.b, s.ta, s.tc, s.tb),
        child_across(s.b, s.c, s.a, s.tb, s.tc, s.ta),
    ]
}

fn next_level(level: &[TriState], parallel: bool) -> Vec<TriState> {
    #[cfg(feature = "parallel")]
    if parallel && level.len() >= PAR_THRESHOLD {
        let pairs: Vec<[TriState; 2]> = level.par_iter().map(expand).collect();
        return pairs.into_iter().flatten().collect();
    }
    let _ = parallel;
    level.iter().flat_map(|s| expand(s).into_iter()).collect()
}

fn validate_depth(depth: u32) -> Result<()> {
    if depth == 0 {
        return Err(EstimateError::InvalidParameter(
            "scan depth must be at least 1".to_string(),
        ));
    }
    if depth > MAX_SCAN_DEPTH {
        return Err(EstimateError::InvalidParameter(format!(
            "scan depth {depth} exceeds the maximum {MAX_SCAN_DEPTH}"
        )));
    }
    Ok(())
}

fn ball_impl(seed: &TraceSeed, depth: u32, parallel: bool) -> Result<BTreeMap<Slope, Complex64>> {
    validate_depth(depth)?;
    let [x, y, z] = seed.triple();
    let inf = Slope::INFINITY;
    let zero = Slope::new(0, 1).expect("0/1 is a slope");
    let one = Slope::new(1, 1).expect("1/1 is a slope");

    let mut traces = BTreeMap::new();
    traces.insert(inf, x);
    traces.insert(zero, y);
    traces.insert(one, z);

    // The base triangle is the only one with three unexplored edges.
    let mut level = vec![
        child_across(inf, zero, one, x, y, z),
        child_across(zero, one, inf, y, z, x),
        child_across(inf, one, zero, x, z, y),
    ];
    for d in 0..depth {
        for s in &level {
            let prev = traces.insert(s.c, s.tc);
            debug_assert!(prev.is_none(), "each slope is created exactly once");
        }
        if d + 1 < depth {
            level = next_level(&level, parallel);
        }
    }
    Ok(traces)
}

/// All slopes within `depth` triangle flips of the base triangle
/// `(infinity, 0, 1)`, with the trace of each under `seed`.
pub fn triangle_ball(seed: &TraceSeed, depth: u32) -> Result<BTreeMap<Slope, Complex64>> {
    ball_impl(seed, depth, true)
}

/// One enumerated slope with its trace and, when loxodromic, its length.
#[derive(Clone, Debug, Serialize)]
pub struct ScanRow {
    pub slope: Slope,
    #[serde(with = "crate::types::complex_pair")]
    pub trace: Complex64,
    pub ell: Option<f64>,
    pub theta: Option<f64>,
    /// True when the trace is elliptic or parabolic (zero length, always kept).
    pub degenerate: bool,
}

/// Result of a short-curve scan: the kept slopes and how they sit in the
/// adjacency graph.
#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub bound: f64,
    pub depth: u32,
    pub rows: Vec<ScanRow>,
    /// Connected components of the kept slopes under Farey adjacency.
    pub components: Vec<Vec<Slope>>,
    pub connected: bool,
}

impl ScanReport {
    pub fn slopes(&self) -> Vec<Slope> {
        self.rows.iter().map(|r| r.slope).collect()
    }
}

fn components_of(slopes: &[Slope]) -> Vec<Vec<Slope>> {
    // Union-find over pairwise adjacency; quadratic in the kept count, which
    // stays small because only short curves are kept.
    let n = slopes.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(parent: &mut Vec<usize>, mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if slopes[i].det(&slopes[j]).abs() == 1 {
                let (ri, rj) = (root(&mut parent, i), root(&mut parent, j));
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut buckets: BTreeMap<usize, Vec<Slope>> = BTreeMap::new();
    for i in 0..n {
        let r = root(&mut parent, i);
        buckets.entry(r).or_default().push(slopes[i]);
    }
    buckets.into_values().collect()
}

fn scan_impl(seed: &TraceSeed, bound: f64, depth: u32, parallel: bool) -> Result<ScanReport> {
    if !bound.is_finite() {
        return Err(EstimateError::InvalidParameter(format!(
            "length bound {bound} must be finite"
        )));
    }
    let traces = ball_impl(seed, depth, parallel)?;
    let mut rows = Vec::new();
    for (slope, trace) in traces {
        match complex_length_from_trace(trace) {
            Ok(lambda) => {
                if lambda.ell() <= bound + LENGTH_GUARD {
                    rows.push(ScanRow {
                        slope,
                        trace,
                        ell: Some(lambda.ell()),
                        theta: Some(lambda.theta()),
                        degenerate: false,
                    });
                }
            }
            Err(EstimateError::Parabolic) | Err(EstimateError::EllipticOrParabolic) => {
                rows.push(ScanRow {
                    slope,
                    trace,
                    ell: None,
                    theta: None,
                    degenerate: true,
                });
            }
            Err(e) => return Err(e),
        }
    }
    let kept: Vec<Slope> = rows.iter().map(|r| r.slope).collect();
    let components = components_of(&kept);
    let connected = components.len() <= 1;
    Ok(ScanReport {
        bound,
        depth,
        rows,
        components,
        connected,
    })
}

/// Slopes within `depth` flips whose curves have translation length at most
/// `bound`, with the connectivity of the kept set.  Elliptic and parabolic
/// traces count as length zero and are kept with a flag.
pub fn short_slope_scan(seed: &TraceSeed, bound: f64, depth: u32) -> Result<ScanReport> {
    scan_impl(seed, bound, depth, true)
}

/// Single-threaded variant of [`short_slope_scan`]; same output, kept
/// callable so the two routes can be compared.
pub fn short_slope_scan_seq(seed: &TraceSeed, bound: f64, depth: u32) -> Result<ScanReport> {
    scan_impl(seed, bound, depth, false)
}

/// One slope in a length-ratio comparison of two representations.
#[derive(Clone, Debug, Serialize)]
pub struct RatioRow {
    pub slope: Slope,
    /// Length under the scanned seed; absent when the trace is degenerate.
    pub ell: Option<f64>,
    pub ell_ref: f64,
    pub ratio: f64,
    pub degenerate: bool,
}

/// Minimum of `length(seed) / length(reference)` over a ball of slopes.
#[derive(Clone, Debug, Serialize)]
pub struct RatioReport {
    pub depth: u32,
    pub infimum: f64,
    pub minimizer: Slope,
    /// Set to "elliptic/parabolic hit" when any scanned trace degenerates.
    pub flag: Option<String>,
    pub rows: Vec<RatioRow>,
}

/// Scans `length(seed) / length(reference)` over all slopes within `depth`
/// flips and reports the minimum.  The reference must be purely hyperbolic:
/// every scanned trace real and greater than 2.  A degenerate trace of the
/// scanned seed contributes ratio 0 and raises the report flag.
pub fn simple_length_ratio_scan(
    seed: &TraceSeed,
    reference: &TraceSeed,
    depth: u32,
) -> Result<RatioReport> {
    let scanned = triangle_ball(seed, depth)?;
    let ref_traces = triangle_ball(reference, depth)?;
    let mut rows = Vec::new();
    let mut degenerate_hit = false;
    for (slope, trace) in scanned {
        let rt = ref_traces[&slope];
        if rt.im.abs() > 1e-9 || rt.re <= 2.0 {
            return Err(EstimateError::InvalidParameter(format!(
                "reference trace {rt} at slope {slope} is not real and greater than 2"
            )));
        }
        let ell_ref = complex_length_from_trace(rt)?.ell();
        if !ell_ref.is_finite() {
            return Err(EstimateError::InvalidParameter(format!(
                "reference length overflows at slope {slope}; reduce the depth"
            )));
        }
        match complex_length_from_trace(trace) {
            Ok(lambda) => rows.push(RatioRow {
                slope,
                ell: Some(lambda.ell()),
                ell_ref,
                ratio: lambda.ell() / ell_ref,
                degenerate: false,
            }),
            Err(EstimateError::Parabolic) | Err(EstimateError::EllipticOrParabolic) => {
                degenerate_hit = true;
                rows.push(RatioRow {
                    slope,
                    ell: None,
                    ell_ref,
                    ratio: 0.0,
                    degenerate: true,
                });
            }
            Err(e) => return Err(e),
        }
    }
    // First strict minimum, so ties resolve to the smallest slope.
    let mut best = &rows[0];
    for r in &rows[1..] {
        if r.ratio < best.ratio {
            best = r;
        }
    }
    let report = RatioReport {
        depth,
        infimum: best.ratio,
        minimizer: best.slope,
        flag: degenerate_hit.then(|| "elliptic/parabolic hit".to_string()),
        rows,
    };
    Ok(report)
}

/// Where one slope's tube parameter lands relative to the basepoint `i`.
#[derive(Clone, Debug, Serialize)]
pub struct ConsistencyRow {
    pub slope: Slope,
    pub ell: f64,
    pub theta: f64,
    pub distance: f64,
}

/// For every loxodromic slope in the ball, the hyperbolic distance from its
/// tube parameter to the basepoint `i`.
///
/// Purely descriptive: the distances indicate how spread out the tube
/// positions are, and no threshold is imposed on them.
pub fn torus_consistency_report(seed: &TraceSeed, depth: u32) -> Result<Vec<ConsistencyRow>> {
    let base = UHPoint::basepoint();
    let mut rows = Vec::new();
    for (slope, trace) in triangle_ball(seed, depth)? {
        let lambda = match complex_length_from_trace(trace) {
            Ok(l) => l,
            Err(EstimateError::Parabolic) | Err(EstimateError::EllipticOrParabolic) => continue,
            Err(e) => return Err(e),
        };
        rows.push(ConsistencyRow {
            slope,
            ell: lambda.ell(),
            theta: lambda.theta(),
            distance: hyp_distance(&teich_param(&lambda), &base),
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::markov::trace_propagate;

    fn slope(p: i64, q: i64) -> Slope {
        Slope::new(p, q).unwrap()
    }

    #[test]
    fn first_two_shells_of_the_modular_torus() {
        let ball = triangle_ball(&TraceSeed::modular_torus(), 2).unwrap();
        assert_eq!(ball.len(), 12);
        for (p, q, want) in [
            (1, 0, 3.0),
            (0, 1, 3.0),
            (1, 1, 3.0),
            (-1, 1, 6.0),
            (1, 2, 6.0),
            (2, 1, 6.0),
            (-2, 1, 15.0),
            (-1, 2, 15.0),
            (1, 3, 15.0),
            (2, 3, 15.0),
            (3, 2, 15.0),
            (3, 1, 15.0),
        ] {
            assert_eq!(ball[&slope(p, q)], Complex64::new(want, 0.0), "{p}/{q}");
        }
    }

    #[test]
    fn ball_agrees_with_slopewise_propagation() {
        let seed = TraceSeed::modular_torus();
        let ball = triangle_ball(&seed, 6).unwrap();
        for (s, t) in &ball {
            let direct = trace_propagate(&seed, s);
            assert!(
                (t - direct).norm() <= 1e-9 * direct.norm().max(1.0),
                "slope {s}"
            );
        }
    }

    #[test]
    fn scan_below_the_systole_is_empty() {
        let report = short_slope_scan(&TraceSeed::modular_torus(), 1.5, 8).unwrap();
        assert!(report.rows.is_empty());
        assert!(report.connected);
    }

    #[test]
    fn scan_at_two_keeps_exactly_the_base_triangle() {
        let report = short_slope_scan(&TraceSeed::modular_torus(), 2.0, 8).unwrap();
        assert_eq!(
            report.slopes(),
            vec![slope(1, 0), slope(0, 1), slope(1, 1)]
        );
        assert!(report.connected);
        assert_eq!(report.components.len(), 1);
    }

    #[test]
    fn widening_the_bound_pulls_in_the_next_trace_level() {
        // Trace 6 means length 2 arccosh(3) = 3.5255; the three trace-6
        // slopes are the flips of the base triangle.
        let report = short_slope_scan(&TraceSeed::modular_torus(), 3.6, 6).unwrap();
        assert_eq!(report.rows.len(), 6);
        assert!(report.connected);
        let report = short_slope_scan(&TraceSeed::modular_torus(), 3.5, 6).unwrap();
        assert_eq!(report.rows.len(), 3);
    }

    #[test]
    fn sequential_and_default_scans_agree() {
        let seed = TraceSeed::modular_torus();
        let a = short_slope_scan(&seed, 8.0, 9).unwrap();
        let b = short_slope_scan_seq(&seed, 8.0, 9).unwrap();
        assert_eq!(a.slopes(), b.slopes());
        assert_eq!(a.components, b.components);
        for (ra, rb) in a.rows.iter().zip(b.rows.iter()) {
            assert_eq!(ra.trace, rb.trace);
            assert_eq!(ra.ell, rb.ell);
        }
    }

    #[test]
    fn self_ratio_is_exactly_one_at_the_smallest_slope() {
        let seed = TraceSeed::modular_torus();
        let report = simple_length_ratio_scan(&seed, &seed, 7).unwrap();
        assert_eq!(report.infimum, 1.0);
        assert_eq!(report.minimizer, Slope::INFINITY);
        assert!(report.flag.is_none());
        assert!(report.rows.iter().all(|r| r.ratio == 1.0));
    }

    #[test]
    fn depth_and_bound_validation() {
        let seed = TraceSeed::modular_torus();
        assert!(short_slope_scan(&seed, 2.0, 0).is_err());
        assert!(short_slope_scan(&seed, 2.0, MAX_SCAN_DEPTH + 1).is_err());
        assert!(short_slope_scan(&seed, f64::NAN, 3).is_err());
        assert!(short_slope_scan(&seed, f64::INFINITY, 3).is_err());
    }

    #[test]
    fn consistency_report_covers_every_loxodromic_slope() {
        let rows = torus_consistency_report(&TraceSeed::modular_torus(), 5).unwrap();
        assert_eq!(rows.len(), triangle_ball(&TraceSeed::modular_torus(), 5).unwrap().len());
        for r in &rows {
            assert!(r.distance.is_finite());
            assert!(r.ell > 0.0);
        }
    }
}
