//! Curves as reduced cyclic walks in the dual graph of their carrier.
//!
//! A punctured surface deformation-retracts onto the dual spine of an ideal
//! triangulation, so free-homotopy classes of closed curves are exactly
//! cyclically reduced closed walks in the dual graph, unique up to rotation
//! and reversal.  The canonical form below (lexicographically least rotation
//! of the walk and of its reversal) is therefore a complete isotopy invariant,
//! and the per-edge crossing counts of the reduced walk are the curve's
//! normal coordinates: a geodesic representative crosses edges without
//! backtracking, and reduced cyclic walks are unique in their class, so the
//! reduced walk's counts agree with taut position.

use crate::carrier::{self, Step, Triangulation};
use crate::error::{CurveError, Result};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::sync::Arc;

/// Largest admissible coordinate total.  Tracing walks every crossing point
/// once, so the bound keeps construction near-instant and protects the
/// quadratic overlay passes downstream.
pub const MAX_TOTAL_WEIGHT: u64 = 2_000_000;

/// Cancels adjacent opposite crossings of the same edge, cyclically.
/// Reduction in a free groupoid is confluent, so greedy order is safe.
pub fn reduce_cyclic(walk: Vec<Step>) -> Vec<Step> {
    let mut st: Vec<Step> = Vec::with_capacity(walk.len());
    for s in walk {
        match st.last() {
            Some(&t) if t.0 == s.0 && t.1 != s.1 => {
                st.pop();
            }
            _ => st.push(s),
        }
    }
    while st.len() >= 2 {
        let f = st[0];
        let l = *st.last().expect("nonempty");
        if f.0 == l.0 && f.1 != l.1 {
            st.pop();
            st.remove(0);
        } else {
            break;
        }
    }
    st
}

/// Index of the lexicographically least rotation, by the classic two-pointer
/// duel; linear time, which matters for near-periodic twist walks.
fn least_rotation(s: &[Step]) -> usize {
    let n = s.len();
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let a = s[(i + k) % n];
        let b = s[(j + k) % n];
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}

fn rotated(s: &[Step], at: usize) -> Vec<Step> {
    let mut out = Vec::with_capacity(s.len());
    out.extend_from_slice(&s[at..]);
    out.extend_from_slice(&s[..at]);
    out
}

/// Reverses a walk: traverse backwards, flipping every crossing direction.
pub fn reverse_walk(s: &[Step]) -> Vec<Step> {
    s.iter().rev().map(|&(e, d)| (e, 1 - d)).collect()
}

/// Least rotation over the walk and its reversal; complete invariant of the
/// unoriented free-homotopy class.
pub fn canonical_cyclic(walk: &[Step]) -> Vec<Step> {
    if walk.is_empty() {
        return Vec::new();
    }
    let fwd = rotated(walk, least_rotation(walk));
    let rev_walk = reverse_walk(walk);
    let rev = rotated(&rev_walk, least_rotation(&rev_walk));
    if rev < fwd {
        rev
    } else {
        fwd
    }
}

/// Per-triangle corner counts for a coordinate vector: `n_k` arcs cut the
/// corner at the start of slot k.  Fails on parity or triangle-inequality
/// violations.
pub(crate) fn corner_counts(carrier: &Triangulation, coords: &[u64], t: usize) -> Result<[u64; 3]> {
    let w: Vec<u128> = carrier
        .triangle(t)
        .iter()
        .map(|&e| u128::from(coords[e]))
        .collect();
    if (w[0] + w[1] + w[2]) % 2 != 0 {
        return Err(CurveError::InvalidCoordinates(format!(
            "triangle {t} has odd total weight"
        )));
    }
    let mut n = [0u64; 3];
    for k in 0..3 {
        let sum = w[k] + w[(k + 2) % 3];
        let other = w[(k + 1) % 3];
        if sum < other {
            return Err(CurveError::InvalidCoordinates(format!(
                "triangle {t} violates the triangle inequality at corner {k}"
            )));
        }
        n[k] = ((sum - other) / 2) as u64;
    }
    Ok(n)
}

/// One triangle passage of a traced strand, named by the chord it runs
/// along: `chord_type` is the corner the chord cuts, `depth` its position in
/// the nest there, innermost first.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) struct Transit {
    pub tri: usize,
    pub chord_type: u8,
    pub depth: u64,
}

/// A traced component with its passage record: `transits[k]` is the triangle
/// crossed between `walk[k]` and the following step, and `points[k]` the
/// position of the crossing among the edge's points, in its first end's
/// coordinates.  The points feed the order oracle in the subsurface tests.
pub(crate) struct TracedStrand {
    pub walk: Vec<Step>,
    pub transits: Vec<Transit>,
    #[allow(dead_code)]
    pub points: Vec<usize>,
}

/// Resolves an admissible coordinate vector into the walks of its components.
/// Every crossing point is traversed exactly once, so the result is the full
/// embedded multicurve the coordinates describe.
pub fn trace_components(carrier: &Triangulation, coords: &[u64]) -> Result<Vec<Vec<Step>>> {
    Ok(trace_detailed(carrier, coords)?.into_iter().map(|s| s.walk).collect())
}

pub(crate) fn trace_detailed(carrier: &Triangulation, coords: &[u64]) -> Result<Vec<TracedStrand>> {
    if coords.len() != carrier.n_edges() {
        return Err(CurveError::InvalidCoordinates(format!(
            "expected {} coordinates, got {}",
            carrier.n_edges(),
            coords.len()
        )));
    }
    let total: u64 = coords.iter().try_fold(0u64, |a, &b| {
        a.checked_add(b)
            .ok_or_else(|| CurveError::Overflow("coordinate total".into()))
    })?;
    if total == 0 {
        return Err(CurveError::InvalidCoordinates("all coordinates are zero".into()));
    }
    if total > MAX_TOTAL_WEIGHT {
        return Err(CurveError::InvalidCoordinates(format!(
            "coordinate total {total} exceeds the supported {MAX_TOTAL_WEIGHT}"
        )));
    }
    let mut corners = Vec::with_capacity(carrier.n_triangles());
    for t in 0..carrier.n_triangles() {
        corners.push(corner_counts(carrier, coords, t)?);
    }

    let mut offset = vec![0usize; carrier.n_edges() + 1];
    for e in 0..carrier.n_edges() {
        offset[e + 1] = offset[e] + coords[e] as usize;
    }
    let mut visited = vec![false; total as usize];
    let mut components = Vec::new();

    for e0 in 0..carrier.n_edges() {
        for i0 in 0..coords[e0] as usize {
            if visited[offset[e0] + i0] {
                continue;
            }
            // Walk the strand through (e0, i0), entering the edge's second
            // end first.  Point indices run along the first end's side in its
            // triangle's counterclockwise direction.
            let mut walk: Vec<Step> = Vec::new();
            let mut transits: Vec<Transit> = Vec::new();
            let mut points: Vec<usize> = Vec::new();
            let (mut e, mut i, mut entering) = (e0, i0, 1usize);
            loop {
                visited[offset[e] + i] = true;
                walk.push((e, if entering == 1 { 0 } else { 1 }));
                points.push(i);
                let (t, s8) = carrier.edge_ends(e)[entering];
                let s = s8 as usize;
                let w_s = coords[carrier.triangle(t)[s]];
                let q = if entering == 1 { w_s - 1 - i as u64 } else { i as u64 };
                let n = corners[t];
                // Arcs through slot s: the first n[s] positions cut the
                // corner at the slot's start, the rest cut the one at its
                // end.  Nested arcs pair positions counted from the corner.
                let (exit_slot, exit_pos) = if q < n[s] {
                    transits.push(Transit { tri: t, chord_type: s as u8, depth: q });
                    let x = (s + 2) % 3;
                    let w_x = coords[carrier.triangle(t)[x]];
                    (x, w_x - 1 - q)
                } else {
                    let x = (s + 1) % 3;
                    transits.push(Transit { tri: t, chord_type: x as u8, depth: w_s - 1 - q });
                    (x, w_s - 1 - q)
                };
                let f = carrier.triangle(t)[exit_slot];
                let end_idx = if carrier.edge_ends(f)[0] == (t, exit_slot as u8) { 0 } else { 1 };
                let j = if end_idx == 0 {
                    exit_pos as usize
                } else {
                    (coords[f] - 1 - exit_pos) as usize
                };
                (e, i, entering) = (f, j, 1 - end_idx);
                if e == e0 && i == i0 && entering == 1 {
                    break;
                }
            }
            debug_assert_eq!(reduce_cyclic(walk.clone()), walk, "traced walk must be reduced");
            components.push(TracedStrand { walk, transits, points });
        }
    }
    Ok(components)
}

fn is_peripheral(carrier: &Triangulation, canonical: &[Step]) -> bool {
    (0..carrier.n_vertices()).any(|v| carrier.vertex_link(v) == canonical)
}

/// An essential simple closed curve, stored as its canonical reduced walk
/// with the crossing counts alongside.
#[derive(Debug, Clone)]
pub struct NormalCurve {
    carrier: Arc<Triangulation>,
    walk: Vec<Step>,
    coords: Vec<u64>,
}

impl PartialEq for NormalCurve {
    fn eq(&self, other: &Self) -> bool {
        self.carrier.id() == other.carrier.id() && self.walk == other.walk
    }
}
impl Eq for NormalCurve {}

impl PartialOrd for NormalCurve {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for NormalCurve {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.carrier.id(), &self.walk).cmp(&(other.carrier.id(), &other.walk))
    }
}

impl NormalCurve {
    /// Builds the curve a coordinate vector describes.  The vector must be
    /// admissible, connected (one component), and essential.
    pub fn from_coords(carrier: &Arc<Triangulation>, coords: &[u64]) -> Result<Self> {
        let comps = trace_components(carrier, coords)?;
        if comps.len() != 1 {
            return Err(CurveError::InvalidCoordinates(format!(
                "coordinates describe {} components, expected one curve",
                comps.len()
            )));
        }
        Self::from_reduced_walk(carrier, comps.into_iter().next().expect("one component"))
    }

    /// Wraps an already reduced walk.  Internal constructor for twist and
    /// move surgery; validates essentialness, not embeddedness.
    pub(crate) fn from_reduced_walk(carrier: &Arc<Triangulation>, walk: Vec<Step>) -> Result<Self> {
        if walk.is_empty() {
            return Err(CurveError::NotSimple("the walk is null-homotopic".into()));
        }
        let canonical = canonical_cyclic(&walk);
        if is_peripheral(carrier, &canonical) {
            return Err(CurveError::NotSimple("the curve bounds a puncture".into()));
        }
        let mut coords = vec![0u64; carrier.n_edges()];
        for &(e, _) in &canonical {
            coords[e] += 1;
        }
        Ok(NormalCurve {
            carrier: carrier.clone(),
            walk: canonical,
            coords,
        })
    }

    /// Builds the curve freely homotopic to a word in the carrier's polygon
    /// generators: entry `k+1` reads generator k, `-(k+1)` its inverse.  The
    /// word must cyclically reduce to a primitive word; the result is checked
    /// to be embedded via its self-crossing count.
    pub fn from_word(carrier: &Arc<Triangulation>, word: &[i32]) -> Result<Self> {
        let charts = carrier.generator_charts();
        if charts.is_empty() {
            return Err(CurveError::InvalidParameter(
                "carrier was not built from a polygon word".into(),
            ));
        }
        if word.is_empty() {
            return Err(CurveError::InvalidParameter("empty word".into()));
        }
        let n = 2 + 2 * charts.len().max(2) - 2; // polygon side count, below
        let n_sides = charts.len() * 2;
        let _ = n;
        // Triangle owning polygon side p in the fan.
        let tri_of_side = |p: usize| -> usize {
            if p == 0 {
                0
            } else if p == n_sides - 1 {
                n_sides - 3
            } else {
                p - 1
            }
        };
        let slot_of_side = |p: usize| -> usize {
            if p == 0 {
                0
            } else if p == n_sides - 1 {
                2
            } else {
                1
            }
        };
        let mut walk: Vec<Step> = Vec::new();
        let push_crossing = |walk: &mut Vec<Step>, p: usize| {
            let e = carrier.triangle(tri_of_side(p))[slot_of_side(p)];
            let end = (tri_of_side(p), slot_of_side(p) as u8);
            let dir = if carrier.edge_ends(e)[0] == end { 0 } else { 1 };
            walk.push((e, dir));
        };
        let exit_side = |letter: i32| -> Result<usize> {
            let idx = letter.unsigned_abs() as usize;
            if idx == 0 || idx > charts.len() {
                return Err(CurveError::InvalidParameter(format!(
                    "word letter {letter} out of range"
                )));
            }
            let chart = charts[idx - 1];
            Ok(if letter > 0 { chart.straight } else { chart.inverted })
        };
        let entry_side = |letter: i32| -> Result<usize> {
            let idx = letter.unsigned_abs() as usize;
            let chart = charts[idx - 1];
            Ok(if letter > 0 { chart.inverted } else { chart.straight })
        };
        for (j, &letter) in word.iter().enumerate() {
            let exit = exit_side(letter)?;
            push_crossing(&mut walk, exit);
            // Interior fan path from the re-entry triangle to the triangle of
            // the next exit side, crossing the diagonals in between.
            let from = tri_of_side(entry_side(letter)?);
            let to = tri_of_side(exit_side(word[(j + 1) % word.len()])?);
            let diag_between = |t: usize| carrier.triangle(t)[2]; // shared with t+1
            if from <= to {
                for t in from..to {
                    let e = diag_between(t);
                    let end = (t, 2u8);
                    let dir = if carrier.edge_ends(e)[0] == end { 0 } else { 1 };
                    walk.push((e, dir));
                }
            } else {
                for t in (to..from).rev() {
                    let e = diag_between(t);
                    let end = (t + 1, 0u8);
                    let dir = if carrier.edge_ends(e)[0] == end { 0 } else { 1 };
                    walk.push((e, dir));
                }
            }
        }
        let reduced = reduce_cyclic(walk);
        if reduced.is_empty() {
            return Err(CurveError::NotSimple("word is null-homotopic".into()));
        }
        if proper_power(&reduced) {
            return Err(CurveError::NotSimple("word is a proper power".into()));
        }
        let curve = Self::from_reduced_walk(carrier, reduced)?;
        let self_crossings = crate::geometry::self_crossing_number(&curve);
        if self_crossings != 0 {
            return Err(CurveError::NotSimple(format!(
                "word defines a curve with {self_crossings} self-crossings"
            )));
        }
        Ok(curve)
    }

    pub fn carrier(&self) -> &Arc<Triangulation> {
        &self.carrier
    }

    /// Canonical reduced walk: least rotation over both orientations.
    pub fn walk(&self) -> &[Step] {
        &self.walk
    }

    /// Crossing counts per edge of the carrier.
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn same_carrier(&self, other: &NormalCurve) -> Result<()> {
        if self.carrier.id() != other.carrier.id() {
            return Err(CurveError::CarrierMismatch(
                self.carrier.id().to_string(),
                other.carrier.id().to_string(),
            ));
        }
        Ok(())
    }
}

fn proper_power(walk: &[Step]) -> bool {
    let m = walk.len();
    for d in 1..m {
        if m % d != 0 {
            continue;
        }
        if (0..m).all(|i| walk[i] == walk[(i + d) % m]) {
            return true;
        }
    }
    false
}

#[derive(Serialize, Deserialize)]
struct CurveWire {
    carrier: String,
    coords: Vec<u64>,
}

impl Serialize for NormalCurve {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CurveWire {
            carrier: self.carrier.id().to_string(),
            coords: self.coords.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for NormalCurve {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = CurveWire::deserialize(d)?;
        let carrier = carrier::builtin(&wire.carrier)
            .ok_or_else(|| D::Error::custom(format!("unknown carrier id {:?}", wire.carrier)))?;
        NormalCurve::from_coords(&carrier, &wire.coords).map_err(D::Error::custom)
    }
}

/// A system of pairwise disjoint, pairwise non-isotopic essential curves.
/// Components are kept sorted, so the ordering is a total order on systems.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct MultiCurve {
    components: Vec<NormalCurve>,
}

impl MultiCurve {
    pub fn new(mut components: Vec<NormalCurve>) -> Result<Self> {
        if components.is_empty() {
            return Err(CurveError::InvalidParameter("empty multicurve".into()));
        }
        for w in components.windows(2) {
            w[0].same_carrier(&w[1])?;
        }
        components.sort();
        for w in components.windows(2) {
            if w[0] == w[1] {
                return Err(CurveError::InvalidParameter(
                    "multicurve repeats an isotopy class".into(),
                ));
            }
        }
        for (a_idx, a) in components.iter().enumerate() {
            for b in &components[a_idx + 1..] {
                let i = crate::geometry::intersection_number(a, b)?;
                if i != 0 {
                    return Err(CurveError::InvalidParameter(format!(
                        "multicurve components cross {i} times"
                    )));
                }
            }
        }
        Ok(MultiCurve { components })
    }

    /// All components an admissible coordinate vector describes.
    pub fn from_coords(carrier: &Arc<Triangulation>, coords: &[u64]) -> Result<Self> {
        let comps = trace_components(carrier, coords)?;
        let mut curves = Vec::with_capacity(comps.len());
        for walk in comps {
            curves.push(NormalCurve::from_reduced_walk(carrier, walk)?);
        }
        Self::new(curves)
    }

    pub fn components(&self) -> &[NormalCurve] {
        &self.components
    }

    pub fn carrier(&self) -> &Arc<Triangulation> {
        self.components[0].carrier()
    }

    pub fn coords(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.carrier().n_edges()];
        for c in &self.components {
            for (o, w) in out.iter_mut().zip(c.coords()) {
                *o += w;
            }
        }
        out
    }

    pub fn contains(&self, curve: &NormalCurve) -> bool {
        self.components.iter().any(|c| c == curve)
    }
}

impl Serialize for MultiCurve {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CurveWire {
            carrier: self.carrier().id().to_string(),
            coords: self.coords(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiCurve {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = CurveWire::deserialize(d)?;
        let carrier = carrier::builtin(&wire.carrier)
            .ok_or_else(|| D::Error::custom(format!("unknown carrier id {:?}", wire.carrier)))?;
        MultiCurve::from_coords(&carrier, &wire.coords).map_err(D::Error::custom)
    }
}

/// Normal coordinates of the slope p/q on the punctured-torus carrier, whose
/// edges are the 0-, infinity-, and 1-slope circles in that order.
pub fn torus_slope_coords(slope: &farey_core::Slope) -> [u64; 3] {
    let p = i128::from(slope.p());
    let q = i128::from(slope.q());
    [p.unsigned_abs() as u64, q.unsigned_abs() as u64, (p - q).unsigned_abs() as u64]
}

/// Recovers the slope of a curve on the punctured-torus carrier.
pub fn torus_slope_of(curve: &NormalCurve) -> Result<farey_core::Slope> {
    if curve.carrier().id() != carrier::PUNCTURED_TORUS {
        return Err(CurveError::InvalidParameter(format!(
            "slope chart only exists on {:?}",
            carrier::PUNCTURED_TORUS
        )));
    }
    let c = curve.coords();
    let (a, b, d) = (c[0], c[1], c[2]);
    let q = i64::try_from(b).map_err(|_| CurveError::Overflow("slope coordinate".into()))?;
    for p in [
        i64::try_from(a).map_err(|_| CurveError::Overflow("slope coordinate".into()))?,
        -(i64::try_from(a).map_err(|_| CurveError::Overflow("slope coordinate".into()))?),
    ] {
        if (i128::from(p) - i128::from(q)).unsigned_abs() as u64 == d {
            return farey_core::Slope::new(p, q)
                .map_err(|e| CurveError::InvalidParameter(e.to_string()));
        }
    }
    Err(CurveError::InvalidCoordinates(
        "coordinates fit no slope on the punctured torus".into(),
    ))
}
