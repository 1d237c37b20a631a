//! Cutting along a multicurve and classifying the complementary pieces.
//!
//! The census is combinatorial.  The chords of the multicurve divide each
//! triangle into nested corner bands and one central zone; gluing the zones
//! across edge segments assembles the pieces.  Euler characteristics come
//! from the cell counts of the cut-open complex with the ideal vertices left
//! out, so a piece's characteristic is that of the open subsurface with its
//! punctures removed.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::carrier::{Step, Triangulation};
use crate::curve::{self, MultiCurve, NormalCurve, Transit};
use crate::error::{CurveError, Result};

/// Disjoint-set forest over the local regions of a cut.
struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Region layout of one triangle: `n[k]` chords cut corner k, leaving
/// `n[0] + n[1] + n[2] + 1` zones.  Locals are numbered corner bands first,
/// innermost band 0, with the central zone last.
#[derive(Clone, Copy)]
struct TriLayout {
    n: [u64; 3],
    w: [u64; 3],
    base: usize,
}

impl TriLayout {
    fn count(&self) -> usize {
        (self.n[0] + self.n[1] + self.n[2]) as usize + 1
    }

    fn corner(&self, k: usize, band: u64) -> usize {
        debug_assert!(band < self.n[k]);
        let before: u64 = self.n[..k].iter().sum();
        self.base + (before + band) as usize
    }

    fn central(&self) -> usize {
        self.base + (self.n[0] + self.n[1] + self.n[2]) as usize
    }

    /// Region met by slot-`k` segment `s`, for `s` in `0..=w[k]`: segment `s`
    /// lies between crossing positions `s - 1` and `s` along the slot.
    fn slot_segment(&self, k: usize, s: u64) -> usize {
        if s < self.n[k] {
            return self.corner(k, s);
        }
        let from_end = self.w[k] - s;
        let k1 = (k + 1) % 3;
        if from_end < self.n[k1] {
            self.corner(k1, from_end)
        } else {
            self.central()
        }
    }

    /// The two regions a type-`k` band-`j` chord separates, corner side
    /// first.
    fn chord_sides(&self, k: usize, j: u64) -> (usize, usize) {
        let inner = self.corner(k, j);
        let outer = if j + 1 < self.n[k] { self.corner(k, j + 1) } else { self.central() };
        (inner, outer)
    }
}

/// Topological summary of one complementary piece.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PieceSummary {
    /// Euler characteristic of the open piece: punctures removed, the marked
    /// basepoint (an ordinary interior point) filled back in.
    pub euler: i64,
    /// Boundary circles the cut itself produced.
    pub boundary_circles: u32,
    /// Ideal vertices interior to the piece, the marked one excluded.
    pub punctures: u32,
    pub contains_marked: bool,
}

impl PieceSummary {
    pub fn holes(&self) -> u32 {
        self.boundary_circles + self.punctures
    }

    /// Characteristic -1 with three holes forces genus zero, so this is the
    /// full thrice-punctured-sphere test.
    pub fn is_pants(&self) -> bool {
        self.euler == -1 && self.holes() == 3
    }

    pub fn genus(&self) -> i64 {
        (2 - self.euler - i64::from(self.holes())) / 2
    }

    /// 3g - 3 + h for the piece.
    pub fn complexity(&self) -> i64 {
        3 * self.genus() - 3 + i64::from(self.holes())
    }
}

/// A cut of the carrier along a multicurve, with the region-level structure
/// kept around for the move search and the projections.
pub(crate) struct Cut {
    pub carrier: Arc<Triangulation>,
    pub coords: Vec<u64>,
    layouts: Vec<TriLayout>,
    piece_of: Vec<usize>,
    pub pieces: Vec<PieceSummary>,
    /// Per multicurve component, in component order: its transits in trace
    /// order.
    pub component_transits: Vec<Vec<Transit>>,
    /// The traced walks in the same rotation as the transits: transit `k`
    /// lies between steps `k` and `k + 1` of the walk.
    pub component_walks: Vec<Vec<Step>>,
    /// Per component: the pieces along its two sides, as an unordered pair.
    pub component_sides: Vec<(usize, usize)>,
    /// Chord to (owning component, transit index).
    chord_at: BTreeMap<(usize, u8, u64), (usize, usize)>,
}

impl Cut {
    pub fn new(m: &MultiCurve) -> Result<Self> {
        let carrier = m.carrier().clone();
        let coords = m.coords();
        let strands = curve::trace_detailed(&carrier, &coords)?;

        // The trace lists every component once; match it to the multicurve
        // order through the canonical form.
        let mut component_transits: Vec<Vec<Transit>> = vec![Vec::new(); m.components().len()];
        let mut component_walks: Vec<Vec<Step>> = vec![Vec::new(); m.components().len()];
        for strand in strands {
            let canon = curve::canonical_cyclic(&strand.walk);
            let idx = m
                .components()
                .iter()
                .position(|c| c.walk() == canon.as_slice())
                .ok_or_else(|| {
                    CurveError::InvalidParameter(
                        "multicurve coordinates trace to an unexpected component".into(),
                    )
                })?;
            component_transits[idx] = strand.transits;
            component_walks[idx] = strand.walk;
        }

        let mut layouts = Vec::with_capacity(carrier.n_triangles());
        let mut base = 0usize;
        for t in 0..carrier.n_triangles() {
            let layout = TriLayout {
                n: curve::corner_counts(&carrier, &coords, t)?,
                w: carrier.triangle(t).map(|e| coords[e]),
                base,
            };
            base += layout.count();
            layouts.push(layout);
        }
        let n_regions = base;

        let mut dsu = Dsu::new(n_regions);
        for e in 0..carrier.n_edges() {
            let w = coords[e];
            let [(t0, s0), (t1, s1)] = carrier.edge_ends(e);
            for s in 0..=w {
                // Crossing positions reverse across the gluing, so segment s
                // seen from the first end is segment w - s from the second.
                dsu.union(
                    layouts[t0].slot_segment(s0 as usize, s),
                    layouts[t1].slot_segment(s1 as usize, w - s),
                );
            }
        }

        let mut piece_ids: BTreeMap<usize, usize> = BTreeMap::new();
        let mut piece_of = vec![0usize; n_regions];
        for r in 0..n_regions {
            let root = dsu.find(r);
            let next = piece_ids.len();
            piece_of[r] = *piece_ids.entry(root).or_insert(next);
        }
        let n_pieces = piece_ids.len();

        // Cell counts of the cut-open complex.  Each edge segment is interior
        // to its piece; each chord contributes one boundary edge to the piece
        // on either side; each crossing point splits into two copies, one per
        // side of the cut.
        let mut faces = vec![0i64; n_pieces];
        let mut cells_e = vec![0i64; n_pieces];
        let mut cells_v = vec![0i64; n_pieces];
        for r in 0..n_regions {
            faces[piece_of[r]] += 1;
        }
        for e in 0..carrier.n_edges() {
            let w = coords[e];
            let (t0, s0) = carrier.edge_ends(e)[0];
            let seg = |s: u64| piece_of[layouts[t0].slot_segment(s0 as usize, s)];
            for s in 0..=w {
                cells_e[seg(s)] += 1;
            }
            for p in 0..w {
                cells_v[seg(p)] += 1;
                cells_v[seg(p + 1)] += 1;
            }
        }
        let mut chord_pieces = BTreeMap::new();
        for (t, layout) in layouts.iter().enumerate() {
            for k in 0..3 {
                for j in 0..layout.n[k] {
                    let (ri, ro) = layout.chord_sides(k, j);
                    let (pi, po) = (piece_of[ri], piece_of[ro]);
                    cells_e[pi] += 1;
                    cells_e[po] += 1;
                    chord_pieces.insert((t, k as u8, j), (pi, po));
                }
            }
        }

        // Every component bounds one circle on each of its two sides; all of
        // a component's chords see the same side pieces, so the first speaks
        // for the component.
        let mut boundary = vec![0u32; n_pieces];
        let mut component_sides = Vec::with_capacity(component_transits.len());
        let mut chord_at = BTreeMap::new();
        for (bi, transits) in component_transits.iter().enumerate() {
            let first = transits.first().expect("a traced component crosses an edge");
            let &(pi, po) = chord_pieces
                .get(&(first.tri, first.chord_type, first.depth))
                .expect("every transit names a chord of the cut");
            boundary[pi] += 1;
            boundary[po] += 1;
            component_sides.push((pi, po));
            for (k, t) in transits.iter().enumerate() {
                chord_at.insert((t.tri, t.chord_type, t.depth), (bi, k));
            }
        }

        let mut punctures = vec![0u32; n_pieces];
        let mut contains_marked = vec![false; n_pieces];
        let mut vertex_piece: Vec<Option<usize>> = vec![None; carrier.n_vertices()];
        for (t, layout) in layouts.iter().enumerate() {
            for k in 0..3 {
                let v = carrier.corner_vertex(t, k);
                let r = if layout.n[k] > 0 { layout.corner(k, 0) } else { layout.central() };
                let p = piece_of[r];
                match vertex_piece[v] {
                    None => vertex_piece[v] = Some(p),
                    Some(q) => debug_assert_eq!(q, p, "vertex {v} meets two pieces"),
                }
            }
        }
        for (v, p) in vertex_piece.iter().enumerate() {
            let p = p.expect("every vertex sits on some corner");
            if carrier.marked_vertex() == Some(v) {
                contains_marked[p] = true;
            } else {
                punctures[p] += 1;
            }
        }

        let pieces = (0..n_pieces)
            .map(|p| PieceSummary {
                euler: cells_v[p] - cells_e[p] + faces[p] + i64::from(contains_marked[p]),
                boundary_circles: boundary[p],
                punctures: punctures[p],
                contains_marked: contains_marked[p],
            })
            .collect();

        let cut = Cut {
            carrier,
            coords,
            layouts,
            piece_of,
            pieces,
            component_transits,
            component_walks,
            component_sides,
            chord_at,
        };
        // A directed strand keeps one piece on each side all the way around;
        // coherent triangle orientations are what makes the side labels glue.
        #[cfg(debug_assertions)]
        for (bi, transits) in cut.component_transits.iter().enumerate() {
            let mut seen = None;
            for (k, tr) in transits.iter().enumerate() {
                let (inner, outer) = cut.chord_regions(tr.tri, tr.chord_type, tr.depth);
                let (l, r) = if tr.chord_type == cut.entry_slot(bi, k) {
                    (inner, outer)
                } else {
                    (outer, inner)
                };
                let lr = (cut.piece_of[l], cut.piece_of[r]);
                assert_eq!(*seen.get_or_insert(lr), lr, "side pieces drift along component {bi}");
            }
        }
        Ok(cut)
    }

    /// Slot through which the walk of component `bi` enters the triangle of
    /// its transit `k`.
    fn entry_slot(&self, bi: usize, k: usize) -> u8 {
        let (e, d) = self.component_walks[bi][k];
        self.carrier.edge_ends(e)[1 - d as usize].1
    }

    /// The component owning a chord and the side of its directed walk that
    /// `region` lies on.  The cut corner of a transit sits left of travel
    /// exactly when the chord type matches the entry slot, so the label is
    /// consistent along the whole component.
    pub fn chord_strand_side(&self, t: usize, ty: u8, depth: u64, region: usize) -> (usize, bool) {
        let &(bi, k) = self.chord_at.get(&(t, ty, depth)).expect("a chord of the cut");
        let corner_left = ty == self.entry_slot(bi, k);
        let (inner, outer) = self.chord_regions(t, ty, depth);
        debug_assert!(region == inner || region == outer, "region must flank the chord");
        (bi, corner_left == (region == inner))
    }

    pub fn piece_of_region(&self, r: usize) -> usize {
        self.piece_of[r]
    }

    /// The two regions beside a chord, corner side first.
    pub fn chord_regions(&self, t: usize, k: u8, j: u64) -> (usize, usize) {
        self.layouts[t].chord_sides(k as usize, j)
    }

    /// Region beside edge `e` in the triangle at its `end` end, at the gap
    /// `s` between cut points `s - 1` and `s` counted in the first end's
    /// coordinates.  The two ends of one gap name the same glued region.
    pub fn edge_side_region(&self, e: usize, end: usize, s: u64) -> usize {
        let (t, slot) = self.carrier.edge_ends(e)[end];
        let c = if end == 0 { s } else { self.coords[e] - s };
        self.layouts[t].slot_segment(slot as usize, c)
    }

    /// Chords crossed walking inside triangle `t` from region `a` to region
    /// `b`, each with the region entered after it.  The regions of a
    /// triangle form a star of corner chains joined at the central region,
    /// so the walk is the unique tree path.
    pub fn triangle_path(&self, t: usize, a: usize, b: usize) -> Vec<((u8, u64), usize)> {
        let l = &self.layouts[t];
        // corner and band of a layout region, None for the central one
        let classify = |r: usize| -> Option<(usize, u64)> {
            let mut off = (r - l.base) as u64;
            for k in 0..3 {
                if off < l.n[k] {
                    return Some((k, off));
                }
                off -= l.n[k];
            }
            None
        };
        let mut out = Vec::new();
        if a == b {
            return out;
        }
        let ca = classify(a);
        let cb = classify(b);
        if let (Some((k1, i1)), Some((k2, i2))) = (ca, cb) {
            if k1 == k2 {
                if i1 < i2 {
                    for j in i1..i2 {
                        out.push(((k1 as u8, j), l.corner(k1, j + 1)));
                    }
                } else {
                    for j in (i2..i1).rev() {
                        out.push(((k1 as u8, j), l.corner(k1, j)));
                    }
                }
                return out;
            }
        }
        if let Some((k1, i1)) = ca {
            for j in i1..l.n[k1] {
                let after = if j + 1 < l.n[k1] { l.corner(k1, j + 1) } else { l.central() };
                out.push(((k1 as u8, j), after));
            }
        }
        if let Some((k2, i2)) = cb {
            for j in (i2..l.n[k2]).rev() {
                out.push(((k2 as u8, j), l.corner(k2, j)));
            }
        }
        out
    }

    /// Segment passages between regions, restricted to the given pieces.
    /// Each passage lists the dual step its crossing emits.
    pub fn region_graph(&self, keep: &[usize]) -> BTreeMap<usize, Vec<(usize, Step)>> {
        let mut graph: BTreeMap<usize, Vec<(usize, Step)>> = BTreeMap::new();
        for e in 0..self.carrier.n_edges() {
            let w = self.coords[e];
            let [(t0, s0), (t1, s1)] = self.carrier.edge_ends(e);
            for s in 0..=w {
                let r0 = self.layouts[t0].slot_segment(s0 as usize, s);
                let r1 = self.layouts[t1].slot_segment(s1 as usize, w - s);
                if !keep.contains(&self.piece_of[r0]) {
                    continue;
                }
                // A step's direction names the end it leaves from.
                graph.entry(r0).or_default().push((r1, (e, 0)));
                graph.entry(r1).or_default().push((r0, (e, 1)));
            }
        }
        graph
    }
}

/// Pieces of the complement of a multicurve.
pub fn complement_pieces(m: &MultiCurve) -> Result<Vec<PieceSummary>> {
    Ok(Cut::new(m)?.pieces)
}

/// True exactly when `m` has full complexity and every complementary piece
/// is a thrice-punctured sphere.
pub fn is_pants_decomposition(m: &MultiCurve) -> Result<bool> {
    let want = m.carrier().signature().complexity();
    if want <= 0 || m.components().len() as i64 != want {
        return Ok(false);
    }
    Ok(Cut::new(m)?.pieces.iter().all(PieceSummary::is_pants))
}

/// A maximal system of disjoint curves cutting the surface into pants.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PantsDecomposition {
    curves: MultiCurve,
}

impl PantsDecomposition {
    pub fn new(curves: MultiCurve) -> Result<Self> {
        if !is_pants_decomposition(&curves)? {
            return Err(CurveError::InvalidParameter(format!(
                "not a pants decomposition of {}",
                curves.carrier().id()
            )));
        }
        Ok(PantsDecomposition { curves })
    }

    pub fn curves(&self) -> &MultiCurve {
        &self.curves
    }

    pub fn components(&self) -> &[NormalCurve] {
        self.curves.components()
    }

    pub fn carrier(&self) -> &Arc<Triangulation> {
        self.curves.carrier()
    }

    /// The decomposition with `old` swapped for `new`, revalidated from
    /// scratch.
    pub fn replace(&self, old: &NormalCurve, new: NormalCurve) -> Result<Self> {
        if !self.curves.contains(old) {
            return Err(CurveError::InvalidParameter(
                "the curve to replace is not part of the decomposition".into(),
            ));
        }
        let comps = self
            .components()
            .iter()
            .filter(|c| *c != old)
            .cloned()
            .chain(std::iter::once(new))
            .collect();
        Self::new(MultiCurve::new(comps)?)
    }
}

impl Serialize for PantsDecomposition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.curves.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PantsDecomposition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        PantsDecomposition::new(MultiCurve::deserialize(d)?).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carrier::{builtin, GENUS_THREE, GENUS_TWO, PUNCTURED_TORUS};
    use crate::curve::torus_slope_coords;
    use farey_core::Slope;

    fn torus_curve(p: i64, q: i64) -> NormalCurve {
        let carrier = builtin(PUNCTURED_TORUS).unwrap();
        let coords = torus_slope_coords(&Slope::new(p, q).unwrap());
        NormalCurve::from_coords(&carrier, &coords).unwrap()
    }

    fn word_curve(id: &str, word: &[i32]) -> NormalCurve {
        NormalCurve::from_word(&builtin(id).unwrap(), word).unwrap()
    }

    #[test]
    fn cutting_the_torus_along_a_slope_leaves_one_pants() {
        let m = MultiCurve::new(vec![torus_curve(1, 0)]).unwrap();
        let pieces = complement_pieces(&m).unwrap();
        assert_eq!(
            pieces,
            vec![PieceSummary {
                euler: -1,
                boundary_circles: 2,
                punctures: 1,
                contains_marked: false,
            }]
        );
        assert!(pieces[0].is_pants());
        assert!(is_pants_decomposition(&m).unwrap());
        PantsDecomposition::new(m).unwrap();
    }

    #[test]
    fn the_standard_genus_two_system_cuts_to_pants() {
        let m = MultiCurve::new(vec![
            word_curve(GENUS_TWO, &[1]),
            word_curve(GENUS_TWO, &[3]),
            word_curve(GENUS_TWO, &[1, 2, -1, -2]),
        ])
        .unwrap();
        assert!(is_pants_decomposition(&m).unwrap());
        let pieces = complement_pieces(&m).unwrap();
        assert_eq!(pieces.len(), 2);
        for p in &pieces {
            assert!(p.is_pants(), "piece {p:?}");
            assert_eq!(p.boundary_circles, 3);
            assert_eq!(p.punctures, 0);
        }
        assert_eq!(pieces.iter().filter(|p| p.contains_marked).count(), 1);
    }

    #[test]
    fn undersized_systems_are_rejected() {
        let a1 = word_curve(GENUS_TWO, &[1]);
        let a2 = word_curve(GENUS_TWO, &[3]);
        let one = MultiCurve::new(vec![a1.clone()]).unwrap();
        let two = MultiCurve::new(vec![a1, a2]).unwrap();
        assert!(!is_pants_decomposition(&one).unwrap());
        assert!(!is_pants_decomposition(&two).unwrap());
        assert!(PantsDecomposition::new(two).is_err());
    }

    #[test]
    fn a_separating_curve_cuts_genus_two_into_one_holed_tori() {
        let m = MultiCurve::new(vec![word_curve(GENUS_TWO, &[1, 2, -1, -2])]).unwrap();
        let pieces = complement_pieces(&m).unwrap();
        assert_eq!(pieces.len(), 2);
        for p in &pieces {
            assert_eq!(p.euler, -1);
            assert_eq!(p.boundary_circles, 1);
            assert_eq!(p.punctures, 0);
            assert_eq!(p.genus(), 1);
            assert_eq!(p.complexity(), 1);
            assert!(!p.is_pants());
        }
    }

    #[test]
    fn census_characteristics_sum_to_the_carrier() {
        // Summed over pieces, characteristic minus the marked fill-in must
        // recover 2 - 2g - #vertices of the open carrier surface.
        let cases: Vec<(MultiCurve, i64)> = vec![
            (MultiCurve::new(vec![torus_curve(0, 1)]).unwrap(), -1),
            (
                MultiCurve::new(vec![
                    word_curve(GENUS_TWO, &[1]),
                    word_curve(GENUS_TWO, &[3]),
                    word_curve(GENUS_TWO, &[1, 2, -1, -2]),
                ])
                .unwrap(),
                -3,
            ),
            (MultiCurve::new(vec![word_curve(GENUS_THREE, &[1])]).unwrap(), -5),
        ];
        for (m, want) in cases {
            let total: i64 = complement_pieces(&m)
                .unwrap()
                .iter()
                .map(|p| p.euler - i64::from(p.contains_marked))
                .sum();
            assert_eq!(total, want);
        }
    }

    #[test]
    fn a_nonseparating_curve_on_genus_three_leaves_one_big_piece() {
        let m = MultiCurve::new(vec![word_curve(GENUS_THREE, &[1])]).unwrap();
        let pieces = complement_pieces(&m).unwrap();
        assert_eq!(pieces.len(), 1);
        let p = pieces[0];
        assert_eq!(p.euler, -4);
        assert_eq!(p.boundary_circles, 2);
        assert_eq!(p.genus(), 2);
        assert!(p.contains_marked);
        assert!(!is_pants_decomposition(&m).unwrap());
    }

    #[test]
    fn decompositions_round_trip_through_serde() {
        let m = MultiCurve::new(vec![
            word_curve(GENUS_TWO, &[1]),
            word_curve(GENUS_TWO, &[3]),
            word_curve(GENUS_TWO, &[1, 2, -1, -2]),
        ])
        .unwrap();
        let p = PantsDecomposition::new(m).unwrap();
        let json = serde_json::to_string(&p).unwrap();
        let back: PantsDecomposition = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        let broken = json.replace("genus-2", "genus-3");
        assert!(serde_json::from_str::<PantsDecomposition>(&broken).is_err());
    }
}
