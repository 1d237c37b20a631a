//! Triangulated carriers for curves.
//!
//! Every carrier is an ideal triangulation of a punctured surface, encoded as
//! triangles with their edges listed in counterclockwise order.  Gluing is
//! implicit: the two triangle sides on an edge identify with reversed
//! position order, which is exactly the orientable identification, so this
//! encoding cannot express a non-orientable surface.
//!
//! Closed surfaces of genus g are modeled by the once-punctured surface of the
//! same genus with the puncture marked: the marked puncture stands for the
//! basepoint vertex and is treated as filled when pieces are classified.  The
//! punctured model retracts onto the dual spine of the triangulation, which is
//! what makes curve bookkeeping exact (see `curve`).

use crate::error::{CurveError, Result};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::sync::{Arc, OnceLock};

pub type EdgeId = usize;
pub type TriId = usize;
pub type VertexId = usize;

/// Topological type of a surface, with the marked basepoint already filled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceSig {
    genus: u32,
    punctures: u32,
}

impl SurfaceSig {
    /// Requires complexity 3g - 3 + n >= 1; anything smaller carries no
    /// essential curve system worth the name.
    pub fn new(genus: u32, punctures: u32) -> Result<Self> {
        let sig = SurfaceSig { genus, punctures };
        if sig.complexity() < 1 {
            return Err(CurveError::InvalidParameter(format!(
                "surface ({genus},{punctures}) has complexity {} < 1",
                sig.complexity()
            )));
        }
        Ok(sig)
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn punctures(&self) -> u32 {
        self.punctures
    }

    /// 3g - 3 + n, the number of curves in a pants decomposition.
    pub fn complexity(&self) -> i64 {
        3 * i64::from(self.genus) - 3 + i64::from(self.punctures)
    }
}

/// One directed crossing of an edge: `dir = 0` passes from the triangle at
/// `ends[0]` into the triangle at `ends[1]`, `dir = 1` the reverse.
pub type Step = (EdgeId, u8);

/// An ideal triangulation.  Immutable after construction; curves hold an
/// `Arc` to their carrier and compare carriers by id.
#[derive(Debug)]
pub struct Triangulation {
    id: String,
    triangles: Vec<[EdgeId; 3]>,
    ends: Vec<[(TriId, u8); 2]>,
    corner_vertex: Vec<[VertexId; 3]>,
    vertex_links: Vec<Vec<Step>>,
    sig: SurfaceSig,
    marked_vertex: Option<VertexId>,
    generators: Vec<GeneratorChart>,
}

/// Where a fundamental-group generator crosses the polygon boundary, for
/// carriers built from a polygon identification word.
#[derive(Debug, Clone, Copy)]
pub struct GeneratorChart {
    /// Polygon side index traversed in the generator's own direction.
    pub straight: usize,
    /// Polygon side index of the inverted occurrence.
    pub inverted: usize,
}

impl Triangulation {
    /// Builds and validates a triangulation from its triangles' edge ids
    /// (counterclockwise per triangle).  `marked_vertex`, if set, names the
    /// puncture that stands for a filled basepoint.
    pub fn from_parts(
        id: &str,
        triangles: Vec<[EdgeId; 3]>,
        marked_vertex: Option<VertexId>,
    ) -> Result<Arc<Self>> {
        Self::build(id, triangles, marked_vertex, Vec::new())
    }

    fn build(
        id: &str,
        triangles: Vec<[EdgeId; 3]>,
        marked_vertex: Option<VertexId>,
        generators: Vec<GeneratorChart>,
    ) -> Result<Arc<Self>> {
        if id.is_empty() {
            return Err(CurveError::InvalidTriangulation("empty id".into()));
        }
        if triangles.is_empty() {
            return Err(CurveError::InvalidTriangulation("no triangles".into()));
        }
        let n_edges = triangles
            .iter()
            .flatten()
            .copied()
            .max()
            .map(|m| m + 1)
            .unwrap_or(0);

        // Every edge must be shared by exactly two triangle sides, and a
        // triangle glued to itself along two of its own sides is rejected:
        // the crossing arithmetic in `curve` relies on the two sides of an
        // edge lying in distinct triangles.
        let mut ends: Vec<Vec<(TriId, u8)>> = vec![Vec::new(); n_edges];
        for (t, tri) in triangles.iter().enumerate() {
            if tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] {
                return Err(CurveError::InvalidTriangulation(format!(
                    "triangle {t} repeats an edge (self-gluing is unsupported)"
                )));
            }
            for (s, &e) in tri.iter().enumerate() {
                ends[e].push((t, s as u8));
            }
        }
        let mut fixed_ends = Vec::with_capacity(n_edges);
        for (e, v) in ends.iter().enumerate() {
            match v.as_slice() {
                [a, b] => {
                    if a.0 == b.0 {
                        return Err(CurveError::InvalidTriangulation(format!(
                            "edge {e} has both sides on triangle {} (self-gluing is unsupported)",
                            a.0
                        )));
                    }
                    fixed_ends.push([*a, *b]);
                }
                v => {
                    return Err(CurveError::InvalidTriangulation(format!(
                        "edge {e} lies on {} triangle sides, expected 2",
                        v.len()
                    )));
                }
            }
        }

        // Connectivity over the dual graph.
        let mut seen = vec![false; triangles.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(t) = stack.pop() {
            for &e in &triangles[t] {
                for &(u, _) in &fixed_ends[e] {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(CurveError::InvalidTriangulation("not connected".into()));
        }

        // Vertex orbits: corner k of triangle t sits at the start of slot k.
        // Rotating around the vertex crosses slot k into the neighbor, landing
        // at the corner one past the matching slot there.
        let rotate = |t: TriId, k: usize| -> (TriId, usize) {
            let e = triangles[t][k];
            let [a, b] = fixed_ends[e];
            let (t2, s2) = if a == (t, k as u8) { b } else { a };
            (t2, (s2 as usize + 1) % 3)
        };
        let mut corner_vertex = vec![[usize::MAX; 3]; triangles.len()];
        let mut orbits: Vec<Vec<(TriId, usize)>> = Vec::new();
        for t0 in 0..triangles.len() {
            for k0 in 0..3 {
                if corner_vertex[t0][k0] != usize::MAX {
                    continue;
                }
                let v = orbits.len();
                let mut orbit = Vec::new();
                let (mut t, mut k) = (t0, k0);
                loop {
                    corner_vertex[t][k] = v;
                    orbit.push((t, k));
                    let next = rotate(t, k);
                    if next == (t0, k0) {
                        break;
                    }
                    (t, k) = next;
                }
                orbits.push(orbit);
            }
        }

        let n_vertices = orbits.len();
        let euler = triangles.len() as i64 - n_edges as i64;
        // 2 - 2g - n = chi of the punctured surface; the ideal vertices are
        // not cells, so chi = F - E.
        let two_g = 2 - euler - n_vertices as i64;
        if two_g < 0 || two_g % 2 != 0 {
            return Err(CurveError::InvalidTriangulation(format!(
                "Euler characteristic {euler} with {n_vertices} punctures fits no genus"
            )));
        }
        let genus = (two_g / 2) as u32;
        if let Some(m) = marked_vertex {
            if m >= n_vertices {
                return Err(CurveError::InvalidTriangulation(format!(
                    "marked vertex {m} out of range ({n_vertices} punctures)"
                )));
            }
        }
        let marked = usize::from(marked_vertex.is_some());
        let sig = SurfaceSig::new(genus, n_vertices as u32 - marked as u32)?;

        // Link walk per puncture, canonicalized; used to recognize peripheral
        // components.  Crossing slot k of t leaves t, so the direction flag is
        // 0 exactly when (t, k) is the edge's first end.
        let mut vertex_links = Vec::with_capacity(n_vertices);
        for orbit in &orbits {
            let mut walk: Vec<Step> = Vec::with_capacity(orbit.len());
            for &(t, k) in orbit {
                let e = triangles[t][k];
                let dir = if fixed_ends[e][0] == (t, k as u8) { 0 } else { 1 };
                walk.push((e, dir));
            }
            let reduced = crate::curve::reduce_cyclic(walk);
            vertex_links.push(crate::curve::canonical_cyclic(&reduced));
        }

        Ok(Arc::new(Triangulation {
            id: id.to_string(),
            triangles,
            ends: fixed_ends,
            corner_vertex,
            vertex_links,
            sig,
            marked_vertex,
            generators,
        }))
    }

    /// Fan triangulation of a 2k-gon with sides identified in pairs.  The
    /// word lists, per polygon side, the generator label and whether this is
    /// the inverted occurrence; each label must occur exactly once straight
    /// and once inverted.  Labels double as edge ids 0..k-1; diagonals follow.
    pub fn polygon_fan(id: &str, word: &[(usize, bool)], mark: bool) -> Result<Arc<Self>> {
        let n = word.len();
        if n < 4 || n % 2 != 0 {
            return Err(CurveError::InvalidTriangulation(format!(
                "polygon word length {n} is not an even number >= 4"
            )));
        }
        let n_labels = n / 2;
        let mut occ: Vec<(Option<usize>, Option<usize>)> = vec![(None, None); n_labels];
        for (i, &(label, inv)) in word.iter().enumerate() {
            if label >= n_labels {
                return Err(CurveError::InvalidTriangulation(format!(
                    "label {label} out of range for a {n}-gon"
                )));
            }
            let slot = if inv { &mut occ[label].1 } else { &mut occ[label].0 };
            if slot.replace(i).is_some() {
                return Err(CurveError::InvalidTriangulation(format!(
                    "label {label} repeats an occurrence"
                )));
            }
        }
        let mut generators = Vec::with_capacity(n_labels);
        for (label, &(s, i)) in occ.iter().enumerate() {
            match (s, i) {
                (Some(straight), Some(inverted)) => {
                    generators.push(GeneratorChart { straight, inverted })
                }
                _ => {
                    return Err(CurveError::InvalidTriangulation(format!(
                        "label {label} needs one straight and one inverted occurrence"
                    )));
                }
            }
        }

        // Fan triangle t = (v0, v_{t+1}, v_{t+2}), t = 0..n-3.  Slot 0 runs
        // v0 -> v_{t+1} (diagonal d_{t+1}), slot 1 is polygon side t+1, slot 2
        // runs v_{t+2} -> v0 (diagonal d_{t+2}).  Sides 0 and n-1 are the two
        // outermost fan sides.  Diagonal d_i gets edge id n_labels + i - 2.
        let side_edge = |i: usize| word[i].0;
        let diag_edge = |i: usize| n_labels + i - 2;
        let mut triangles = Vec::with_capacity(n - 2);
        for t in 0..n - 2 {
            let slot0 = if t == 0 { side_edge(0) } else { diag_edge(t + 1) };
            let slot1 = side_edge(t + 1);
            let slot2 = if t == n - 3 { side_edge(n - 1) } else { diag_edge(t + 2) };
            triangles.push([slot0, slot1, slot2]);
        }
        let marked_vertex = if mark { Some(0) } else { None };
        let built = Self::build(id, triangles, marked_vertex, generators)?;
        if built.n_vertices() != 1 {
            return Err(CurveError::InvalidTriangulation(format!(
                "polygon word does not close up to a single puncture (got {})",
                built.n_vertices()
            )));
        }
        Ok(built)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    /// Signature with the marked basepoint treated as filled.
    pub fn signature(&self) -> SurfaceSig {
        self.sig
    }

    pub fn marked_vertex(&self) -> Option<VertexId> {
        self.marked_vertex
    }

    pub fn n_triangles(&self) -> usize {
        self.triangles.len()
    }

    pub fn n_edges(&self) -> usize {
        self.ends.len()
    }

    pub fn n_vertices(&self) -> usize {
        self.vertex_links.len()
    }

    pub fn triangle(&self, t: TriId) -> [EdgeId; 3] {
        self.triangles[t]
    }

    pub fn edge_ends(&self, e: EdgeId) -> [(TriId, u8); 2] {
        self.ends[e]
    }

    /// Vertex at the start of slot k (shared by slots k+2 and k).
    pub fn corner_vertex(&self, t: TriId, k: usize) -> VertexId {
        self.corner_vertex[t][k]
    }

    /// Canonicalized crossing walk of the puncture's link circle.
    pub fn vertex_link(&self, v: VertexId) -> &[Step] {
        &self.vertex_links[v]
    }

    pub fn generator_charts(&self) -> &[GeneratorChart] {
        &self.generators
    }

    /// The triangle a step lands in.
    pub fn step_target(&self, step: Step) -> TriId {
        self.ends[step.0][1 - step.1 as usize].0
    }

    /// The triangle a step leaves.
    pub fn step_source(&self, step: Step) -> TriId {
        self.ends[step.0][step.1 as usize].0
    }

    /// Which slot of its target triangle a step arrives through.
    pub fn step_target_slot(&self, step: Step) -> u8 {
        self.ends[step.0][1 - step.1 as usize].1
    }

    pub fn step_source_slot(&self, step: Step) -> u8 {
        self.ends[step.0][step.1 as usize].1
    }
}

impl PartialEq for Triangulation {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}
impl Eq for Triangulation {}

#[derive(Serialize, Deserialize)]
struct TriangulationWire {
    id: String,
    triangles: Vec<[EdgeId; 3]>,
    gluings: Vec<[[usize; 2]; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    marked_vertex: Option<VertexId>,
}

impl Serialize for Triangulation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let wire = TriangulationWire {
            id: self.id.clone(),
            triangles: self.triangles.clone(),
            gluings: self
                .ends
                .iter()
                .map(|&[(t0, s0), (t1, s1)]| [[t0, s0 as usize], [t1, s1 as usize]])
                .collect(),
            marked_vertex: self.marked_vertex,
        };
        wire.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Triangulation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = TriangulationWire::deserialize(d)?;
        let built = Triangulation::from_parts(&wire.id, wire.triangles, wire.marked_vertex)
            .map_err(D::Error::custom)?;
        for (e, &[[t0, s0], [t1, s1]]) in wire.gluings.iter().enumerate() {
            let want = built.edge_ends(e);
            let got = [(t0, s0 as u8), (t1, s1 as u8)];
            if got != want && got != [want[1], want[0]] {
                return Err(D::Error::custom(format!(
                    "gluing entry for edge {e} disagrees with the triangle list"
                )));
            }
        }
        Ok(Arc::try_unwrap(built).expect("freshly built carrier has one owner"))
    }
}

/// Ids of the carriers shipped with the crate.
pub const PUNCTURED_TORUS: &str = "punctured-torus";
pub const GENUS_TWO: &str = "genus-2";
pub const GENUS_THREE: &str = "genus-3";

fn handle_word(genus: usize) -> Vec<(usize, bool)> {
    // a1 b1 a1' b1' a2 b2 a2' b2' ...
    let mut word = Vec::with_capacity(4 * genus);
    for h in 0..genus {
        word.push((2 * h, false));
        word.push((2 * h + 1, false));
        word.push((2 * h, true));
        word.push((2 * h + 1, true));
    }
    word
}

/// Looks up a shipped carrier by id.
pub fn builtin(id: &str) -> Option<Arc<Triangulation>> {
    static TORUS: OnceLock<Arc<Triangulation>> = OnceLock::new();
    static G2: OnceLock<Arc<Triangulation>> = OnceLock::new();
    static G3: OnceLock<Arc<Triangulation>> = OnceLock::new();
    match id {
        PUNCTURED_TORUS => Some(
            TORUS
                .get_or_init(|| {
                    Triangulation::polygon_fan(PUNCTURED_TORUS, &handle_word(1), false)
                        .expect("shipped carrier")
                })
                .clone(),
        ),
        GENUS_TWO => Some(
            G2.get_or_init(|| {
                Triangulation::polygon_fan(GENUS_TWO, &handle_word(2), true)
                    .expect("shipped carrier")
            })
            .clone(),
        ),
        GENUS_THREE => Some(
            G3.get_or_init(|| {
                Triangulation::polygon_fan(GENUS_THREE, &handle_word(3), true)
                    .expect("shipped carrier")
            })
            .clone(),
        ),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signature_rejects_low_complexity() {
        assert!(SurfaceSig::new(1, 0).is_err());
        assert!(SurfaceSig::new(0, 3).is_err());
        let s = SurfaceSig::new(0, 4).unwrap();
        assert_eq!(s.complexity(), 1);
        assert_eq!(SurfaceSig::new(2, 0).unwrap().complexity(), 3);
    }

    #[test]
    fn shipped_carriers_have_the_expected_shape() {
        let torus = builtin(PUNCTURED_TORUS).unwrap();
        assert_eq!(torus.n_triangles(), 2);
        assert_eq!(torus.n_edges(), 3);
        assert_eq!(torus.n_vertices(), 1);
        assert_eq!(torus.signature(), SurfaceSig::new(1, 1).unwrap());
        assert_eq!(torus.marked_vertex(), None);

        let g2 = builtin(GENUS_TWO).unwrap();
        assert_eq!(g2.n_triangles(), 6);
        assert_eq!(g2.n_edges(), 9);
        assert_eq!(g2.n_vertices(), 1);
        assert_eq!(g2.signature(), SurfaceSig::new(2, 0).unwrap());
        assert_eq!(g2.marked_vertex(), Some(0));

        let g3 = builtin(GENUS_THREE).unwrap();
        assert_eq!(g3.n_triangles(), 10);
        assert_eq!(g3.n_edges(), 15);
        assert_eq!(g3.signature(), SurfaceSig::new(3, 0).unwrap());
    }

    #[test]
    fn edges_pair_up_and_orbits_close() {
        for id in [PUNCTURED_TORUS, GENUS_TWO, GENUS_THREE] {
            let tri = builtin(id).unwrap();
            for e in 0..tri.n_edges() {
                let [a, b] = tri.edge_ends(e);
                assert_ne!(a.0, b.0, "{id}: edge {e} self-glued");
                assert_eq!(tri.triangle(a.0)[a.1 as usize], e);
                assert_eq!(tri.triangle(b.0)[b.1 as usize], e);
            }
            // One puncture means every corner belongs to vertex 0.
            for t in 0..tri.n_triangles() {
                for k in 0..3 {
                    assert_eq!(tri.corner_vertex(t, k), 0);
                }
            }
            // The link of the lone puncture crosses each edge end once.
            assert_eq!(tri.vertex_link(0).len(), 2 * tri.n_edges());
        }
    }

    #[test]
    fn rejects_bad_gluings() {
        // Edge 0 used three times.
        assert!(Triangulation::from_parts("bad", vec![[0, 1, 2], [0, 0, 1]], None).is_err());
        // Repeated edge within one triangle.
        assert!(Triangulation::from_parts("bad", vec![[0, 0, 1], [1, 2, 2]], None).is_err());
        // Disconnected pair of spheres cannot even pair edges; use two
        // disjoint theta-like complexes instead.
        let disconnected = vec![[0, 1, 2], [0, 1, 2], [3, 4, 5], [3, 4, 5]];
        assert!(matches!(
            Triangulation::from_parts("bad", disconnected, None),
            Err(CurveError::InvalidTriangulation(m)) if m.contains("connected")
        ));
    }

    #[test]
    fn wire_round_trip() {
        let tri = builtin(GENUS_TWO).unwrap();
        let json = serde_json::to_string(&*tri).unwrap();
        assert!(json.contains("\"triangles\""));
        assert!(json.contains("\"gluings\""));
        let back: Triangulation = serde_json::from_str(&json).unwrap();
        assert_eq!(back.n_edges(), tri.n_edges());
        assert_eq!(back.signature(), tri.signature());
    }
}
