//! Distances between projections of curve systems into a common domain.
//!
//! Annular distances come from the twisting difference and are exact up to
//! the usual additive slack.  Piece distances resolve the small values
//! exactly: 0 for a shared class, 1 when all classes are pairwise adjacent
//! in the piece's arc-and-curve graph, 2 when every non-adjacent pair
//! admits a middle class.  Complexity-one pieces use the Farey adjacency
//! (neighbouring slopes meet once as curves in a one-holed torus and twice
//! in a four-holed sphere); everything else uses disjointness.  Beyond two
//! the analysis refuses, and the refusal carries the bound it actually
//! proved rather than the caller's request.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_rational::Ratio;

use crate::carrier::Step;
use crate::curve::{reduce_cyclic, reverse_walk, MultiCurve, NormalCurve};
use crate::cut::{Cut, PantsDecomposition, PieceSummary};
use crate::error::{CurveError, Result};
use crate::geometry::{crossings, intersection_number, self_crossing_number, Flavor};
use crate::subsurface::{project, ArcSystem, PieceArc, SubsurfaceDescriptor};
use crate::twist::dehn_twist;

/// A boundary circle of a piece: the crossed component together with the
/// side of its oriented walk the circle lies on.
type Cuff = (usize, bool);

/// Isotopy class of one projected component, up to reversal.  Arcs compare
/// by their drawn representative, so parallel arcs reached through
/// different drawings may land in distinct classes; the distance tiers
/// only ever overestimate by that coarseness.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum PieceClass {
    Closed(NormalCurve),
    Arc { steps: Vec<Step>, cuffs: [Cuff; 2] },
}

fn class_of(lambda: &MultiCurve, pa: &PieceArc) -> PieceClass {
    match (pa.ends, pa.sides) {
        (Some((b0, b1)), Some((s0, s1))) => {
            let fwd = (pa.steps.clone(), [(b0, s0), (b1, s1)]);
            let rev = (reverse_walk(&pa.steps), [(b1, s1), (b0, s0)]);
            let (steps, cuffs) = fwd.min(rev);
            PieceClass::Arc { steps, cuffs }
        }
        _ => PieceClass::Closed(lambda.components()[pa.component].clone()),
    }
}

/// Endpoint cuffs in the arc's own orientation, `None` for a closed
/// component.
fn cuffs_of(pa: &PieceArc) -> Option<[Cuff; 2]> {
    match (pa.ends, pa.sides) {
        (Some((b0, b1)), Some((s0, s1))) => Some([(b0, s0), (b1, s1)]),
        _ => None,
    }
}

/// Arc owning gap `g` of component `comp`, with the gap's position along
/// it.  A crossing at an arc's first gap shares its triangle with a
/// boundary chord; the arc starting there owns it, and when that arc lies
/// in another piece the arc ending there does.
fn owning(arcs: &[PieceArc], comp: usize, g: usize, m: usize) -> Option<(usize, u64)> {
    for (i, a) in arcs.iter().enumerate() {
        if a.component != comp {
            continue;
        }
        let off = (g + m - a.start) % m;
        if off < a.len {
            return Some((i, off as u64));
        }
    }
    for (i, a) in arcs.iter().enumerate() {
        if a.component == comp && (a.start + a.len) % m == g {
            return Some((i, a.len as u64));
        }
    }
    None
}

/// Crossings between the two projections, bucketed by arc pair.  Each
/// crossing localizes where its shared run starts, which is where the
/// minimal simultaneous drawing realizes it.
fn cross_buckets(
    beta: &MultiCurve,
    gamma: &MultiCurve,
    ab: &[PieceArc],
    ag: &[PieceArc],
) -> Result<BTreeMap<(usize, usize), Vec<(u64, u64)>>> {
    let mut buckets: BTreeMap<(usize, usize), Vec<(u64, u64)>> = BTreeMap::new();
    let bcomps: BTreeSet<usize> = ab.iter().map(|a| a.component).collect();
    let gcomps: BTreeSet<usize> = ag.iter().map(|a| a.component).collect();
    for &cbi in &bcomps {
        for &cgi in &gcomps {
            let x = &beta.components()[cbi];
            let y = &gamma.components()[cgi];
            let m = x.walk().len();
            let n = y.walk().len();
            for cr in crossings(x, y)? {
                let gx = cr.x_start % m;
                let gy = match cr.flavor {
                    Flavor::Forward => cr.y_start % n,
                    Flavor::Reverse => (n - cr.y_start % n) % n,
                };
                match (owning(ab, cbi, gx, m), owning(ag, cgi, gy, n)) {
                    (Some((i, pa)), Some((j, pb))) => {
                        buckets.entry((i, j)).or_default().push((pa, pb));
                    }
                    (None, None) => {}
                    _ => debug_assert!(false, "crossing attribution disagrees between systems"),
                }
            }
        }
    }
    Ok(buckets)
}

/// Crossings left between two arcs after sliding away every terminal
/// half-bigon.  A crossing cancels against a cuff when it is the last one
/// toward an end of both arcs and those ends rest on the same boundary
/// circle.  Closed components have no endpoints to slide, and full bigons
/// cannot occur because the ambient curves already cross minimally.
fn reduce_pair(mut pos: Vec<(u64, u64)>, ca: Option<[Cuff; 2]>, cb: Option<[Cuff; 2]>) -> usize {
    let (Some(ca), Some(cb)) = (ca, cb) else {
        return pos.len();
    };
    'slide: loop {
        if pos.is_empty() {
            return 0;
        }
        let lo_a = pos.iter().map(|p| p.0).min().expect("nonempty");
        let hi_a = pos.iter().map(|p| p.0).max().expect("nonempty");
        let lo_b = pos.iter().map(|p| p.1).min().expect("nonempty");
        let hi_b = pos.iter().map(|p| p.1).max().expect("nonempty");
        for (i, &(a, b)) in pos.iter().enumerate() {
            // An extreme shared by two crossings blocks the slide, so each
            // test also wants uniqueness.
            let a_ends = [
                (a == lo_a && pos.iter().filter(|p| p.0 == lo_a).count() == 1, ca[0]),
                (a == hi_a && pos.iter().filter(|p| p.0 == hi_a).count() == 1, ca[1]),
            ];
            let b_ends = [
                (b == lo_b && pos.iter().filter(|p| p.1 == lo_b).count() == 1, cb[0]),
                (b == hi_b && pos.iter().filter(|p| p.1 == hi_b).count() == 1, cb[1]),
            ];
            for (a_ok, cuff_a) in a_ends {
                for (b_ok, cuff_b) in b_ends {
                    if a_ok && b_ok && cuff_a == cuff_b {
                        pos.swap_remove(i);
                        continue 'slide;
                    }
                }
            }
        }
        return pos.len();
    }
}

/// Largest crossing count at which two classes are still adjacent in the
/// piece's arc-and-curve graph.
fn adjacency_limit(piece: &PieceSummary, a_closed: bool, b_closed: bool) -> u64 {
    if piece.complexity() != 1 {
        return 0;
    }
    match (a_closed, b_closed) {
        (true, true) => {
            if piece.genus() == 1 {
                1
            } else {
                2
            }
        }
        (false, false) => 0,
        _ => 1,
    }
}

/// Crossings of the closed witness with the class of `arcs[item]`; no
/// endpoint reduction applies, so the drawn count is already minimal.
fn witness_crossings(
    w: &NormalCurve,
    lambda: &MultiCurve,
    arcs: &[PieceArc],
    item: usize,
) -> Result<u64> {
    let comp = &lambda.components()[arcs[item].component];
    let m = comp.walk().len();
    let mut count = 0;
    for cr in crossings(comp, w)? {
        if let Some((i, _)) = owning(arcs, arcs[item].component, cr.x_start % m, m) {
            if i == item {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Candidate middle curves of the piece: closed projected components, the
/// independent cycles of the region graph, and one generation of twists
/// among those.  Every candidate is verified to be an essential simple
/// curve living inside the piece; the pool is a best effort, never a
/// completeness claim.
fn witness_pool(
    beta: &MultiCurve,
    gamma: &MultiCurve,
    ab: &[PieceArc],
    ag: &[PieceArc],
    boundary: &MultiCurve,
    index: usize,
    cut: &Cut,
) -> Result<Vec<NormalCurve>> {
    let carrier = boundary.carrier();
    let y = SubsurfaceDescriptor::Piece { boundary: boundary.clone(), index };
    let lives_inside = |w: &NormalCurve| -> Result<bool> {
        if self_crossing_number(w) != 0 || boundary.components().contains(w) {
            return Ok(false);
        }
        for bc in boundary.components() {
            if intersection_number(w, bc)? != 0 {
                return Ok(false);
            }
        }
        Ok(project(&MultiCurve::new(vec![w.clone()])?, &y)? != ArcSystem::Empty)
    };

    let mut pool: BTreeSet<NormalCurve> = BTreeSet::new();
    for (lambda, arcs) in [(beta, ab), (gamma, ag)] {
        for a in arcs {
            if a.ends.is_none() {
                pool.insert(lambda.components()[a.component].clone());
            }
        }
    }

    let graph = cut.region_graph(&[index]);
    if let Some(&root) = graph.keys().next() {
        let mut parent: BTreeMap<usize, (usize, Step)> = BTreeMap::new();
        let mut seen: BTreeSet<usize> = BTreeSet::from([root]);
        let mut queue = VecDeque::from([root]);
        while let Some(r) = queue.pop_front() {
            for &(r2, s) in graph.get(&r).into_iter().flatten() {
                if seen.insert(r2) {
                    parent.insert(r2, (r, s));
                    queue.push_back(r2);
                }
            }
        }
        let path = |mut r: usize| {
            let mut out = Vec::new();
            while let Some(&(p, s)) = parent.get(&r) {
                out.push(s);
                r = p;
            }
            out.reverse();
            out
        };
        // Tree edges close up trivially and vanish in the reduction.
        for (&u, edges) in &graph {
            for &(v, s) in edges {
                let mut walk = path(u);
                walk.push(s);
                for st in path(v).into_iter().rev() {
                    walk.push((st.0, 1 - st.1));
                }
                let reduced = reduce_cyclic(walk);
                if reduced.is_empty() {
                    continue;
                }
                if let Ok(w) = NormalCurve::from_reduced_walk(carrier, reduced) {
                    if lives_inside(&w)? {
                        pool.insert(w);
                    }
                }
            }
        }
    }

    let base: Vec<NormalCurve> = pool.iter().cloned().collect();
    for u in &base {
        for v in &base {
            if u == v || intersection_number(u, v)? == 0 {
                continue;
            }
            for n in [-2i64, -1, 1, 2] {
                if let Ok(w) = dehn_twist(u, v, n) {
                    if lives_inside(&w)? {
                        pool.insert(w);
                    }
                }
            }
        }
    }
    Ok(pool.into_iter().collect())
}

fn piece_distance(
    beta: &MultiCurve,
    gamma: &MultiCurve,
    boundary: &MultiCurve,
    index: usize,
    ab: &[PieceArc],
    ag: &[PieceArc],
    cutoff: u64,
) -> Result<u64> {
    if cutoff < 2 {
        return Err(CurveError::InvalidParameter(format!(
            "piece distances resolve from cutoff 2 upward, got {cutoff}"
        )));
    }
    let class_b: Vec<PieceClass> = ab.iter().map(|a| class_of(beta, a)).collect();
    let class_g: Vec<PieceClass> = ag.iter().map(|a| class_of(gamma, a)).collect();
    let set_b: BTreeSet<&PieceClass> = class_b.iter().collect();
    let set_g: BTreeSet<&PieceClass> = class_g.iter().collect();
    if set_b.len() == 1 && set_b == set_g {
        return Ok(0);
    }

    let cut = Cut::new(boundary)?;
    let summary = cut.pieces[index];
    let buckets = cross_buckets(beta, gamma, ab, ag)?;
    let mut heavy: Vec<(usize, usize)> = Vec::new();
    for ((i, j), pos) in &buckets {
        let left = reduce_pair(pos.clone(), cuffs_of(&ab[*i]), cuffs_of(&ag[*j]));
        let limit = adjacency_limit(&summary, ab[*i].ends.is_none(), ag[*j].ends.is_none());
        if left as u64 > limit {
            heavy.push((*i, *j));
        }
    }
    // Classes of one system never keep a pair apart: they come from
    // disjoint components, so only the cross pairs decide.
    if heavy.is_empty() {
        return Ok(1);
    }

    let pool = witness_pool(beta, gamma, ab, ag, boundary, index, &cut)?;
    for &(i, j) in &heavy {
        let la = adjacency_limit(&summary, true, ab[i].ends.is_none());
        let lb = adjacency_limit(&summary, true, ag[j].ends.is_none());
        let mut joined = false;
        for w in &pool {
            if matches!(&class_b[i], PieceClass::Closed(c) if c == w)
                || matches!(&class_g[j], PieceClass::Closed(c) if c == w)
            {
                continue;
            }
            if witness_crossings(w, beta, ab, i)? <= la && witness_crossings(w, gamma, ag, j)? <= lb
            {
                joined = true;
                break;
            }
        }
        if !joined {
            // Only the failure of tier one is certain, so that is the bound
            // the refusal reports, whatever the caller allowed.
            return Err(CurveError::CutoffExceeded { cutoff: 1 });
        }
    }
    Ok(2)
}

/// Distance between the projections of `beta` and `gamma` into `y`.
///
/// Both systems must meet the domain.  Annular values come from the
/// twisting difference.  Piece values resolve 0, 1, and 2 exactly for the
/// adjacency the piece supports; `cutoff` must leave room for that (at
/// least 2), and an unresolved pair is refused with the proven bound.
pub fn d_y(
    beta: &MultiCurve,
    gamma: &MultiCurve,
    y: &SubsurfaceDescriptor,
    cutoff: u64,
) -> Result<u64> {
    let pb = project(beta, y)?;
    let pg = project(gamma, y)?;
    if pb.is_empty() || pg.is_empty() {
        return Err(CurveError::DoesNotMeet);
    }
    if beta == gamma {
        return Ok(0);
    }
    match (y, pb, pg) {
        (
            SubsurfaceDescriptor::Annulus { .. },
            ArcSystem::Annulus { twisting: tb, .. },
            ArcSystem::Annulus { twisting: tg, .. },
        ) => {
            let mut delta = tb - tg;
            if delta < Ratio::from_integer(0) {
                delta = -delta;
            }
            Ok(u64::try_from(delta.ceil().to_integer()).expect("|twisting| ceil is nonnegative").max(1))
        }
        (
            SubsurfaceDescriptor::Piece { boundary, index },
            ArcSystem::Arcs { arcs: ab },
            ArcSystem::Arcs { arcs: ag },
        ) => piece_distance(beta, gamma, boundary, *index, &ab, &ag, cutoff),
        _ => unreachable!("projections match their domain kind"),
    }
}

/// Distance between two markings seen in `y`, taken on their pants curves.
/// Both decompositions must meet the domain.
pub fn d_y_markings(
    p_plus: &PantsDecomposition,
    p_minus: &PantsDecomposition,
    y: &SubsurfaceDescriptor,
    cutoff: u64,
) -> Result<u64> {
    d_y(p_plus.curves(), p_minus.curves(), y, cutoff)
}
