//! Elementary moves on pants decompositions.
//!
//! Deleting one curve of a decomposition frees a complexity-one piece: a
//! one-holed torus when both sides of the curve lie on the same pair of
//! pants, a four-holed sphere otherwise.  The curves that can replace the
//! deleted one form a single twist family about it; the generator is found
//! by a breadth-first search through the cut regions and validated against
//! the full decomposition test before it is returned.

use std::collections::{BTreeMap, VecDeque};

use crate::carrier::Step;
use crate::curve::{reduce_cyclic, NormalCurve};
use crate::cut::{Cut, PantsDecomposition};
use crate::error::{CurveError, Result};
use crate::geometry::{intersection_number, self_crossing_number};
use crate::twist::dehn_twist;

/// The replacement family for one curve of a pants decomposition.  Member
/// `k` is the `k`-fold twist of the generator about the axis, so successive
/// members differ by exactly one twist.
#[derive(Clone, Debug)]
pub struct MoveFamily {
    axis: NormalCurve,
    generator: NormalCurve,
    crossings: u64,
}

impl MoveFamily {
    pub fn axis(&self) -> &NormalCurve {
        &self.axis
    }

    pub fn generator(&self) -> &NormalCurve {
        &self.generator
    }

    /// 1 on a one-holed torus piece, 2 on a four-holed sphere.
    pub fn crossings(&self) -> u64 {
        self.crossings
    }

    pub fn member(&self, k: i64) -> Result<NormalCurve> {
        dehn_twist(&self.generator, &self.axis, k)
    }
}

/// The move family at `axis`: every essential way to replace it keeping the
/// rest of the decomposition.  Fails with `NoMove` when no replacement curve
/// exists.
pub fn available_moves(p: &PantsDecomposition, axis: &NormalCurve) -> Result<MoveFamily> {
    if !p.curves().contains(axis) {
        return Err(CurveError::InvalidParameter(
            "the move axis is not part of the decomposition".into(),
        ));
    }
    let cut = Cut::new(p.curves())?;
    let axis_idx = p.components().iter().position(|c| c == axis).expect("axis is a component");
    let (side_a, side_b) = cut.component_sides[axis_idx];
    // Replacements live in the piece freed by deleting the axis and must
    // cross it once there if it is glued to itself, twice otherwise.
    let target: usize = if side_a == side_b { 1 } else { 2 };

    let graph = cut.region_graph(&[side_a, side_b]);
    let axis_chords: Vec<(usize, usize)> = cut.component_transits[axis_idx]
        .iter()
        .map(|t| cut.chord_regions(t.tri, t.chord_type, t.depth))
        .collect();

    // Candidate walks close up through one or two axis crossings.  Each
    // crossing stays inside its chord's triangle and emits no step, so a
    // candidate is the concatenation of shortest region paths between the
    // chosen crossing sides.
    let mut candidates: Vec<Vec<Step>> = Vec::new();
    let oriented: Vec<(usize, usize)> = axis_chords
        .iter()
        .flat_map(|&(ri, ro)| [(ri, ro), (ro, ri)])
        .collect();
    if target == 1 {
        for &(inn, out) in &oriented {
            if let Some(steps) = shortest_path(&graph, out, inn) {
                candidates.push(steps);
            }
        }
    } else {
        // Crossing the axis twice has even parity, so a bare return leg
        // closes a bigon and the candidate pulls off the axis.  The
        // essential arcs wind around a free cuff of the piece instead;
        // splicing the full walk of a cuff curve into a leg produces them.
        // A leg chains onto the spliced loop at triangle level, so it only
        // has to reach a region beside one of the cuff's chords.
        let mut loops: Vec<(usize, Vec<Step>)> = Vec::new();
        for (ci, transits) in cut.component_transits.iter().enumerate() {
            if ci == axis_idx {
                continue;
            }
            let walk = &cut.component_walks[ci];
            let n = walk.len();
            for (j, t) in transits.iter().enumerate() {
                let (r0, r1) = cut.chord_regions(t.tri, t.chord_type, t.depth);
                for r in [r0, r1] {
                    let pc = cut.piece_of_region(r);
                    if pc != side_a && pc != side_b {
                        continue;
                    }
                    let fwd: Vec<Step> = (0..n).map(|i| walk[(j + 1 + i) % n]).collect();
                    let rev: Vec<Step> = (0..n)
                        .map(|i| {
                            let (e, d) = walk[(j + n - i) % n];
                            (e, 1 - d)
                        })
                        .collect();
                    loops.push((r, fwd));
                    loops.push((r, rev));
                }
            }
        }
        for &(inn1, out1) in &oriented {
            for &(inn2, out2) in &oriented {
                let (Some(a0), Some(b0)) =
                    (shortest_path(&graph, out1, inn2), shortest_path(&graph, out2, inn1))
                else {
                    continue;
                };
                candidates.push(a0.iter().copied().chain(b0.iter().copied()).collect());
                for (r, loop_steps) in &loops {
                    if let (Some(head), Some(tail)) =
                        (shortest_path(&graph, out1, *r), shortest_path(&graph, *r, inn2))
                    {
                        candidates.push(
                            head.into_iter()
                                .chain(loop_steps.iter().copied())
                                .chain(tail)
                                .chain(b0.iter().copied())
                                .collect(),
                        );
                    }
                    if let (Some(head), Some(tail)) =
                        (shortest_path(&graph, out2, *r), shortest_path(&graph, *r, inn1))
                    {
                        candidates.push(
                            a0.iter()
                                .copied()
                                .chain(head)
                                .chain(loop_steps.iter().copied())
                                .chain(tail)
                                .collect(),
                        );
                    }
                }
            }
        }
    }
    candidates.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    candidates.dedup();

    for steps in candidates {
        let reduced = reduce_cyclic(steps);
        if reduced.is_empty() {
            continue;
        }
        let Ok(cand) = NormalCurve::from_reduced_walk(p.carrier(), reduced) else {
            continue;
        };
        if self_crossing_number(&cand) != 0 {
            continue;
        }
        if intersection_number(&cand, axis)? != target as u64 {
            continue;
        }
        let mut disjoint_from_rest = true;
        for c in p.components() {
            if c == axis {
                continue;
            }
            if intersection_number(&cand, c)? != 0 {
                disjoint_from_rest = false;
                break;
            }
        }
        if !disjoint_from_rest {
            continue;
        }
        if p.replace(axis, cand.clone()).is_err() {
            continue;
        }
        return Ok(MoveFamily { axis: axis.clone(), generator: cand, crossings: target as u64 });
    }
    Err(CurveError::NoMove)
}

/// Replaces `axis` by the `k`-th member of its move family.
pub fn apply_move(p: &PantsDecomposition, axis: &NormalCurve, k: i64) -> Result<PantsDecomposition> {
    let family = available_moves(p, axis)?;
    p.replace(axis, family.member(k)?)
}

/// Shortest path between regions of one cut piece, crossing only edge
/// segments.  Empty when `from == to`; `None` when the regions lie in
/// different pieces.
fn shortest_path(
    graph: &BTreeMap<usize, Vec<(usize, Step)>>,
    from: usize,
    to: usize,
) -> Option<Vec<Step>> {
    let mut parent: BTreeMap<usize, (usize, Step)> = BTreeMap::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    queue.push_back(from);
    while let Some(region) = queue.pop_front() {
        if region == to {
            let mut steps = Vec::new();
            let mut at = region;
            while at != from {
                let (prev, step) = parent[&at];
                steps.push(step);
                at = prev;
            }
            steps.reverse();
            return Some(steps);
        }
        for &(next, step) in graph.get(&region).into_iter().flatten() {
            if next == from {
                continue;
            }
            if let std::collections::btree_map::Entry::Vacant(v) = parent.entry(next) {
                v.insert((region, step));
                queue.push_back(next);
            }
        }
    }
    None
}
