//! Antipodal queries answered from the RTD: an interval tree over cell
//! openings, per-cell angle ranges and their glissette arcs.

use std::collections::BTreeMap;

use crate::contrib::{anchor, antipodal_pieces, union_runs, EndSpec};
use crate::curves::{ellipse_params, EllipseParams};
use crate::geom::EdgeId;
use crate::interval_tree::{Bounds, IntervalTree};
use crate::rtd::{unit, CellId, Inverse, Line, RtdCell};
use crate::{check_measurement, Result};

/// A sensor pose: position and direction of the first reading.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pose {
    pub p: [f64; 2],
    pub theta: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum PoseAt {
    Pose(Pose),
    /// every pose on the segment, all at the same angle
    Segment([f64; 2], [f64; 2], f64),
    None,
}

#[derive(Clone, Debug)]
pub struct AntipodalIndex {
    tree: IntervalTree<CellId>,
}

pub fn build_antipodal_index(cells: &[RtdCell]) -> AntipodalIndex {
    let items = cells.iter().map(|c| (c.min_opening(), c.max_opening(), c.id)).collect();
    AntipodalIndex { tree: IntervalTree::new(items, Bounds::Closed) }
}

impl AntipodalIndex {
    /// Rebuilds the index from stored `(min, max, cell)` opening ranges.
    pub fn from_ranges(ranges: Vec<(f64, f64, CellId)>) -> AntipodalIndex {
        AntipodalIndex { tree: IntervalTree::new(ranges, Bounds::Closed) }
    }

    pub fn ranges(&self) -> impl Iterator<Item = (f64, f64, CellId)> + '_ {
        self.tree.items().map(|(a, b, c)| (a, b, *c))
    }

    /// Cells whose opening range contains `d`, ascending by id.
    pub fn stab(&self, d: f64) -> Vec<CellId> {
        self.tree.stab(d).into_iter().map(|i| *self.tree.get(i)).collect()
    }

    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tree.is_empty()
    }
}

/// Arc of the glissette ellipse traced by the pose over an angle range.
#[derive(Clone, Debug, PartialEq)]
pub struct EllipseArc {
    pub ellipse: EllipseParams,
    pub theta: (f64, f64),
    pub ceiling: Line,
    pub floor: Line,
}

impl EllipseArc {
    pub fn pose(&self, theta: f64) -> Pose {
        let e = &self.ellipse;
        Pose { p: pose_between(&self.ceiling, &self.floor, e.d1, e.d2, theta), theta }
    }
}

/// For parallel ceiling and floor: at `theta` every chord of the
/// cross-section has length `d1 + d2`.
#[derive(Clone, Debug, PartialEq)]
pub struct ParallelBand {
    pub theta: f64,
    pub a: [f64; 2],
    pub b: [f64; 2],
}

#[derive(Clone, Debug, PartialEq)]
pub enum CellLocus {
    Arcs(Vec<EllipseArc>),
    Bands(Vec<ParallelBand>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct CellAnswer {
    pub cell: CellId,
    pub ceiling: EdgeId,
    pub floor: EdgeId,
    pub locus: CellLocus,
    /// symbolic ends of each arc's angle range
    pub specs: Vec<(EndSpec, EndSpec)>,
}

/// The point `P` with `P + d1·u` on the ceiling and `P − d2·u` on the floor.
pub fn pose_between(ceiling: &Line, floor: &Line, d1: f64, d2: f64, theta: f64) -> [f64; 2] {
    let u = unit(theta);
    let (nt, nb) = (ceiling.n, floor.n);
    let r1 = ceiling.c - d1 * (nt[0] * u[0] + nt[1] * u[1]);
    let r2 = floor.c + d2 * (nb[0] * u[0] + nb[1] * u[1]);
    let det = nt[0] * nb[1] - nt[1] * nb[0];
    [(r1 * nb[1] - r2 * nt[1]) / det, (nt[0] * r2 - nb[0] * r1) / det]
}

fn parallel_bands(c: &RtdCell, d1: f64, d2: f64) -> Vec<ParallelBand> {
    let d = d1 + d2;
    let (a, b) = c.theta;
    let ch = &c.sides[0];
    let mut ts: Vec<f64> = ch.roots(d, anchor(c)).iter().flatten().copied().filter(|t| *t >= a && *t <= b).collect();
    let (m, min) = ch.minimize(a, b);
    if ts.is_empty() && (min - d).abs() <= crate::eps() * d {
        ts.push(m);
    }
    ts.dedup_by(|x, y| (*x - *y).abs() <= crate::eps());
    ts.into_iter()
        .map(|t| {
            let u = unit(t);
            let (pl, pr) = (c.sides[0].top(t), c.sides[1].top(t));
            ParallelBand { theta: t, a: [pl[0] - d1 * u[0], pl[1] - d1 * u[1]], b: [pr[0] - d1 * u[0], pr[1] - d1 * u[1]] }
        })
        .collect()
}

/// Locus of one cell for readings `d1` ahead and `d2` behind.
pub fn cell_answer(c: &RtdCell, d1: f64, d2: f64) -> CellAnswer {
    let (ceiling, floor) = (c.sides[0].ceiling, c.sides[0].floor);
    if c.parallel {
        return CellAnswer { cell: c.id, ceiling: c.ceiling, floor: c.floor, locus: CellLocus::Bands(parallel_bands(c, d1, d2)), specs: vec![] };
    }
    let ellipse = ellipse_params(&ceiling, &floor, d1, d2).expect("non-parallel support lines");
    let pieces = antipodal_pieces(c, d1 + d2);
    CellAnswer {
        cell: c.id,
        ceiling: c.ceiling,
        floor: c.floor,
        locus: CellLocus::Arcs(pieces.iter().map(|p| EllipseArc { ellipse, theta: p.theta, ceiling, floor }).collect()),
        specs: pieces.into_iter().map(|p| (p.lo, p.hi)).collect(),
    }
}

pub fn query_antipodal(index: &AntipodalIndex, cells: &[RtdCell], d1: f64, d2: f64) -> Result<Vec<CellAnswer>> {
    check_measurement(d1)?;
    check_measurement(d2)?;
    Ok(index.stab(d1 + d2).into_iter().map(|id| cell_answer(&cells[id], d1, d2)).collect())
}

/// Maximal angle interval of an edge pair with the specs of its ends.
#[derive(Clone, Debug, PartialEq)]
pub struct PairInterval {
    pub ceiling: EdgeId,
    pub floor: EdgeId,
    pub theta: (f64, f64),
    pub lo: EndSpec,
    pub hi: EndSpec,
}

/// Union of the per-cell arcs grouped by (ceiling, floor). Runs are not
/// joined across the `0 / 2π` seam.
pub fn merge_by_pair(answers: &[CellAnswer]) -> Vec<PairInterval> {
    let mut groups: BTreeMap<(EdgeId, EdgeId), Vec<(f64, f64, EndSpec, EndSpec)>> = BTreeMap::new();
    for a in answers {
        if let CellLocus::Arcs(arcs) = &a.locus {
            let g = groups.entry((a.ceiling, a.floor)).or_default();
            for (arc, (lo, hi)) in arcs.iter().zip(&a.specs) {
                g.push((arc.theta.0, arc.theta.1, lo.clone(), hi.clone()));
            }
        }
    }
    let mut out = Vec::new();
    for ((ceiling, floor), items) in groups {
        for (lo_t, hi_t, lo, hi) in union_runs(items) {
            out.push(PairInterval { ceiling, floor, theta: (lo_t, hi_t), lo, hi });
        }
    }
    out
}

/// The pose of cell `c` at angle θ whose readings are `d1` ahead and `d2`
/// behind.
pub fn pose_at_theta(c: &RtdCell, d1: f64, d2: f64, theta: f64) -> PoseAt {
    let u = unit(theta);
    let down = |p: [f64; 2]| [p[0] - d1 * u[0], p[1] - d1 * u[1]];
    // a collapsed cross-section is covered by the neighbouring cell
    let (tl, tr) = (c.sides[0].top(theta), c.sides[1].top(theta));
    let width = (tr[0] - tl[0]) * u[1] - (tr[1] - tl[1]) * u[0];
    if !(width.abs() > crate::eps() * (1.0 + tl[0].abs().max(tl[1].abs()))) {
        return PoseAt::None;
    }
    match c.opening_inverse(theta, d1 + d2, crate::eps()) {
        Ok(Inverse::At(x)) => PoseAt::Pose(Pose { p: down(c.profile.ceiling_point(x)), theta }),
        Ok(Inverse::AllX) => PoseAt::Segment(down(c.sides[0].top(theta)), down(c.sides[1].top(theta)), theta),
        _ => PoseAt::None,
    }
}
