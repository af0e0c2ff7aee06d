//! Output-sensitive antipodal structure: the maximal angle intervals of
//! every edge pair, precomputed for every range of `d` by a downward sweep.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::antipodal::{ParallelBand, PairInterval};
use crate::contrib::{antipodal_pieces, EndSpec, Piece};
use crate::curves::ellipse_params;
use crate::geom::{Direction, EdgeId};
use crate::interval_tree::{Bounds, IntervalTree};
use crate::rtd::{AngleEnd, CellId, RtdCell};
use crate::{check_measurement, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellClass {
    Empty,
    Full,
    Partial,
}

/// Class of a cell for lengths near `d`.
pub fn classify(c: &RtdCell, d: f64) -> Result<CellClass> {
    let o = &c.openings;
    let (lmin, lmax, rmin, rmax) = (o.left_min, o.left_max, o.right_min, o.right_max);
    if [lmin, lmax, rmin, rmax].contains(&d) {
        return Err(Error::OnCriticalValue(d));
    }
    Ok(if d < lmin.min(rmin) || d > lmax.max(rmax) {
        CellClass::Empty
    } else if (rmax < d && d < lmin) || (lmax < d && d < rmin) {
        CellClass::Full
    } else {
        CellClass::Partial
    })
}

fn same(a: f64, b: f64) -> bool {
    a == b || (a.is_finite() && b.is_finite() && (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0))
}

/// 0, every side-opening extremum of every cell, and ∞, ascending.
pub fn critical_values(cells: &[RtdCell]) -> Vec<f64> {
    let mut v = vec![0.0, f64::INFINITY];
    for c in cells {
        let o = &c.openings;
        v.extend([o.left_min, o.left_max, o.right_min, o.right_max]);
    }
    v.sort_by(f64::total_cmp);
    v.dedup_by(|b, a| same(*a, *b));
    v
}

/// Lengths at which the pieces a cell contributes change combinatorially:
/// side lengths at both ends and side minima. Refines the extrema, since a
/// side passing `d` at the non-extremal end also adds or removes a root.
pub fn breakpoints(c: &RtdCell) -> Vec<f64> {
    let (a, b) = c.theta;
    let o = &c.openings;
    let mut v = vec![
        c.side_length(false, a),
        c.side_length(false, b),
        o.left_min,
        c.side_length(true, a),
        c.side_length(true, b),
        o.right_min,
    ];
    v.retain(|x| x.is_finite() && *x > 0.0);
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

/// A maximal angle interval of an edge pair, live for `d ∈ (d_lo, d_hi]`.
#[derive(Clone, Debug, PartialEq)]
pub struct MaximalInterval {
    pub ceiling: EdgeId,
    pub floor: EdgeId,
    pub lo: EndSpec,
    pub hi: EndSpec,
    pub d_lo: f64,
    pub d_hi: f64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SweepStats {
    pub steps: usize,
    pub insertions: usize,
    pub deletions: usize,
    pub splits: usize,
    pub merges: usize,
}

impl SweepStats {
    pub fn total(&self) -> usize {
        self.insertions + self.deletions + self.splits + self.merges
    }
}

#[derive(Clone, Debug)]
pub struct OptIndex {
    tree: IntervalTree<MaximalInterval>,
    parallel: IntervalTree<CellId>,
    pub stats: SweepStats,
}

type Pair = (EdgeId, EdgeId);

/// Boundary directions numbered so pieces can be chained by equal ids.
struct Boundaries {
    begin: Vec<usize>,
    end: Vec<usize>,
}

impl Boundaries {
    fn new(cells: &[RtdCell]) -> Boundaries {
        let mut ids: BTreeMap<&Direction, usize> = BTreeMap::new();
        for c in cells {
            let n = ids.len();
            ids.entry(&c.begin).or_insert(n);
            if let AngleEnd::Dir(e) = &c.end {
                let n = ids.len();
                ids.entry(e).or_insert(n);
            }
        }
        let begin = cells.iter().map(|c| ids[&c.begin]).collect();
        let end = cells
            .iter()
            .map(|c| match &c.end {
                AngleEnd::Dir(e) => ids[e],
                AngleEnd::FullTurn => usize::MAX,
            })
            .collect();
        Boundaries { begin, end }
    }
}

/// Chains of touching pieces: `(head lo, tail hi, links)`.
fn chains(pieces: &[&Piece], bd: &Boundaries) -> (Vec<(EndSpec, EndSpec)>, usize) {
    let mut start: HashMap<usize, usize> = HashMap::new();
    for (i, p) in pieces.iter().enumerate() {
        if let EndSpec::Begin(c) = p.lo {
            start.insert(bd.begin[c], i);
        }
    }
    let next: Vec<Option<usize>> = pieces
        .iter()
        .map(|p| match p.hi {
            EndSpec::End(c) if bd.end[c] != usize::MAX => start.get(&bd.end[c]).copied(),
            _ => None,
        })
        .collect();
    let mut has_prev = vec![false; pieces.len()];
    for j in next.iter().flatten() {
        has_prev[*j] = true;
    }
    let links = next.iter().flatten().count();
    let mut out = Vec::new();
    for h in (0..pieces.len()).filter(|&i| !has_prev[i]) {
        let mut t = h;
        while let Some(j) = next[t] {
            t = j;
        }
        out.push((pieces[h].lo.clone(), pieces[t].hi.clone()));
    }
    out.sort();
    (out, links)
}

pub fn build_opt_index(cells: &[RtdCell]) -> Result<OptIndex> {
    let bd = Boundaries::new(cells);
    // breakpoints grouped into descending boundary values
    let mut all: Vec<(f64, CellId)> = Vec::new();
    for c in cells.iter().filter(|c| !c.parallel) {
        all.extend(breakpoints(c).into_iter().map(|v| (v, c.id)));
    }
    all.sort_by(|x, y| y.0.total_cmp(&x.0).then(x.1.cmp(&y.1)));
    let mut groups: Vec<(f64, f64, BTreeSet<CellId>)> = Vec::new();
    for (v, c) in all {
        match groups.last_mut() {
            Some(g) if same(g.1, v) => {
                g.1 = v;
                g.2.insert(c);
            }
            _ => groups.push((v, v, BTreeSet::from([c]))),
        }
    }

    let mut stats = SweepStats::default();
    let mut live_pieces: Vec<Vec<Piece>> = vec![Vec::new(); cells.len()];
    let mut pair_cells: BTreeMap<Pair, BTreeSet<CellId>> = BTreeMap::new();
    let mut live: BTreeMap<Pair, Vec<(EndSpec, EndSpec, usize)>> = BTreeMap::new();
    let mut links: BTreeMap<Pair, usize> = BTreeMap::new();
    let mut records: Vec<MaximalInterval> = Vec::new();

    for (i, (g_hi, g_lo, touched)) in groups.iter().enumerate() {
        let below = groups.get(i + 1).map_or(0.0, |g| g.0);
        let rep = 0.5 * (below + g_lo);
        stats.steps += 1;
        let mut dirty: BTreeSet<Pair> = BTreeSet::new();
        for &id in touched {
            let c = &cells[id];
            let fresh = antipodal_pieces(c, rep);
            let specs = |ps: &[Piece]| ps.iter().map(|p| (p.lo.clone(), p.hi.clone())).collect::<Vec<_>>();
            if specs(&fresh) == specs(&live_pieces[id]) {
                live_pieces[id] = fresh;
                continue;
            }
            let pair = (c.ceiling, c.floor);
            let set = pair_cells.entry(pair).or_default();
            if !live_pieces[id].is_empty() {
                if !set.remove(&id) {
                    return Err(Error::InconsistentSweep(format!("cell {id} missing from its pair")));
                }
                stats.deletions += live_pieces[id].len();
            }
            stats.insertions += fresh.len();
            if !fresh.is_empty() {
                set.insert(id);
            }
            live_pieces[id] = fresh;
            dirty.insert(pair);
        }
        for pair in dirty {
            let members: Vec<&Piece> = pair_cells[&pair].iter().flat_map(|&c| live_pieces[c].iter()).collect();
            check_disjoint(&members, rep)?;
            let (now, nlinks) = chains(&members, &bd);
            let old_links = links.insert(pair, nlinks).unwrap_or(0);
            if nlinks > old_links {
                stats.merges += nlinks - old_links;
            } else {
                stats.splits += old_links - nlinks;
            }
            let old = live.remove(&pair).unwrap_or_default();
            let mut kept = Vec::new();
            for (lo, hi, r) in old {
                if now.iter().any(|(a, b)| *a == lo && *b == hi) {
                    kept.push((lo, hi, r));
                } else {
                    records[r].d_lo = *g_hi;
                }
            }
            for (lo, hi) in now {
                if !kept.iter().any(|(a, b, _)| *a == lo && *b == hi) {
                    records.push(MaximalInterval { ceiling: pair.0, floor: pair.1, lo: lo.clone(), hi: hi.clone(), d_lo: 0.0, d_hi: *g_hi });
                    kept.push((lo, hi, records.len() - 1));
                }
            }
            kept.sort();
            live.insert(pair, kept);
        }
    }
    // records still live reach down to 0
    Ok(OptIndex::from_records(records, cells, stats))
}

fn check_disjoint(members: &[&Piece], d: f64) -> Result<()> {
    let mut spans: Vec<(f64, f64)> = members.iter().map(|p| p.theta).collect();
    spans.sort_by(|a, b| a.0.total_cmp(&b.0));
    for w in spans.windows(2) {
        if w[1].0 < w[0].1 - 1e-9 {
            return Err(Error::InconsistentSweep(format!("overlapping pieces at d = {d}: {:?} {:?}", w[0], w[1])));
        }
    }
    Ok(())
}

/// Answer of the output-sensitive structure.
#[derive(Clone, Debug, PartialEq)]
pub struct OptAnswer {
    pub intervals: Vec<PairInterval>,
    pub bands: Vec<(CellId, ParallelBand)>,
}

impl OptIndex {
    pub fn from_records(records: Vec<MaximalInterval>, cells: &[RtdCell], stats: SweepStats) -> OptIndex {
        let items = records.into_iter().map(|r| (r.d_lo, r.d_hi, r)).collect();
        let par = cells.iter().filter(|c| c.parallel).map(|c| (c.min_opening(), c.max_opening(), c.id)).collect();
        OptIndex { tree: IntervalTree::new(items, Bounds::LeftOpen), parallel: IntervalTree::new(par, Bounds::Closed), stats }
    }

    pub fn records(&self) -> impl Iterator<Item = &MaximalInterval> {
        self.tree.items().map(|(_, _, r)| r)
    }

    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tree.is_empty()
    }

    /// Records live at `d`.
    pub fn stab(&self, d: f64) -> Vec<&MaximalInterval> {
        self.tree.stab(d).into_iter().map(|i| self.tree.get(i)).collect()
    }
}

/// Angle of a symbolic interval end for length `d`.
pub fn resolve_endpoint(spec: &EndSpec, cells: &[RtdCell], d: f64) -> Result<f64> {
    spec.resolve(cells, d)
}

pub fn query_opt(index: &OptIndex, cells: &[RtdCell], d1: f64, d2: f64) -> Result<OptAnswer> {
    check_measurement(d1)?;
    check_measurement(d2)?;
    let d = d1 + d2;
    let mut intervals = Vec::new();
    for r in index.stab(d) {
        let lo = resolve_endpoint(&r.lo, cells, d)?;
        let hi = resolve_endpoint(&r.hi, cells, d)?;
        intervals.push(PairInterval { ceiling: r.ceiling, floor: r.floor, theta: (lo, hi), lo: r.lo.clone(), hi: r.hi.clone() });
    }
    intervals.sort_by(|a, b| (a.ceiling, a.floor).cmp(&(b.ceiling, b.floor)).then(a.theta.0.total_cmp(&b.theta.0)));
    let mut bands = Vec::new();
    for i in index.parallel.stab(d) {
        let id = *index.parallel.get(i);
        if let crate::antipodal::CellLocus::Bands(bs) = crate::antipodal::cell_answer(&cells[id], d1, d2).locus {
            bands.extend(bs.into_iter().map(|b| (id, b)));
        }
    }
    Ok(OptAnswer { intervals, bands })
}

/// Ellipse arc traced over a resolved interval.
pub fn interval_arc(iv: &PairInterval, cells: &[RtdCell], d1: f64, d2: f64) -> Result<crate::antipodal::EllipseArc> {
    let cell = match iv.lo {
        EndSpec::Begin(c) | EndSpec::End(c) | EndSpec::Root { cell: c, .. } => &cells[c],
    };
    let (ceiling, floor) = (cell.sides[0].ceiling, cell.sides[0].floor);
    Ok(crate::antipodal::EllipseArc { ellipse: ellipse_params(&ceiling, &floor, d1, d2)?, theta: iv.theta, ceiling, floor })
}
