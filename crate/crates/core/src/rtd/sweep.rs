//! The simultaneous radial sweep. Every event direction is processed one
//! supporting line at a time; the cells touching the line's vertices are
//! recomputed locally in a symbolically perturbed frame.
//!
//! Frame: `u` points up, `w = (u.y, -u.x)` points right. Vertices are ordered
//! left to right by `⟨p, w⟩`; ties (vertices on a common line parallel to `u`)
//! are broken as if `u` were rotated infinitesimally forward once that line has
//! been processed, and backward before. That is a consistent perturbation, so
//! the mixed states between lines of one direction are genuine decompositions.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::geom::{Direction, EdgeId, VertexId, Workspace};
use crate::visibility::{directed_events, VisibilityGraph};
use crate::{Error, Result};

/// (ceiling, floor, left vertex, right vertex)
pub type CellKey = (EdgeId, EdgeId, VertexId, VertexId);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EventKind {
    /// the two vertices bound one workspace edge
    TypeI,
    /// the two vertices bound distinct edges
    TypeII,
    /// several visibility pairs on one supporting line at once
    Collinear,
}

/// Bookkeeping for one event (a connected chain of aligned vertex pairs).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepEvent {
    pub kind: EventKind,
    pub direction: Direction,
    pub pairs: Vec<(VertexId, VertexId)>,
    pub terminated: usize,
    pub created: usize,
}

#[derive(Clone, Debug)]
pub(crate) struct Record {
    pub key: CellKey,
    pub begin: Direction,
    pub end: Option<Direction>,
}

pub(crate) struct SweepOutput {
    pub records: Vec<Record>,
    pub events: Vec<SweepEvent>,
}

/// Coordinates scaled by a common denominator so all predicates run on
/// integers.
pub(crate) struct IntCoords {
    x: Vec<BigInt>,
    y: Vec<BigInt>,
}

impl IntCoords {
    pub fn new(ws: &Workspace) -> Self {
        let mut l = BigInt::one();
        for p in ws.vertices() {
            l = l.lcm(p.x.denom()).lcm(p.y.denom());
        }
        let scale = |s: &crate::Scalar| s.numer() * (&l / s.denom());
        IntCoords {
            x: ws.vertices().iter().map(|p| scale(&p.x)).collect(),
            y: ws.vertices().iter().map(|p| scale(&p.y)).collect(),
        }
    }

    fn orient(&self, a: usize, b: usize, c: usize) -> i32 {
        let v = (&self.x[b] - &self.x[a]) * (&self.y[c] - &self.y[a])
            - (&self.y[b] - &self.y[a]) * (&self.x[c] - &self.x[a]);
        sign(&v)
    }

    fn diff(&self, a: usize, b: usize) -> (BigInt, BigInt) {
        (&self.x[b] - &self.x[a], &self.y[b] - &self.y[a])
    }
}

fn sign(v: &BigInt) -> i32 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

pub(crate) struct Frame<'a> {
    ws: &'a Workspace,
    ic: &'a IntCoords,
    across: Vec<BigInt>,
    height: Vec<BigInt>,
    post: Vec<bool>,
}

impl<'a> Frame<'a> {
    pub fn new(ws: &'a Workspace, ic: &'a IntCoords, u: (BigInt, BigInt), post: bool) -> Self {
        let n = ws.n();
        let across = (0..n).map(|v| &ic.x[v] * &u.1 - &ic.y[v] * &u.0).collect();
        let height = (0..n).map(|v| &ic.x[v] * &u.0 + &ic.y[v] * &u.1).collect();
        Frame { ws, ic, across, height, post: vec![post; n] }
    }

    /// Left-to-right order of vertices in the perturbed frame.
    pub fn cmp(&self, p: VertexId, q: VertexId) -> Ordering {
        match self.across[p].cmp(&self.across[q]) {
            Ordering::Equal => {
                let h = self.height[p].cmp(&self.height[q]);
                if self.post[p] {
                    h
                } else {
                    h.reverse()
                }
            }
            o => o,
        }
    }

    pub fn line_key(&self, v: VertexId) -> &BigInt {
        &self.across[v]
    }

    pub fn process_line(&mut self, key: &BigInt) {
        for v in 0..self.post.len() {
            if &self.across[v] == key {
                self.post[v] = true;
            }
        }
    }

    /// (left, right) endpoints of an edge.
    fn span(&self, e: EdgeId) -> (VertexId, VertexId) {
        let (s, t) = (e, self.ws.next(e));
        if self.cmp(s, t) == Ordering::Less {
            (s, t)
        } else {
            (t, s)
        }
    }

    fn spans(&self, e: EdgeId, v: VertexId) -> Option<(VertexId, VertexId)> {
        let (l, r) = self.span(e);
        (self.cmp(l, v) == Ordering::Less && self.cmp(r, v) == Ordering::Greater).then_some((l, r))
    }

    /// Height order of two edges along the wall of `v` (both span it).
    fn cmp_edges_at(&self, e1: EdgeId, e2: EdgeId, v: VertexId) -> Ordering {
        let c = &self.across[v];
        let value = |e: EdgeId| {
            let (l, r) = self.span(e);
            let den = &self.across[r] - &self.across[l];
            let num = &self.height[l] * &den + (c - &self.across[l]) * (&self.height[r] - &self.height[l]);
            (num, den)
        };
        // spanning edges have positive across extent
        let ((n1, d1), (n2, d2)) = (value(e1), value(e2));
        let o = (&n1 * &d2).cmp(&(&n2 * &d1));
        if o != Ordering::Equal {
            return o;
        }
        // the edges meet at a shared endpoint on the wall line
        let ends1 = [e1, self.ws.next(e1)];
        let ends2 = [e2, self.ws.next(e2)];
        let x = *ends1.iter().find(|p| ends2.contains(p)).expect("edges meeting on a wall share an endpoint");
        let o1 = if ends1[0] == x { ends1[1] } else { ends1[0] };
        let o2 = if ends2[0] == x { ends2[1] } else { ends2[0] };
        let slope = |o: VertexId| (&self.height[x] - &self.height[o], &self.across[x] - &self.across[o]);
        let ((h1, a1), (h2, a2)) = (slope(o1), slope(o2));
        // slopes h/a; both other endpoints lie on one side, so a1·a2 > 0
        let s = (&h1 * &a2).cmp(&(&h2 * &a1));
        if self.cmp(x, v) == Ordering::Greater {
            // edges extend to the left of x: the steeper one is lower at the wall
            s.reverse()
        } else {
            s
        }
    }

    fn ray_hit(&self, v: VertexId, up: bool) -> Result<EdgeId> {
        let mut best: Option<EdgeId> = None;
        for e in 0..self.ws.n() {
            if self.ws.is_edge_endpoint(v, e) {
                continue;
            }
            let Some((l, r)) = self.spans(e, v) else { continue };
            let o = self.ic.orient(l, r, v);
            if (up && o >= 0) || (!up && o <= 0) {
                continue;
            }
            best = match best {
                None => Some(e),
                Some(b) => {
                    let ord = self.cmp_edges_at(e, b, v);
                    if (up && ord == Ordering::Less) || (!up && ord == Ordering::Greater) {
                        Some(e)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        best.ok_or_else(|| Error::Degenerate(format!("wall from vertex {v} escapes the workspace")))
    }

    /// Cells whose left limiting vertex is `v`, as (ceiling, floor).
    fn walls_right(&self, v: VertexId) -> Result<Vec<(EdgeId, EdgeId)>> {
        let (a, b) = (self.ws.prev(v), self.ws.next(v));
        let ar = self.cmp(a, v) == Ordering::Greater;
        let br = self.cmp(b, v) == Ordering::Greater;
        let convex = self.ic.orient(v, b, a) > 0;
        Ok(match (ar, br) {
            (false, true) => vec![(self.ray_hit(v, true)?, v)],
            (true, false) => vec![(a, self.ray_hit(v, false)?)],
            (true, true) if convex => vec![(a, v)],
            (true, true) => vec![(self.ray_hit(v, true)?, v), (a, self.ray_hit(v, false)?)],
            (false, false) if convex => vec![],
            (false, false) => vec![(self.ray_hit(v, true)?, self.ray_hit(v, false)?)],
        })
    }

    /// Cells whose right limiting vertex is `v`, as (ceiling, floor).
    fn walls_left(&self, v: VertexId) -> Result<Vec<(EdgeId, EdgeId)>> {
        let (a, b) = (self.ws.prev(v), self.ws.next(v));
        let ar = self.cmp(a, v) == Ordering::Greater;
        let br = self.cmp(b, v) == Ordering::Greater;
        let convex = self.ic.orient(v, b, a) > 0;
        Ok(match (ar, br) {
            (false, true) => vec![(self.ray_hit(v, true)?, a)],
            (true, false) => vec![(v, self.ray_hit(v, false)?)],
            (true, true) if convex => vec![],
            (true, true) => vec![(self.ray_hit(v, true)?, self.ray_hit(v, false)?)],
            (false, false) if convex => vec![(v, a)],
            (false, false) => vec![(self.ray_hit(v, true)?, a), (v, self.ray_hit(v, false)?)],
        })
    }

    fn strictly_between(&self, p: VertexId, t: (VertexId, VertexId), b: (VertexId, VertexId)) -> bool {
        self.ic.orient(t.0, t.1, p) < 0 && self.ic.orient(b.0, b.1, p) > 0
    }

    fn close_right(&self, v: VertexId, t: EdgeId, b: EdgeId) -> VertexId {
        let (st, sb) = (self.span(t), self.span(b));
        let mut best = if self.cmp(st.1, sb.1) == Ordering::Less { st.1 } else { sb.1 };
        for p in 0..self.ws.n() {
            if self.cmp(p, v) == Ordering::Greater
                && self.cmp(p, best) == Ordering::Less
                && self.strictly_between(p, st, sb)
            {
                best = p;
            }
        }
        best
    }

    fn close_left(&self, v: VertexId, t: EdgeId, b: EdgeId) -> VertexId {
        let (st, sb) = (self.span(t), self.span(b));
        let mut best = if self.cmp(st.0, sb.0) == Ordering::Greater { st.0 } else { sb.0 };
        for p in 0..self.ws.n() {
            if self.cmp(p, v) == Ordering::Less
                && self.cmp(p, best) == Ordering::Greater
                && self.strictly_between(p, st, sb)
            {
                best = p;
            }
        }
        best
    }

    /// All cells with `v` as a limiting vertex.
    pub fn cells_at(&self, v: VertexId, out: &mut BTreeSet<CellKey>) -> Result<()> {
        for (t, b) in self.walls_right(v)? {
            out.insert((t, b, v, self.close_right(v, t, b)));
        }
        for (t, b) in self.walls_left(v)? {
            out.insert((t, b, self.close_left(v, t, b), v));
        }
        Ok(())
    }

    pub fn decomposition(&self) -> Result<BTreeSet<CellKey>> {
        let mut out = BTreeSet::new();
        for v in 0..self.ws.n() {
            for (t, b) in self.walls_right(v)? {
                out.insert((t, b, v, self.close_right(v, t, b)));
            }
        }
        Ok(out)
    }
}

/// Live cells indexed by limiting vertex.
struct Live {
    cells: BTreeMap<CellKey, usize>,
    by_vertex: Vec<BTreeSet<CellKey>>,
}

impl Live {
    fn insert(&mut self, k: CellKey, rec: usize) {
        self.cells.insert(k, rec);
        self.by_vertex[k.2].insert(k);
        self.by_vertex[k.3].insert(k);
    }

    fn remove(&mut self, k: &CellKey) -> usize {
        self.by_vertex[k.2].remove(k);
        self.by_vertex[k.3].remove(k);
        self.cells.remove(k).expect("live key")
    }

    fn at(&self, vs: &BTreeSet<VertexId>) -> BTreeSet<CellKey> {
        vs.iter().flat_map(|&v| self.by_vertex[v].iter().copied()).collect()
    }
}

fn find(parent: &mut HashMap<VertexId, VertexId>, v: VertexId) -> VertexId {
    let p = *parent.entry(v).or_insert(v);
    if p == v {
        v
    } else {
        let r = find(parent, p);
        parent.insert(v, r);
        r
    }
}

struct Step<'s> {
    records: &'s mut Vec<Record>,
    recording: bool,
}

/// Applies one supporting line of one direction.
fn apply_line(
    frame: &mut Frame,
    live: &mut Live,
    dir: &Direction,
    line: &BigInt,
    pairs: &[(VertexId, VertexId)],
    closed_here: &mut HashMap<CellKey, usize>,
    step: &mut Step,
    events: &mut Vec<SweepEvent>,
) -> Result<()> {
    let ws = frame.ws;
    let vs: BTreeSet<VertexId> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    let old = live.at(&vs);
    let mut before = BTreeSet::new();
    for &v in &vs {
        frame.cells_at(v, &mut before)?;
    }
    if before != old {
        return Err(Error::InconsistentSweep(format!(
            "local recomputation before the event at {:?} disagrees with the live set",
            dir.vec()
        )));
    }
    frame.process_line(line);
    let mut new = BTreeSet::new();
    for &v in &vs {
        frame.cells_at(v, &mut new)?;
    }
    let terminated: Vec<CellKey> = old.difference(&new).copied().collect();
    let created: Vec<CellKey> = new.difference(&old).copied().collect();

    // chains of aligned pairs
    let mut parent = HashMap::new();
    for &(a, b) in pairs {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent.insert(ra, rb);
        }
    }
    let mut chains: BTreeMap<VertexId, Vec<(VertexId, VertexId)>> = BTreeMap::new();
    for &(a, b) in pairs {
        let r = find(&mut parent, a);
        chains.entry(r).or_default().push((a, b));
    }
    let root_of = |k: &CellKey, parent: &mut HashMap<VertexId, VertexId>| {
        if vs.contains(&k.2) {
            find(parent, k.2)
        } else {
            find(parent, k.3)
        }
    };
    let mut term_count: HashMap<VertexId, usize> = HashMap::new();
    let mut crea_count: HashMap<VertexId, usize> = HashMap::new();
    for k in &terminated {
        *term_count.entry(root_of(k, &mut parent)).or_default() += 1;
    }
    for k in &created {
        *crea_count.entry(root_of(k, &mut parent)).or_default() += 1;
    }
    for (root, chain) in chains {
        let kind = if chain.len() > 1 {
            EventKind::Collinear
        } else {
            let (a, b) = chain[0];
            if ws.next(a) == b || ws.next(b) == a {
                EventKind::TypeI
            } else {
                EventKind::TypeII
            }
        };
        events.push(SweepEvent {
            kind,
            direction: dir.clone(),
            pairs: chain,
            terminated: term_count.get(&root).copied().unwrap_or(0),
            created: crea_count.get(&root).copied().unwrap_or(0),
        });
    }

    for k in &terminated {
        let rec = live.remove(k);
        if step.recording {
            step.records[rec].end = Some(dir.clone());
            closed_here.insert(*k, rec);
        }
    }
    for k in created {
        let rec = if !step.recording {
            0
        } else if let Some(rec) = closed_here.remove(&k) {
            step.records[rec].end = None;
            rec
        } else {
            step.records.push(Record { key: k, begin: dir.clone(), end: None });
            step.records.len() - 1
        };
        live.insert(k, rec);
    }
    Ok(())
}

/// Groups the events of one direction by supporting line, in line order.
fn lines_of(frame: &Frame, group: &[(VertexId, VertexId)]) -> BTreeMap<BigInt, Vec<(VertexId, VertexId)>> {
    let mut lines: BTreeMap<BigInt, Vec<(VertexId, VertexId)>> = BTreeMap::new();
    for &(o, t) in group {
        lines.entry(frame.line_key(o).clone()).or_default().push((o, t));
    }
    lines
}

pub(crate) fn sweep(ws: &Workspace, vg: &VisibilityGraph) -> Result<SweepOutput> {
    let ic = IntCoords::new(ws);
    let evs = directed_events(ws, vg);
    let x_axis = Direction::positive_x();
    let mut groups: Vec<(Direction, Vec<(VertexId, VertexId)>)> = Vec::new();
    for e in &evs {
        match groups.last_mut() {
            Some((d, g)) if *d == e.direction => g.push((e.origin, e.target)),
            _ => groups.push((e.direction.clone(), vec![(e.origin, e.target)])),
        }
    }
    let zero_group = match groups.first() {
        Some((d, _)) if *d == x_axis => Some(groups.remove(0).1),
        _ => None,
    };

    let one = || (BigInt::one(), BigInt::zero());
    let init = Frame::new(ws, &ic, one(), true).decomposition()?;
    let mut records: Vec<Record> = Vec::new();
    let mut live = Live { cells: BTreeMap::new(), by_vertex: vec![BTreeSet::new(); ws.n()] };
    for &k in &init {
        records.push(Record { key: k, begin: x_axis.clone(), end: None });
        live.insert(k, records.len() - 1);
    }
    let mut events = Vec::new();
    for (dir, group) in &groups {
        let (o, t) = group[0];
        let u = ic.diff(o, t);
        let mut frame = Frame::new(ws, &ic, u, false);
        let mut closed_here = HashMap::new();
        let mut step = Step { records: &mut records, recording: true };
        for (line, pairs) in lines_of(&frame, group) {
            apply_line(&mut frame, &mut live, dir, &line, &pairs, &mut closed_here, &mut step, &mut events)?;
        }
    }
    // close the circle: replaying the θ = 0 events must restore the start
    let mut wrap = Live { cells: live.cells.clone(), by_vertex: live.by_vertex.clone() };
    if let Some(group) = zero_group {
        let mut frame = Frame::new(ws, &ic, one(), false);
        let mut scratch = Vec::new();
        let mut step = Step { records: &mut scratch, recording: false };
        let mut closed_here = HashMap::new();
        for (line, pairs) in lines_of(&frame, &group) {
            apply_line(&mut frame, &mut wrap, &x_axis, &line, &pairs, &mut closed_here, &mut step, &mut events)?;
        }
    }
    let end: BTreeSet<CellKey> = wrap.cells.keys().copied().collect();
    if end != init {
        return Err(Error::InconsistentSweep("the sweep does not return to its initial decomposition".into()));
    }
    Ok(SweepOutput { records, events })
}
