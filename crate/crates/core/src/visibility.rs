//! Visibility graph by a rotational sweep around each vertex, and the radially
//! sorted event list that drives the RTD construction.

use std::collections::BTreeSet;

use crate::geom::{segments_cross_properly, Direction, Scalar, VertexId, Workspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VisibilityGraph {
    adj: Vec<Vec<VertexId>>,
}

impl VisibilityGraph {
    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn sees(&self, a: VertexId, b: VertexId) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Unordered pairs `(a, b)` with `a < b`, sorted.
    pub fn pairs(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::new();
        for (a, ns) in self.adj.iter().enumerate() {
            out.extend(ns.iter().filter(|&&b| a < b).map(|&b| (a, b)));
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedEvent {
    pub origin: VertexId,
    pub target: VertexId,
    pub direction: Direction,
}

pub fn build_visibility(ws: &Workspace) -> VisibilityGraph {
    let n = ws.n();
    let mut adj = vec![BTreeSet::new(); n];
    for v in 0..n {
        adj[v].insert(ws.next(v));
        adj[ws.next(v)].insert(v);
    }
    for v in 0..n {
        for w in visible_from(ws, v) {
            adj[v].insert(w);
            adj[w].insert(v);
        }
    }
    VisibilityGraph { adj: adj.into_iter().map(|s| s.into_iter().collect()).collect() }
}

/// Vertices visible from `v`. Candidates are visited in angular order; an
/// edge is active while the sweep ray lies in its (closed) angular span.
/// The active set is a plain ordered set scanned per candidate.
fn visible_from(ws: &Workspace, v: VertexId) -> Vec<VertexId> {
    let n = ws.n();
    let pv = ws.vertex(v);
    let mut others: Vec<(Direction, Scalar, VertexId)> = (0..n)
        .filter(|&w| w != v)
        .map(|w| {
            let d = ws.vertex(w).sub(pv);
            let len = d.norm2();
            (Direction::new(d).expect("distinct vertices"), len, w)
        })
        .collect();
    others.sort();
    let mut groups: Vec<(Direction, VertexId)> = Vec::new();
    for (d, _, w) in others {
        if groups.last().is_none_or(|(g, _)| *g != d) {
            groups.push((d, w));
        }
    }
    let find = |d: &Direction| groups.binary_search_by(|(g, _)| g.cmp(d)).expect("endpoint direction is a group");
    let mut starts = vec![Vec::new(); groups.len()];
    let mut ends = vec![Vec::new(); groups.len()];
    let mut active = BTreeSet::new();
    for e in 0..n {
        if e == v || ws.next(e) == v {
            continue;
        }
        let (s, t) = ws.edge_points(e);
        let (ds, dt) = (s.sub(pv), t.sub(pv));
        let (lo, hi) = if ds.cross(&dt) >= Scalar::from_integer(0.into()) { (ds, dt) } else { (dt, ds) };
        let (i, j) = (find(&Direction::new(lo).unwrap()), find(&Direction::new(hi).unwrap()));
        starts[i].push(e);
        ends[j].push(e);
        if i > j {
            active.insert(e);
        }
    }
    let mut out = Vec::new();
    for (i, (_, w)) in groups.iter().enumerate() {
        active.extend(starts[i].iter().copied());
        let w = *w;
        let adjacent = ws.next(v) == w || ws.prev(v) == w;
        let pw = ws.vertex(w);
        let ok = adjacent
            || (ws.into_interior(v, &pw.sub(pv))
                && ws.into_interior(w, &pv.sub(pw))
                && !active.iter().any(|&e| {
                    let (s, t) = ws.edge_points(e);
                    segments_cross_properly(pv, pw, s, t)
                }));
        if ok {
            out.push(w);
        }
        for e in &ends[i] {
            active.remove(e);
        }
    }
    out
}

/// Both orientations of every visibility pair, sorted counterclockwise by
/// direction from the positive x-axis; ties by (origin, target).
pub fn directed_events(ws: &Workspace, vg: &VisibilityGraph) -> Vec<DirectedEvent> {
    let mut evs = Vec::with_capacity(2 * vg.edge_count());
    for (a, b) in vg.pairs() {
        for (o, t) in [(a, b), (b, a)] {
            let direction = Direction::new(ws.vertex(t).sub(ws.vertex(o))).expect("distinct vertices");
            evs.push(DirectedEvent { origin: o, target: t, direction });
        }
    }
    evs.sort_by(|x, y| {
        x.direction.cmp(&y.direction).then(x.origin.cmp(&y.origin)).then(x.target.cmp(&y.target))
    });
    evs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{on_segment, point_in_workspace, ratio, Location, Point};

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    /// Direct definition: the open segment avoids the boundary and its midpoint
    /// is interior.
    fn sees_brute(ws: &Workspace, a: VertexId, b: VertexId) -> bool {
        if ws.next(a) == b || ws.next(b) == a {
            return true;
        }
        let (pa, pb) = (ws.vertex(a), ws.vertex(b));
        for e in 0..ws.n() {
            let (s, t) = ws.edge_points(e);
            if segments_cross_properly(pa, pb, s, t) {
                return false;
            }
            for q in [s, t] {
                if q != pa && q != pb && on_segment(q, pa, pb) {
                    return false;
                }
            }
        }
        let mid = Point::new((&pa.x + &pb.x) * ratio(1, 2), (&pa.y + &pb.y) * ratio(1, 2));
        point_in_workspace(ws, &mid) == Location::Interior
    }

    fn check_against_brute(ws: &Workspace) {
        let vg = build_visibility(ws);
        for a in 0..ws.n() {
            for b in 0..ws.n() {
                if a != b {
                    assert_eq!(vg.sees(a, b), sees_brute(ws, a, b), "pair {a} {b}");
                }
            }
        }
    }

    #[test]
    fn square_has_six_pairs() {
        let ws = Workspace::new(vec![p(0, 0), p(1, 0), p(1, 1), p(0, 1)], vec![]).unwrap();
        let vg = build_visibility(&ws);
        assert_eq!(vg.edge_count(), 6);
        assert_eq!(directed_events(&ws, &vg).len(), 12);
    }

    #[test]
    fn square_with_hole_matches_brute_force() {
        let hole = vec![p(4, 4), p(4, 6), p(6, 6), p(6, 4)];
        let ws = Workspace::new(vec![p(0, 0), p(10, 0), p(10, 10), p(0, 10)], vec![hole]).unwrap();
        check_against_brute(&ws);
        let vg = build_visibility(&ws);
        // corner (0,0) cannot see (10,10) through the hole
        assert!(!vg.sees(0, 2));
    }

    #[test]
    fn nonconvex_and_collinear_cases() {
        let comb = vec![p(0, 0), p(6, 0), p(6, 3), p(5, 3), p(4, 1), p(3, 3), p(2, 1), p(1, 3), p(0, 3)];
        let ws = Workspace::new(comb, vec![]).unwrap();
        check_against_brute(&ws);
        let col = vec![p(0, 0), p(2, 0), p(4, 0), p(4, 2), p(2, 2), p(0, 2)];
        let ws = Workspace::new(col, vec![]).unwrap();
        check_against_brute(&ws);
        let vg = build_visibility(&ws);
        assert!(!vg.sees(0, 2));
    }

    #[test]
    fn triangle_event_order() {
        let ws = Workspace::new(vec![p(0, 0), p(1, 0), p(0, 1)], vec![]).unwrap();
        let evs = directed_events(&ws, &build_visibility(&ws));
        assert_eq!(evs.len(), 6);
        let angles: Vec<f64> = evs.iter().map(|e| e.direction.angle()).collect();
        let mut sorted = angles.clone();
        sorted.sort_by(f64::total_cmp);
        assert_eq!(angles, sorted);
        let first_after_x = evs.iter().find(|e| e.direction != Direction::positive_x()).unwrap();
        assert_eq!(first_after_x.direction, Direction::from_ints(0, 1).unwrap());
    }

    #[test]
    fn regular_polygon_is_complete() {
        let n = 16;
        let pts: Vec<Point> = (0..n)
            .map(|k| {
                let a = 0.1 + std::f64::consts::TAU * k as f64 / n as f64;
                Point::new(ratio((a.cos() * 1e9).round() as i64, 1_000_000_000), ratio((a.sin() * 1e9).round() as i64, 1_000_000_000))
            })
            .collect();
        let ws = Workspace::new(pts, vec![]).unwrap();
        let vg = build_visibility(&ws);
        assert_eq!(vg.edge_count(), 120);
        let evs = directed_events(&ws, &vg);
        for e in &evs {
            assert!(evs.iter().any(|f| f.origin == e.target && f.target == e.origin && f.direction == e.direction.reversed()));
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]
            #[test]
            fn star_polygons_match_brute_force(seed in proptest::collection::vec((1i64..20, 0i64..1000), 4..11)) {
                // star-shaped around the origin: sorted distinct angles, positive radii
                let mut angs: Vec<(i64, i64)> = seed.iter().map(|&(r, a)| (a, r)).collect();
                angs.sort();
                angs.dedup_by_key(|x| x.0);
                prop_assume!(angs.len() >= 3);
                let pts: Vec<Point> = angs.iter().map(|&(a, r)| {
                    let t = std::f64::consts::TAU * a as f64 / 1000.0;
                    Point::new(ratio((r as f64 * t.cos() * 16.0).round() as i64, 16), ratio((r as f64 * t.sin() * 16.0).round() as i64, 16))
                }).collect();
                if let Ok(ws) = Workspace::new(pts, vec![]) {
                    check_against_brute(&ws);
                }
            }
        }
    }
}
