//! Single-reading queries: cells sorted by maximum opening, per-cell
//! preimages and their planar projections.

use std::f64::consts::TAU;

use geo::{BooleanOps, Coord, LineString, MultiPolygon, Polygon};

use crate::contrib::{single_pieces, Piece};
use crate::curves::{conchoid_implicit, flatten, ConchoidImplicit};
use crate::rtd::{unit, CellId, Line, RtdCell};
use crate::{check_measurement, Error, Result};

#[derive(Clone, Debug, Default)]
pub struct SingleIndex {
    /// cell ids by decreasing maximum opening, ties by id
    pub order: Vec<CellId>,
    pub max_opening: Vec<f64>,
}

pub fn build_single_index(cells: &[RtdCell]) -> SingleIndex {
    let mut order: Vec<CellId> = cells.iter().map(|c| c.id).collect();
    order.sort_by(|&a, &b| cells[b].max_opening().total_cmp(&cells[a].max_opening()).then(a.cmp(&b)));
    let max_opening = order.iter().map(|&i| cells[i].max_opening()).collect();
    SingleIndex { order, max_opening }
}

/// Poses of one cell whose reading is `d`: for θ in `pieces`, the points
/// `d` below the ceiling along the chords at least `d` long.
#[derive(Clone, Debug, PartialEq)]
pub struct CellPreimage {
    pub cell: CellId,
    pub d: f64,
    pub pieces: Vec<Piece>,
}

#[derive(Clone, Debug, Default)]
pub struct SingleAnswer {
    pub hits: Vec<CellPreimage>,
    /// cells examined, including the first one below `d`
    pub inspected: usize,
}

pub fn query_single(index: &SingleIndex, cells: &[RtdCell], d: f64) -> Result<SingleAnswer> {
    check_measurement(d)?;
    let mut out = SingleAnswer::default();
    for (&id, &m) in index.order.iter().zip(&index.max_opening) {
        out.inspected += 1;
        if m < d {
            break;
        }
        out.hits.push(CellPreimage { cell: id, d, pieces: single_pieces(&cells[id], d) });
    }
    Ok(out)
}

/// Pose segment at θ: the points `d` below the ceiling whose chord reaches
/// at least `d`. `None` when no chord is long enough.
pub fn slice(c: &RtdCell, d: f64, theta: f64) -> Option<([f64; 2], [f64; 2])> {
    let (tl, tr) = (c.sides[0].top(theta), c.sides[1].top(theta));
    let (l, r) = (c.side_length(false, theta), c.side_length(true, theta));
    let u = unit(theta);
    let down = |p: [f64; 2]| [p[0] - d * u[0], p[1] - d * u[1]];
    let along = |t: f64| [tl[0] + t * (tr[0] - tl[0]), tl[1] + t * (tr[1] - tl[1])];
    if !(l.is_finite() && r.is_finite()) {
        return None;
    }
    match (l >= d, r >= d) {
        (true, true) => Some((down(tl), down(tr))),
        (true, false) => Some((down(tl), down(along((l - d) / (l - r))))),
        (false, true) => Some((down(along((l - d) / (l - r))), down(tr))),
        (false, false) => None,
    }
}

impl CellPreimage {
    pub fn slice(&self, cells: &[RtdCell], theta: f64) -> Option<([f64; 2], [f64; 2])> {
        let t = if self.pieces.iter().any(|p| p.theta.0 <= theta && theta <= p.theta.1) {
            theta
        } else {
            let w = theta + TAU;
            if !self.pieces.iter().any(|p| p.theta.0 <= w && w <= p.theta.1) {
                return None;
            }
            w
        };
        slice(&cells[self.cell], self.d, t)
    }
}

/// One boundary piece of a projected region, traversed from `theta.0` to
/// `theta.1` (or `a` to `b`).
#[derive(Clone, Debug, PartialEq)]
pub enum CurvePiece {
    /// the points `center − radius·u(θ)`
    CircularArc { center: [f64; 2], radius: f64, theta: (f64, f64) },
    /// the points `pole + (t(θ) − d)·u(θ)` with `pole + t(θ)·u(θ)` on the directrix
    ConchoidArc { pole: [f64; 2], directrix: Line, d: f64, theta: (f64, f64) },
    Segment { a: [f64; 2], b: [f64; 2] },
}

impl CurvePiece {
    pub fn at(&self, s: f64) -> [f64; 2] {
        match self {
            CurvePiece::CircularArc { center, radius, theta } => {
                let u = unit(theta.0 + s * (theta.1 - theta.0));
                [center[0] - radius * u[0], center[1] - radius * u[1]]
            }
            CurvePiece::ConchoidArc { pole, directrix, d, theta } => {
                let t = theta.0 + s * (theta.1 - theta.0);
                let u = unit(t);
                let k = directrix.depth(*pole) / (directrix.n[0] * u[0] + directrix.n[1] * u[1]) - d;
                [pole[0] + k * u[0], pole[1] + k * u[1]]
            }
            CurvePiece::Segment { a, b } => [a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])],
        }
    }

    pub fn start(&self) -> [f64; 2] {
        self.at(0.0)
    }

    pub fn end(&self) -> [f64; 2] {
        self.at(1.0)
    }

    pub fn flatten(&self, deviation: f64) -> Vec<[f64; 2]> {
        match self {
            CurvePiece::Segment { a, b } => vec![*a, *b],
            _ => flatten(|s| self.at(s), 0.0, 1.0, deviation),
        }
    }

    /// Implicit quartic of a conchoid piece.
    pub fn implicit(&self) -> Option<Result<ConchoidImplicit>> {
        match self {
            CurvePiece::ConchoidArc { pole, directrix, d, .. } => Some(conchoid_implicit(*pole, directrix, *d)),
            _ => None,
        }
    }
}

/// Projection of a cell's preimage over one angle range: the closed chain
/// `boundary` intersected with the floor's interior half-plane.
#[derive(Clone, Debug, PartialEq)]
pub struct PositionRegion {
    pub cell: CellId,
    pub d: f64,
    pub theta: (f64, f64),
    pub boundary: Vec<CurvePiece>,
    pub clip: Line,
}

fn side_curve(c: &RtdCell, side: usize, d: f64, theta: (f64, f64)) -> CurvePiece {
    let ch = &c.sides[side];
    if ch.on_ceiling {
        CurvePiece::CircularArc { center: ch.v, radius: d, theta }
    } else {
        CurvePiece::ConchoidArc { pole: ch.v, directrix: ch.ceiling, d, theta }
    }
}

/// Regions of the poses of `c` with reading `d`, one per angle range of the
/// preimage, split where `u` is normal to the ceiling.
pub fn project_region(c: &RtdCell, d: f64) -> Result<Vec<PositionRegion>> {
    check_measurement(d)?;
    if d > c.max_opening() {
        return Err(Error::EmptyRegion(d));
    }
    let tp = c.ceiling_normal_angle();
    let mut out = Vec::new();
    for p in single_pieces(c, d) {
        let (a, b) = p.theta;
        let tp = tp + TAU * ((a - tp) / TAU).ceil();
        let ranges = if tp > a && tp < b { vec![(a, tp), (tp, b)] } else { vec![(a, b)] };
        for (s, t) in ranges {
            let left = side_curve(c, 0, d, (s, t));
            let right = side_curve(c, 1, d, (t, s));
            let boundary = vec![
                left.clone(),
                CurvePiece::Segment { a: left.end(), b: right.start() },
                right.clone(),
                CurvePiece::Segment { a: right.end(), b: left.start() },
            ];
            out.push(PositionRegion { cell: c.id, d, theta: (s, t), boundary, clip: c.sides[0].floor });
        }
    }
    Ok(out)
}

impl PositionRegion {
    /// Flattened, clipped region.
    pub fn polygon(&self, deviation: f64) -> MultiPolygon<f64> {
        let mut ring: Vec<Coord<f64>> = Vec::new();
        for piece in &self.boundary {
            for q in piece.flatten(deviation) {
                let c = Coord { x: q[0], y: q[1] };
                if ring.last() != Some(&c) {
                    ring.push(c);
                }
            }
        }
        let shape = Polygon::new(LineString::from(ring), vec![]);
        let l = &self.clip;
        let m = 1e6;
        let q = |s: f64, t: f64| Coord { x: l.p[0] + s * l.d[0] - t * l.n[0], y: l.p[1] + s * l.d[1] - t * l.n[1] };
        let half = Polygon::new(LineString::from(vec![q(-m, 0.0), q(m, 0.0), q(m, m), q(-m, m)]), vec![]);
        shape.intersection(&half)
    }
}

/// Union of flattened regions.
pub fn region_union(regions: &[PositionRegion], deviation: f64) -> MultiPolygon<f64> {
    let polys: Vec<Polygon<f64>> = regions.iter().flat_map(|r| r.polygon(deviation).0).collect();
    geo::unary_union(&polys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::geom::ray_cast_f64;
    use crate::rtd::Rtd;
    use geo::{Area, Contains, Point as GeoPoint};
    use std::f64::consts::SQRT_2;

    #[test]
    fn index_order() {
        assert!(build_single_index(&[]).order.is_empty());
        let rtd = Rtd::build(&fixtures::unit_square()).unwrap();
        let idx = build_single_index(&rtd.cells);
        assert!((idx.max_opening[0] - SQRT_2).abs() < 1e-12);
        assert!(idx.max_opening.windows(2).all(|w| w[0] >= w[1]));
        let rtd = Rtd::build(&fixtures::regular_polygon(16)).unwrap();
        let idx = build_single_index(&rtd.cells);
        assert!((idx.max_opening[0] - 2.0).abs() < 1e-6);
    }

    #[test]
    fn query_reports_exactly_the_long_cells() {
        let rtd = Rtd::build(&fixtures::simple_polygon()).unwrap();
        let idx = build_single_index(&rtd.cells);
        for d in [0.3, 1.0, 4.0, 5.0, 50.0] {
            let ans = query_single(&idx, &rtd.cells, d).unwrap();
            let mut got: Vec<CellId> = ans.hits.iter().map(|h| h.cell).collect();
            got.sort();
            let want: Vec<CellId> = rtd.cells.iter().filter(|c| c.max_opening() >= d).map(|c| c.id).collect();
            assert_eq!(got, want);
            assert_eq!(ans.inspected, (want.len() + 1).min(rtd.cells.len()));
        }
        let sq = Rtd::build(&fixtures::unit_square()).unwrap();
        let ans = query_single(&build_single_index(&sq.cells), &sq.cells, 2.0).unwrap();
        assert_eq!((ans.hits.len(), ans.inspected), (0, 1));
        assert_eq!(query_single(&idx, &rtd.cells, 0.0).unwrap_err(), Error::NonPositiveMeasurement(0.0));
    }

    #[test]
    fn slices_are_sound() {
        let rtd = Rtd::build(&fixtures::simple_polygon()).unwrap();
        let idx = build_single_index(&rtd.cells);
        for d in [0.3, 2.0, 4.0] {
            for h in query_single(&idx, &rtd.cells, d).unwrap().hits {
                for p in &h.pieces {
                    for k in 1..6 {
                        let th = p.theta.0 + (p.theta.1 - p.theta.0) * k as f64 / 6.0;
                        let (a, b) = h.slice(&rtd.cells, th).unwrap();
                        for j in 1..5 {
                            let s = j as f64 / 5.0;
                            let q = [a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])];
                            let r = ray_cast_f64(&rtd.workspace, q, th).unwrap();
                            assert!((r - d).abs() < 1e-7, "cell {} θ {th}: {r}", h.cell);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn region_boundaries_close_and_curves_match() {
        let rtd = Rtd::build(&fixtures::simple_polygon()).unwrap();
        let mut conchoids = 0;
        let mut circles = 0;
        for c in &rtd.cells {
            for d in [0.3, 1.0] {
                let Ok(regions) = project_region(c, d) else { continue };
                for r in regions {
                    for w in 0..4 {
                        let (a, b) = (&r.boundary[w], &r.boundary[(w + 1) % 4]);
                        let (e, s) = (a.end(), b.start());
                        assert!((e[0] - s[0]).abs() < 1e-9 && (e[1] - s[1]).abs() < 1e-9);
                    }
                    for piece in [&r.boundary[0], &r.boundary[2]] {
                        match piece {
                            CurvePiece::CircularArc { center, radius, .. } => {
                                circles += 1;
                                let q = piece.at(0.3);
                                assert!(((q[0] - center[0]).hypot(q[1] - center[1]) - radius).abs() < 1e-9);
                            }
                            CurvePiece::ConchoidArc { .. } => {
                                let imp = piece.implicit().unwrap().unwrap();
                                for k in 0..=10 {
                                    let q = piece.at(k as f64 / 10.0);
                                    assert!(imp.residual(q).abs() < 1e-9 * (1.0 + q[0].abs() + q[1].abs()).powi(4));
                                }
                                conchoids += 1;
                            }
                            _ => unreachable!(),
                        }
                    }
                }
            }
        }
        assert!(conchoids > 0 && circles > 0);
    }

    #[test]
    fn region_shrinks_toward_max_opening() {
        let rtd = Rtd::build(&fixtures::simple_polygon()).unwrap();
        let c = rtd.cells.iter().filter(|c| !c.parallel).max_by(|a, b| a.max_opening().total_cmp(&b.max_opening())).unwrap();
        let mut last = f64::INFINITY;
        for j in 1..=4 {
            let d = c.max_opening() * (1.0 - 10f64.powi(-j));
            let area: f64 = project_region(c, d).unwrap().iter().map(|r| r.polygon(1e-5).unsigned_area()).sum();
            assert!(area <= last + 1e-12, "area {area} after {last}");
            last = area;
        }
        assert!(last < 1e-2);
        assert_eq!(project_region(c, c.max_opening() * 1.01).unwrap_err(), Error::EmptyRegion(c.max_opening() * 1.01));
    }

    #[test]
    fn square_band() {
        let rtd = Rtd::build(&fixtures::unit_square()).unwrap();
        let idx = build_single_index(&rtd.cells);
        let d = 0.15;
        let ans = query_single(&idx, &rtd.cells, d).unwrap();
        let regions: Vec<PositionRegion> = ans.hits.iter().flat_map(|h| project_region(&rtd.cells[h.cell], d).unwrap()).collect();
        let u = region_union(&regions, 1e-4);
        assert_eq!(u.0.len(), 1);
        // a band along the boundary: the centre is free, points near walls are covered
        assert!(!u.contains(&GeoPoint::new(0.5, 0.5)));
        assert!(u.contains(&GeoPoint::new(0.5, 0.1)));
        assert!(u.contains(&GeoPoint::new(0.9, 0.5)));
        assert!(!u.contains(&GeoPoint::new(0.5, 0.3)));
    }

    #[test]
    fn union_of_one_and_two() {
        let rtd = Rtd::build(&fixtures::simple_polygon()).unwrap();
        let c = rtd.cells.iter().find(|c| !c.parallel && c.max_opening() > 1.0).unwrap();
        let r = project_region(c, 0.5).unwrap();
        let one = region_union(&r[..1], 1e-4);
        assert!((one.unsigned_area() - r[0].polygon(1e-4).unsigned_area()).abs() < 1e-9);
        let mut far = r[0].clone();
        for p in far.boundary.iter_mut() {
            match p {
                CurvePiece::CircularArc { center, .. } => center[0] += 1000.0,
                CurvePiece::ConchoidArc { pole, directrix, .. } => {
                    pole[0] += 1000.0;
                    directrix.p[0] += 1000.0;
                    directrix.c += 1000.0 * directrix.n[0];
                }
                CurvePiece::Segment { a, b } => {
                    a[0] += 1000.0;
                    b[0] += 1000.0;
                }
            }
        }
        far.clip.p[0] += 1000.0;
        far.clip.c += 1000.0 * far.clip.n[0];
        let two = region_union(&[r[0].clone(), far], 1e-4);
        assert_eq!(two.0.len(), one.0.len() * 2);
    }
}
