//! Rotational trapezoidal decomposition of `W × S¹`.

mod profile;
mod sweep;

use std::f64::consts::TAU;

use num_traits::Zero;

pub use profile::{unit, Chord, Inverse, Line, OpeningProfile};
pub use sweep::{CellKey, EventKind, SweepEvent};

use crate::geom::{Direction, EdgeId, Point, Scalar, VertexId, Workspace};
use crate::visibility::{build_visibility, VisibilityGraph};
use crate::{Error, Result};

pub type CellId = usize;

/// Exclusive end of a cell's angle interval; `FullTurn` is 2π.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AngleEnd {
    Dir(Direction),
    FullTurn,
}

impl AngleEnd {
    pub fn angle(&self) -> f64 {
        match self {
            AngleEnd::Dir(d) => d.angle(),
            AngleEnd::FullTurn => TAU,
        }
    }
}

/// Extrema of the left/right side profiles over the closed angle interval.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SideOpenings {
    pub left_min: f64,
    pub left_max: f64,
    pub right_min: f64,
    pub right_max: f64,
}

#[derive(Clone, Debug)]
pub struct RtdCell {
    pub id: CellId,
    pub ceiling: EdgeId,
    pub floor: EdgeId,
    pub left: VertexId,
    pub right: VertexId,
    pub begin: Direction,
    pub end: AngleEnd,
    /// closure of the angle interval, numeric
    pub theta: (f64, f64),
    pub parallel: bool,
    /// chords through the left and right limiting vertices
    pub sides: [Chord; 2],
    pub profile: OpeningProfile,
    pub openings: SideOpenings,
}

/// A cross-section: corners in order top-left, top-right, bottom-right,
/// bottom-left.
#[derive(Clone, Debug, PartialEq)]
pub struct Trapezoid {
    pub corners: [Point; 4],
    pub direction: Direction,
}

impl Trapezoid {
    pub fn area(&self) -> Scalar {
        let c = &self.corners;
        let mut s = Scalar::zero();
        for i in 0..4 {
            let (a, b) = (&c[i], &c[(i + 1) % 4]);
            s += &a.x * &b.y - &a.y * &b.x;
        }
        // corners run clockwise in the (right, up) frame
        -s / crate::geom::int(2)
    }

    /// Closed containment.
    pub fn contains(&self, p: &Point) -> bool {
        let c = &self.corners;
        (0..4).all(|i| {
            let (a, b) = (&c[i], &c[(i + 1) % 4]);
            a == b || crate::geom::orient_sign(a, b, p) <= 0
        })
    }
}

impl RtdCell {
    pub fn key(&self) -> CellKey {
        (self.ceiling, self.floor, self.left, self.right)
    }

    /// Half-open membership `begin ≤ θ < end`.
    pub fn contains(&self, theta: &Direction) -> bool {
        self.begin <= *theta
            && match &self.end {
                AngleEnd::Dir(e) => theta < e,
                AngleEnd::FullTurn => true,
            }
    }

    pub fn closure_contains(&self, theta: &Direction) -> bool {
        match &self.end {
            AngleEnd::Dir(e) => self.begin <= *theta && theta <= e,
            AngleEnd::FullTurn => self.begin <= *theta || *theta == Direction::positive_x(),
        }
    }

    fn check_theta(&self, theta: f64, eps: f64) -> Result<f64> {
        let (a, b) = self.theta;
        let t = if theta + eps < a { theta + TAU } else { theta };
        if t < a - eps || t > b + eps {
            return Err(Error::AngleOutsideCell);
        }
        Ok(t.clamp(a, b))
    }

    pub fn side_length(&self, right: bool, theta: f64) -> f64 {
        self.sides[right as usize].length(theta)
    }

    /// Ordered local abscissas of the top corners at θ.
    pub fn x_range(&self, theta: f64) -> (f64, f64) {
        let l = self.profile.local_x(self.sides[0].top(theta));
        let r = self.profile.local_x(self.sides[1].top(theta));
        if l <= r {
            (l, r)
        } else {
            (r, l)
        }
    }

    /// Opening at local abscissa `x` of the ceiling.
    pub fn opening(&self, theta: f64, x: f64) -> Result<f64> {
        let eps = crate::eps();
        let theta = self.check_theta(theta, eps)?;
        let (lo, hi) = self.x_range(theta);
        let tol = eps * (1.0 + lo.abs().max(hi.abs()));
        if x < lo - tol || x > hi + tol {
            return Err(Error::OutOfDomain);
        }
        Ok(self.profile.opening(theta, x))
    }

    /// Abscissa where the opening equals `f`, restricted to the cross-section.
    pub fn opening_inverse(&self, theta: f64, f: f64, eps: f64) -> Result<Inverse> {
        let theta = self.check_theta(theta, eps)?;
        let inv = self.profile.inverse(theta, f, eps);
        if let Inverse::At(x) = inv {
            let (lo, hi) = self.x_range(theta);
            let tol = eps * (1.0 + lo.abs().max(hi.abs()));
            if x < lo - tol || x > hi + tol {
                return Ok(Inverse::NoX);
            }
            return Ok(Inverse::At(x.clamp(lo, hi)));
        }
        Ok(inv)
    }

    pub fn max_opening(&self) -> f64 {
        self.openings.left_max.max(self.openings.right_max)
    }

    pub fn min_opening(&self) -> f64 {
        self.openings.left_min.min(self.openings.right_min)
    }

    /// Angle at which the ceiling's outward normal points along `u`.
    pub fn ceiling_normal_angle(&self) -> f64 {
        self.sides[0].ceiling.normal_angle()
    }
}

#[derive(Clone, Debug)]
pub struct Rtd {
    pub workspace: Workspace,
    pub visibility_pairs: usize,
    pub cells: Vec<RtdCell>,
    pub events: Vec<SweepEvent>,
}

fn side_extrema(ch: &Chord, (a, b): (f64, f64)) -> (f64, f64) {
    let (_, min) = ch.minimize(a, b);
    let max = ch.length(a).max(ch.length(b));
    (min, max)
}

/// Chord through `v` between the support lines of `ceiling` and `floor`.
pub fn chord_for(ws: &Workspace, v: VertexId, ceiling: EdgeId, floor: EdgeId) -> Chord {
    let (ts, tt) = ws.edge_points(ceiling);
    let (bs, bt) = ws.edge_points(floor);
    let on = |e: EdgeId| {
        let (s, t) = ws.edge_points(e);
        crate::geom::orient_sign(s, t, ws.vertex(v)) == 0
    };
    Chord {
        v: ws.vertex_f64(v),
        ceiling: Line::from_edge(ts, tt),
        floor: Line::from_edge(bs, bt),
        on_ceiling: on(ceiling),
        on_floor: on(floor),
    }
}

pub(crate) fn make_cell(ws: &Workspace, id: CellId, key: CellKey, begin: Direction, end: AngleEnd) -> RtdCell {
    let (ceiling, floor, left, right) = key;
    let (ts, tt) = ws.edge_points(ceiling);
    let (bs, bt) = ws.edge_points(floor);
    let chord = |v: VertexId| chord_for(ws, v, ceiling, floor);
    let sides = [chord(left), chord(right)];
    let theta = (begin.angle(), end.angle());
    let (left_min, left_max) = side_extrema(&sides[0], theta);
    let (right_min, right_max) = side_extrema(&sides[1], theta);
    let parallel = tt.sub(ts).cross(&bt.sub(bs)).is_zero();
    RtdCell {
        id,
        ceiling,
        floor,
        left,
        right,
        begin,
        end,
        theta,
        parallel,
        sides,
        profile: OpeningProfile::from_lines((ts, tt), (bs, bt)),
        openings: SideOpenings { left_min, left_max, right_min, right_max },
    }
}

/// Runs the radial sweep. Cells of zero angular width (created and destroyed
/// within one event direction) are dropped.
pub fn build_rtd(ws: &Workspace, vg: &VisibilityGraph) -> Result<Rtd> {
    let out = sweep::sweep(ws, vg)?;
    let mut cells = Vec::new();
    for rec in out.records {
        let end = match rec.end {
            Some(d) if d == rec.begin => continue,
            Some(d) => AngleEnd::Dir(d),
            None => AngleEnd::FullTurn,
        };
        let id = cells.len();
        cells.push(make_cell(ws, id, rec.key, rec.begin, end));
    }
    Ok(Rtd { workspace: ws.clone(), visibility_pairs: vg.edge_count(), cells, events: out.events })
}

impl Rtd {
    pub fn build(ws: &Workspace) -> Result<Rtd> {
        build_rtd(ws, &build_visibility(ws))
    }

    /// Reassembles a decomposition from stored cell keys and angle ranges.
    pub fn from_parts(
        ws: Workspace,
        visibility_pairs: usize,
        ranges: Vec<(CellKey, Direction, AngleEnd)>,
        events: Vec<SweepEvent>,
    ) -> Result<Rtd> {
        let n = ws.n();
        let mut cells = Vec::with_capacity(ranges.len());
        for (id, (key, begin, end)) in ranges.into_iter().enumerate() {
            let (c, f, l, r) = key;
            if c >= n || f >= n || l >= n || r >= n {
                return Err(Error::InvalidPolygon(format!("cell {id} refers to a missing vertex or edge")));
            }
            cells.push(make_cell(&ws, id, key, begin, end));
        }
        Ok(Rtd { workspace: ws, visibility_pairs, cells, events })
    }

    pub fn cell(&self, id: CellId) -> &RtdCell {
        &self.cells[id]
    }

    /// Exact cross-section of a cell at a direction in its closure.
    pub fn cross_section(&self, id: CellId, theta: &Direction) -> Result<Trapezoid> {
        let c = &self.cells[id];
        if !c.closure_contains(theta) {
            return Err(Error::AngleOutsideCell);
        }
        let ws = &self.workspace;
        let u = theta.vec();
        let hit = |v: VertexId, e: EdgeId| -> Result<Point> {
            let (s, t) = ws.edge_points(e);
            let p = ws.vertex(v);
            let d = t.sub(s);
            let den = d.cross(u);
            let num = d.cross(&s.sub(p));
            if num.is_zero() {
                return Ok(p.clone());
            }
            if den.is_zero() {
                return Err(Error::Degenerate(format!("wall of vertex {v} parallel to edge {e}")));
            }
            Ok(p.add(&u.scale(&(num / den))))
        };
        Ok(Trapezoid {
            corners: [
                hit(c.left, c.ceiling)?,
                hit(c.right, c.ceiling)?,
                hit(c.right, c.floor)?,
                hit(c.left, c.floor)?,
            ],
            direction: theta.clone(),
        })
    }

    /// Cells whose half-open interval contains θ.
    pub fn cells_at(&self, theta: &Direction) -> impl Iterator<Item = &RtdCell> + '_ {
        let theta = theta.clone();
        self.cells.iter().filter(move |c| c.contains(&theta))
    }
}

#[cfg(test)]
mod tests;
