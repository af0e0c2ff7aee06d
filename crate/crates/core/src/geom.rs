//! Exact kernel: rational points, circularly ordered directions, workspaces
//! with holes, and the depth function `h` via ray casting.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

pub type Scalar = BigRational;
pub type VertexId = usize;
/// An edge is named by its source vertex: edge `v` runs from `v` to `next(v)`.
pub type EdgeId = usize;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact value of a finite double.
pub fn from_f64(x: f64) -> Scalar {
    BigRational::from_float(x).expect("finite float")
}

pub fn to_f64(s: &Scalar) -> f64 {
    s.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"p/q"`, integers and plain decimals (`"-0.15"`, `"2.5e-3"`).
pub fn parse_scalar(s: &str) -> Option<Scalar> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (ip, fp) = mant.split_once('.').unwrap_or((mant, ""));
    if ip.is_empty() && fp.is_empty() {
        return None;
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("0{ip}{fp}").parse().ok()?;
    let scale = exp - fp.len() as i32;
    let ten = BigInt::from(10);
    let mut v = BigRational::from_integer(digits);
    if scale >= 0 {
        v *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        v /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if neg { -v } else { v })
}

/// Canonical text form: `"p/q"`, or `"p"` for integers.
pub fn format_scalar(s: &Scalar) -> String {
    if s.denom().is_one() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Scalar,
    pub y: Scalar,
}

impl Point {
    pub fn new(x: Scalar, y: Scalar) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(int(x), int(y))
    }

    pub fn from_f64(x: f64, y: f64) -> Self {
        Point::new(from_f64(x), from_f64(y))
    }

    pub fn to_f64(&self) -> [f64; 2] {
        [to_f64(&self.x), to_f64(&self.y)]
    }

    pub fn sub(&self, o: &Point) -> Vector {
        Vector::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn add(&self, v: &Vector) -> Point {
        Point::new(&self.x + &v.x, &self.y + &v.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_scalar(&self.x), format_scalar(&self.y))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector {
    pub x: Scalar,
    pub y: Scalar,
}

impl Vector {
    pub fn new(x: Scalar, y: Scalar) -> Self {
        Vector { x, y }
    }

    pub fn dot(&self, o: &Vector) -> Scalar {
        &self.x * &o.x + &self.y * &o.y
    }

    pub fn cross(&self, o: &Vector) -> Scalar {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn scale(&self, k: &Scalar) -> Vector {
        Vector::new(&self.x * k, &self.y * k)
    }

    pub fn neg(&self) -> Vector {
        Vector::new(-&self.x, -&self.y)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn norm2(&self) -> Scalar {
        self.dot(self)
    }

    pub fn to_f64(&self) -> [f64; 2] {
        [to_f64(&self.x), to_f64(&self.y)]
    }
}

/// Nonzero direction, stored scaled so that `max(|dx|, |dy|) = 1`; equality is
/// "same ray" and the order is counterclockwise from the positive x-axis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Direction(Vector);

impl Direction {
    pub fn new(v: Vector) -> Option<Self> {
        if v.is_zero() {
            return None;
        }
        let m = if v.x.abs() >= v.y.abs() { v.x.abs() } else { v.y.abs() };
        Some(Direction(Vector::new(&v.x / &m, &v.y / &m)))
    }

    pub fn from_ints(dx: i64, dy: i64) -> Option<Self> {
        Direction::new(Vector::new(int(dx), int(dy)))
    }

    pub fn positive_x() -> Self {
        Direction(Vector::new(int(1), int(0)))
    }

    /// A rational direction within ~1e-12 of the angle `a`.
    pub fn approx(a: f64) -> Self {
        let (s, c) = a.sin_cos();
        let q = 1i64 << 40;
        Direction::new(Vector::new(
            ratio((c * q as f64).round() as i64, q),
            ratio((s * q as f64).round() as i64, q),
        ))
        .expect("unit vector rounds to nonzero")
    }

    pub fn vec(&self) -> &Vector {
        &self.0
    }

    pub fn reversed(&self) -> Direction {
        Direction(self.0.neg())
    }

    fn half(&self) -> u8 {
        let v = &self.0;
        if v.y.is_positive() || (v.y.is_zero() && v.x.is_positive()) {
            0
        } else {
            1
        }
    }

    /// Angle in `[0, 2π)`; numeric face only.
    pub fn angle(&self) -> f64 {
        let [x, y] = self.0.to_f64();
        let a = y.atan2(x);
        if a < 0.0 {
            (a + std::f64::consts::TAU).min(std::f64::consts::TAU.next_down())
        } else {
            a
        }
    }
}

impl Ord for Direction {
    fn cmp(&self, o: &Self) -> Ordering {
        self.half().cmp(&o.half()).then_with(|| {
            match self.0.cross(&o.0).cmp(&Scalar::zero()) {
                Ordering::Greater => Ordering::Less,
                Ordering::Less => Ordering::Greater,
                Ordering::Equal => Ordering::Equal,
            }
        })
    }
}

impl PartialOrd for Direction {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Compares `x` and `y` by counterclockwise angle measured from `a` (angle 0
/// at `a` itself, increasing toward 2π).
pub fn cmp_from(a: &Vector, x: &Vector, y: &Vector) -> Ordering {
    let half = |v: &Vector| {
        let c = a.cross(v);
        if c.is_positive() || (c.is_zero() && a.dot(v).is_positive()) {
            0
        } else {
            1
        }
    };
    half(x).cmp(&half(y)).then_with(|| match x.cross(y).cmp(&Scalar::zero()) {
        Ordering::Greater => Ordering::Less,
        Ordering::Less => Ordering::Greater,
        Ordering::Equal => Ordering::Equal,
    })
}

/// True when `d` lies strictly inside the counterclockwise sweep from `a` to `b`.
pub fn strictly_between_ccw(a: &Vector, d: &Vector, b: &Vector) -> bool {
    let at_a = a.cross(d).is_zero() && a.dot(d).is_positive();
    !at_a && cmp_from(a, d, b) == Ordering::Less
}

/// Numeric face of an angle: radians in `[0, 2π)` with the shared tolerance.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct ApproxAngle(pub f64);

impl ApproxAngle {
    pub fn new(a: f64) -> Self {
        ApproxAngle(a.rem_euclid(std::f64::consts::TAU))
    }

    pub fn unit(self) -> [f64; 2] {
        [self.0.cos(), self.0.sin()]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Left,
    Right,
    Collinear,
}

pub fn orient_sign(p: &Point, q: &Point, r: &Point) -> i32 {
    let c = q.sub(p).cross(&r.sub(p));
    if c.is_positive() {
        1
    } else if c.is_negative() {
        -1
    } else {
        0
    }
}

pub fn orientation(p: &Point, q: &Point, r: &Point) -> Orientation {
    match orient_sign(p, q, r) {
        1 => Orientation::Left,
        -1 => Orientation::Right,
        _ => Orientation::Collinear,
    }
}

/// Closed point-on-segment test.
pub fn on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    orient_sign(a, b, p) == 0
        && p.x >= a.x.clone().min(b.x.clone())
        && p.x <= a.x.clone().max(b.x.clone())
        && p.y >= a.y.clone().min(b.y.clone())
        && p.y <= a.y.clone().max(b.y.clone())
}

/// Closed segments `ab` and `cd` share at least one point.
pub fn segments_intersect(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let (o1, o2) = (orient_sign(a, b, c), orient_sign(a, b, d));
    let (o3, o4) = (orient_sign(c, d, a), orient_sign(c, d, b));
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    (o1 == 0 && on_segment(c, a, b))
        || (o2 == 0 && on_segment(d, a, b))
        || (o3 == 0 && on_segment(a, c, d))
        || (o4 == 0 && on_segment(b, c, d))
}

/// Open segments cross at a single interior point of both.
pub fn segments_cross_properly(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    orient_sign(a, b, c) * orient_sign(a, b, d) < 0 && orient_sign(c, d, a) * orient_sign(c, d, b) < 0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OneSidedEdge {
    pub id: EdgeId,
    pub source: Point,
    pub target: Point,
    pub interior: Side,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Location {
    Interior,
    Boundary,
    Exterior,
}

/// Polygon with holes. Rings are normalized so the interior is always on the
/// left of every directed edge (outer counterclockwise, holes clockwise).
#[derive(Clone, Debug)]
pub struct Workspace {
    pts: Vec<Point>,
    pts_f: Vec<[f64; 2]>,
    rings: Vec<(usize, usize)>,
    next: Vec<usize>,
    prev: Vec<usize>,
    general_position: bool,
}

fn signed_area2(ring: &[Point]) -> Scalar {
    let mut s = Scalar::zero();
    for i in 0..ring.len() {
        let (a, b) = (&ring[i], &ring[(i + 1) % ring.len()]);
        s += &a.x * &b.y - &a.y * &b.x;
    }
    s
}

fn ring_location(ring: &[Point], p: &Point) -> Location {
    let n = ring.len();
    let mut inside = false;
    for i in 0..n {
        let (a, b) = (&ring[i], &ring[(i + 1) % n]);
        if on_segment(p, a, b) {
            return Location::Boundary;
        }
        if (a.y > p.y) != (b.y > p.y) {
            // x-coordinate of the crossing compared with p.x, without division
            let lhs = (&p.x - &a.x) * (&b.y - &a.y);
            let rhs = (&b.x - &a.x) * (&p.y - &a.y);
            let right_of = if b.y > a.y { lhs < rhs } else { lhs > rhs };
            if right_of {
                inside = !inside;
            }
        }
    }
    if inside {
        Location::Interior
    } else {
        Location::Exterior
    }
}

impl Workspace {
    pub fn new(outer: Vec<Point>, holes: Vec<Vec<Point>>) -> Result<Self> {
        let mut rings_in = Vec::with_capacity(holes.len() + 1);
        rings_in.push(outer);
        rings_in.extend(holes);
        let mut pts = Vec::new();
        let mut rings = Vec::new();
        for (k, mut ring) in rings_in.into_iter().enumerate() {
            let what = if k == 0 { "outer ring".to_string() } else { format!("hole {}", k - 1) };
            if ring.len() < 3 {
                return Err(Error::InvalidPolygon(format!("{what} has fewer than 3 vertices")));
            }
            for i in 0..ring.len() {
                if ring[i] == ring[(i + 1) % ring.len()] {
                    return Err(Error::InvalidPolygon(format!("{what} repeats vertex {}", ring[i])));
                }
            }
            let a = signed_area2(&ring);
            if a.is_zero() {
                return Err(Error::InvalidPolygon(format!("{what} has zero area")));
            }
            if (k == 0) != a.is_positive() {
                ring.reverse();
            }
            let start = pts.len();
            pts.extend(ring);
            rings.push((start, pts.len()));
        }
        let n = pts.len();
        let mut next = vec![0; n];
        let mut prev = vec![0; n];
        for &(s, e) in &rings {
            for v in s..e {
                next[v] = if v + 1 == e { s } else { v + 1 };
                prev[v] = if v == s { e - 1 } else { v - 1 };
            }
        }
        let pts_f = pts.iter().map(Point::to_f64).collect();
        let mut ws = Workspace { pts, pts_f, rings, next, prev, general_position: true };
        ws.validate()?;
        ws.general_position = ws.compute_general_position();
        Ok(ws)
    }

    fn validate(&self) -> Result<()> {
        let n = self.n();
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (&self.pts[i], &self.pts[self.next[i]]);
                let (c, d) = (&self.pts[j], &self.pts[self.next[j]]);
                let adjacent = self.next[i] == j || self.next[j] == i;
                if adjacent {
                    // shared vertex; the edges must not fold back onto each other
                    let (shared, x, y) = if self.next[i] == j { (b, a, d) } else { (a, b, c) };
                    let (u, w) = (x.sub(shared), y.sub(shared));
                    if u.cross(&w).is_zero() && u.dot(&w).is_positive() {
                        return Err(Error::InvalidPolygon(format!("overlapping edges at {shared}")));
                    }
                    if self.next[i] == j && self.next[j] == i {
                        continue;
                    }
                    // triangles: both pairs adjacent, nothing else to test
                    continue;
                }
                if segments_intersect(a, b, c, d) {
                    return Err(Error::InvalidPolygon(format!(
                        "edges {a}-{b} and {c}-{d} intersect"
                    )));
                }
            }
        }
        let outer = self.ring(0);
        for h in 1..self.rings.len() {
            let ring = self.ring(h);
            if ring_location(outer, &ring[0]) != Location::Interior {
                return Err(Error::InvalidPolygon(format!("hole {} is not inside the outer ring", h - 1)));
            }
            for g in 1..self.rings.len() {
                if g != h && ring_location(self.ring(g), &ring[0]) != Location::Exterior {
                    return Err(Error::InvalidPolygon(format!("hole {} lies inside hole {}", h - 1, g - 1)));
                }
            }
        }
        Ok(())
    }

    fn compute_general_position(&self) -> bool {
        let n = self.n();
        for i in 0..n {
            let di = self.pts[self.next[i]].sub(&self.pts[i]);
            for j in i + 1..n {
                let dj = self.pts[self.next[j]].sub(&self.pts[j]);
                if di.cross(&dj).is_zero() {
                    return false;
                }
                for k in j + 1..n {
                    if orient_sign(&self.pts[i], &self.pts[j], &self.pts[k]) == 0 {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn n(&self) -> usize {
        self.pts.len()
    }

    pub fn vertex(&self, v: VertexId) -> &Point {
        &self.pts[v]
    }

    pub fn vertex_f64(&self, v: VertexId) -> [f64; 2] {
        self.pts_f[v]
    }

    pub fn vertices(&self) -> &[Point] {
        &self.pts
    }

    pub fn next(&self, v: VertexId) -> VertexId {
        self.next[v]
    }

    pub fn prev(&self, v: VertexId) -> VertexId {
        self.prev[v]
    }

    pub fn ring_count(&self) -> usize {
        self.rings.len()
    }

    pub fn ring(&self, k: usize) -> &[Point] {
        let (s, e) = self.rings[k];
        &self.pts[s..e]
    }

    pub fn ring_of(&self, v: VertexId) -> usize {
        self.rings.iter().position(|&(s, e)| s <= v && v < e).expect("vertex id in range")
    }

    pub fn outer(&self) -> &[Point] {
        self.ring(0)
    }

    pub fn holes(&self) -> Vec<&[Point]> {
        (1..self.rings.len()).map(|k| self.ring(k)).collect()
    }

    pub fn general_position(&self) -> bool {
        self.general_position
    }

    pub fn edge_count(&self) -> usize {
        self.pts.len()
    }

    pub fn edge_points(&self, e: EdgeId) -> (&Point, &Point) {
        (&self.pts[e], &self.pts[self.next[e]])
    }

    pub fn edge(&self, e: EdgeId) -> OneSidedEdge {
        let (s, t) = self.edge_points(e);
        OneSidedEdge { id: e, source: s.clone(), target: t.clone(), interior: Side::Left }
    }

    pub fn is_edge_endpoint(&self, v: VertexId, e: EdgeId) -> bool {
        v == e || v == self.next[e]
    }

    /// Interior angle at `v` exceeds π.
    pub fn is_reflex(&self, v: VertexId) -> bool {
        orient_sign(&self.pts[self.prev[v]], &self.pts[v], &self.pts[self.next[v]]) < 0
    }

    /// `d` points strictly into the interior wedge at vertex `v`.
    pub fn into_interior(&self, v: VertexId, d: &Vector) -> bool {
        let p = &self.pts[v];
        let out = self.pts[self.next[v]].sub(p);
        let inn = self.pts[self.prev[v]].sub(p);
        strictly_between_ccw(&out, d, &inn)
    }

    pub fn area(&self) -> Scalar {
        let mut s = Scalar::zero();
        for k in 0..self.rings.len() {
            s += signed_area2(self.ring(k));
        }
        s / int(2)
    }

    pub fn locate(&self, p: &Point) -> Location {
        point_in_workspace(self, p)
    }
}

pub fn point_in_workspace(ws: &Workspace, p: &Point) -> Location {
    let mut loc = ring_location(ws.outer(), p);
    if loc != Location::Interior {
        return loc;
    }
    for k in 1..ws.ring_count() {
        match ring_location(ws.ring(k), p) {
            Location::Exterior => {}
            Location::Boundary => return Location::Boundary,
            Location::Interior => loc = Location::Exterior,
        }
    }
    loc
}

/// First boundary hit of a ray. `t` is the ray parameter, so the hit point is
/// `p + t·dir` and the distance is `t·|dir|`.
#[derive(Clone, Debug, PartialEq)]
pub struct RayHit {
    pub t: Scalar,
    pub point: Point,
    pub edge: EdgeId,
    pub squared_distance: Scalar,
}

impl RayHit {
    pub fn distance(&self) -> f64 {
        to_f64(&self.squared_distance).sqrt()
    }
}

/// Ground-truth depth: distance from `p` along `dir` to the first point where
/// the ray leaves the workspace. A ray that merely grazes a vertex continues;
/// a ray that runs into a vertex stops there and reports the incident edge
/// met by the ray rotated infinitesimally counterclockwise.
pub fn ray_cast(ws: &Workspace, p: &Point, dir: &Vector) -> Result<RayHit> {
    if dir.is_zero() {
        return Err(Error::InvalidPolygon("zero ray direction".into()));
    }
    if point_in_workspace(ws, p) == Location::Exterior {
        return Err(Error::PointOutsideWorkspace);
    }
    let n = ws.n();
    let zero = Scalar::zero();
    let mk = |t: Scalar, edge: EdgeId| {
        let point = p.add(&dir.scale(&t));
        let squared_distance = &t * &t * dir.norm2();
        RayHit { t, point, edge, squared_distance }
    };
    // a boundary start that points outward is a zero-length hit
    for v in 0..n {
        let q = ws.vertex(v);
        if q == p {
            if !ws.into_interior(v, dir) {
                let out = ws.vertex(ws.next(v)).sub(q);
                let e = if out.cross(dir).is_negative() { v } else { ws.prev(v) };
                return Ok(mk(zero, e));
            }
        } else if on_segment(p, q, ws.vertex(ws.next(v))) && !ws.vertex(ws.next(v)).sub(q).cross(dir).is_positive() {
            return Ok(mk(zero, v));
        }
    }
    let side = |q: &Point| -> (i32, Scalar) {
        let r = q.sub(p);
        let c = dir.cross(&r);
        let t = r.dot(dir) / dir.norm2();
        (if c.is_positive() { 1 } else if c.is_negative() { -1 } else { 0 }, t)
    };
    let mut best: Option<(Scalar, EdgeId)> = None;
    let offer = |t: Scalar, e: EdgeId, best: &mut Option<(Scalar, EdgeId)>| {
        if best.as_ref().is_none_or(|(bt, _)| t < *bt) {
            *best = Some((t, e));
        }
    };
    for e in 0..n {
        let (s, t) = ws.edge_points(e);
        if s == p || t == p {
            continue;
        }
        let ((ss, _), (st, _)) = (side(s), side(t));
        if ss * st < 0 {
            let d = t.sub(s);
            if !d.cross(dir).is_negative() {
                continue; // entering crossing
            }
            let tt = s.sub(p).cross(&d) / dir.cross(&d);
            if tt.is_positive() {
                offer(tt, e, &mut best);
            }
        }
    }
    for v in 0..n {
        let q = ws.vertex(v);
        if q == p {
            continue;
        }
        let (sv, tv) = side(q);
        if sv != 0 || !tv.is_positive() || ws.into_interior(v, dir) {
            continue;
        }
        // the ray runs into v; does it arrive from the interior?
        if !ws.into_interior(v, &dir.neg()) && !on_incident_collinear(ws, v, dir) {
            continue;
        }
        let a = ws.vertex(ws.prev(v));
        let b = ws.vertex(ws.next(v));
        let (sa, _) = side(a);
        let (sb, _) = side(b);
        let e = match (sa > 0, sb > 0) {
            (true, false) => ws.prev(v),
            (false, true) => v,
            _ => {
                if sb == 0 { v } else { ws.prev(v) }
            }
        };
        offer(tv, e, &mut best);
    }
    match best {
        Some((t, e)) => Ok(mk(t, e)),
        None => Err(Error::Degenerate("ray escaped the workspace".into())),
    }
}

fn on_incident_collinear(ws: &Workspace, v: VertexId, dir: &Vector) -> bool {
    // ray arriving along an incident edge (sliding on the boundary)
    let q = ws.vertex(v);
    [ws.prev(v), ws.next(v)].iter().any(|&w| {
        let r = ws.vertex(w).sub(q);
        r.cross(dir).is_zero() && r.dot(dir).is_negative()
    })
}

/// Fast floating-point depth for dense sampling; measure-zero vertex cases
/// are not treated specially. `None` if `p` escapes (exterior start).
pub fn ray_cast_f64(ws: &Workspace, p: [f64; 2], theta: f64) -> Option<f64> {
    let (s, c) = theta.sin_cos();
    let mut best = f64::INFINITY;
    for e in 0..ws.n() {
        let a = ws.pts_f[e];
        let b = ws.pts_f[ws.next[e]];
        let d = [b[0] - a[0], b[1] - a[1]];
        let den = c * d[1] - s * d[0];
        if den <= 0.0 {
            continue; // parallel or entering
        }
        let w = [a[0] - p[0], a[1] - p[1]];
        let t = (w[0] * d[1] - w[1] * d[0]) / den;
        let lam = (w[0] * s - w[1] * c) / den;
        if t >= 0.0 && (0.0..=1.0).contains(&lam) && t < best {
            best = t;
        }
    }
    best.is_finite().then_some(best)
}

/// Floating-point interior test (crossing parity over all rings).
pub fn inside_f64(ws: &Workspace, p: [f64; 2]) -> bool {
    let mut inside = false;
    for e in 0..ws.n() {
        let a = ws.pts_f[e];
        let b = ws.pts_f[ws.next[e]];
        if (a[1] > p[1]) != (b[1] > p[1]) {
            let x = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1]);
            if x > p[0] {
                inside = !inside;
            }
        }
    }
    inside
}

/// Squared diameter (maximum squared vertex distance).
pub fn diameter(ws: &Workspace) -> Scalar {
    let mut best = Scalar::zero();
    for i in 0..ws.n() {
        for j in i + 1..ws.n() {
            let d = ws.vertex(j).sub(ws.vertex(i)).norm2();
            if d > best {
                best = d;
            }
        }
    }
    best
}
