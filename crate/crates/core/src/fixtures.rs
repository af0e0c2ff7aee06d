//! Reference workspaces used by tests, benchmarks and the example files.

use crate::geom::{ratio, Point, Workspace};

fn p(x: i64, y: i64) -> Point {
    Point::from_ints(x, y)
}

fn q(x: i64, y: i64, den: i64) -> Point {
    Point::new(ratio(x, den), ratio(y, den))
}

pub fn unit_square() -> Workspace {
    Workspace::new(vec![p(0, 0), p(1, 0), p(1, 1), p(0, 1)], vec![]).unwrap()
}

/// Unit square with a centered square hole of side 0.2.
pub fn square_with_hole() -> Workspace {
    let hole = vec![q(2, 2, 5), q(2, 3, 5), q(3, 3, 5), q(3, 2, 5)];
    Workspace::new(vec![p(0, 0), p(1, 0), p(1, 1), p(0, 1)], vec![hole]).unwrap()
}

/// Right triangle (0,0), (4,0), (0,3).
pub fn triangle() -> Workspace {
    Workspace::new(vec![p(0, 0), p(4, 0), p(0, 3)], vec![]).unwrap()
}

/// Regular `n`-gon of radius 1, coordinates rounded to 1e-9. The start angle
/// is offset by an irrational amount so that no two chords are parallel.
pub fn regular_polygon(n: usize) -> Workspace {
    let s = 1_000_000_000i64;
    let pts = (0..n)
        .map(|k| {
            let a = 0.1 + std::f64::consts::SQRT_2 * 1e-3 + std::f64::consts::TAU * k as f64 / n as f64;
            q((a.cos() * s as f64).round() as i64, (a.sin() * s as f64).round() as i64, s)
        })
        .collect();
    Workspace::new(pts, vec![]).unwrap()
}

/// Regular `n`-gon of radius 1 without the offset (many parallel chords).
pub fn symmetric_polygon(n: usize) -> Workspace {
    let s = 1_000_000_000i64;
    let pts = (0..n)
        .map(|k| {
            let a = std::f64::consts::TAU * k as f64 / n as f64;
            q((a.cos() * s as f64).round() as i64, (a.sin() * s as f64).round() as i64, s)
        })
        .collect();
    Workspace::new(pts, vec![]).unwrap()
}

/// Triangle-like workspace whose left side carries `n` reflex spike tips on
/// an arc bulging toward the far corner `u = (20, 0)`. Edge 0 runs from
/// `(0,-10)` to `u` (the floor `e2` near `u`), edge 1 from `u` to `(0,10)`
/// (the ceiling `e1`).
pub fn spiky_triangle(n: usize) -> Workspace {
    let mut pts = vec![p(0, -10), p(20, 0), p(0, 10)];
    // spikes from top to bottom; all coordinates in units of 1/1000
    let span = 14_000i64; // tips cover y in [-7, 7]
    let pitch = span / n as i64;
    let half = pitch * 3 / 10;
    for i in 0..n as i64 {
        let y = 7_000 - pitch / 2 - i * pitch;
        let yf = y as f64 / 1000.0;
        let x = ((4.0 - 0.05 * yf * yf) * 1000.0).round() as i64;
        pts.push(q(0, y + half, 1000));
        pts.push(q(x, y, 1000));
        pts.push(q(0, y - half, 1000));
    }
    Workspace::new(pts, vec![]).unwrap()
}

/// Index of the spiky triangle's edges: (e1 ceiling, e2 floor, corner u).
pub const SPIKY_E1: usize = 1;
pub const SPIKY_E2: usize = 0;
pub const SPIKY_U: usize = 1;

/// Three identical rooms below a straight corridor. Room `k` occupies
/// `x ∈ [c_k − 1.5, c_k + 1.5]`, `y ∈ [−3.2, −0.2]` with `c_k = 12k`, and
/// opens through a door `x ∈ [c_k − 0.4, c_k + 0.4]`. The corridor spans
/// `x ∈ [−10, 34]`, `y ∈ [0, 2]`.
pub fn three_rooms() -> Workspace {
    let mut pts = vec![q(-10, 0, 1)];
    for k in 0..3 {
        let c = 120 * k; // tenths
        for (x, y) in [(-4, 0), (-4, -2), (-15, -2), (-15, -32), (15, -32), (15, -2), (4, -2), (4, 0)] {
            pts.push(q(c + x, y, 10));
        }
    }
    pts.push(p(34, 0));
    pts.push(p(34, 2));
    pts.push(p(-10, 2));
    Workspace::new(pts, vec![]).unwrap()
}

/// Room translation of [`three_rooms`].
pub const ROOM_SHIFT: i64 = 12;
/// Vertex ids of room `k` in [`three_rooms`]: `1 + 8k .. 1 + 8k + 8`; the room
/// owns the 7 edges between them.
pub fn room_vertices(k: usize) -> std::ops::Range<usize> {
    1 + 8 * k..1 + 8 * k + 8
}

/// Id of the far corridor wall (y = 2) in [`three_rooms`].
pub const FAR_WALL: usize = 26;

/// A generic non-convex polygon with one hole, in the spirit of the
/// experiments' simple-polygon workspace.
pub fn simple_polygon() -> Workspace {
    let outer = vec![
        q(0, 0, 10),
        q(43, -7, 10),
        q(81, 4, 10),
        q(78, 37, 10),
        q(55, 31, 10),
        q(62, 66, 10),
        q(29, 71, 10),
        q(14, 48, 10),
        q(-6, 52, 10),
        q(3, 21, 10),
    ];
    let hole = vec![q(31, 19, 10), q(27, 33, 10), q(41, 41, 10), q(46, 22, 10)];
    Workspace::new(outer, vec![hole]).unwrap()
}

/// Axis-parallel comb: a 6×3 box with two notches from the top.
pub fn comb() -> Workspace {
    Workspace::new(
        vec![p(0, 0), p(6, 0), p(6, 3), p(5, 3), p(5, 1), p(4, 1), p(4, 3), p(2, 3), p(2, 1), p(1, 1), p(1, 3), p(0, 3)],
        vec![],
    )
    .unwrap()
}

/// Star-shaped polygon from `(angle, radius)` samples: angles in thousandths
/// of a turn, radii in 1/16 units. `None` if the samples do not form a valid
/// polygon.
pub fn star_polygon(samples: &[(u32, u32)]) -> Option<Workspace> {
    let mut s: Vec<(u32, u32)> = samples.to_vec();
    s.sort();
    s.dedup_by_key(|x| x.0);
    if s.len() < 3 {
        return None;
    }
    let pts = s
        .iter()
        .map(|&(a, r)| {
            let t = std::f64::consts::TAU * a as f64 / 1000.0;
            let r = r.max(1) as f64;
            q((r * t.cos() * 4.0).round() as i64, (r * t.sin() * 4.0).round() as i64, 64)
        })
        .collect();
    Workspace::new(pts, vec![]).ok()
}

pub fn named(name: &str) -> Option<Workspace> {
    Some(match name {
        "unit-square" => unit_square(),
        "square-hole" => square_with_hole(),
        "triangle" => triangle(),
        "three-rooms" => three_rooms(),
        "simple-polygon" => simple_polygon(),
        "comb" => comb(),
        "spiky-16" => spiky_triangle(16),
        "regular-16" => regular_polygon(16),
        _ => return None,
    })
}

