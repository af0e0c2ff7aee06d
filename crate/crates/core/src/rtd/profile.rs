//! Opening algebra. A chord of a cell at angle θ runs from the ceiling down to
//! the floor along `-u`, `u = (cos θ, sin θ)`; its length is the opening.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_traits::Zero;

use crate::geom::{int, ratio, to_f64, Point, Scalar};

/// Support line of a one-sided edge, numeric face. `n` is the outward unit
/// normal; interior points satisfy `n·p < c`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Line {
    pub p: [f64; 2],
    pub d: [f64; 2],
    pub n: [f64; 2],
    pub c: f64,
}

impl Line {
    /// Line of the directed edge `s → t` whose interior is on the left.
    pub fn from_edge(s: &Point, t: &Point) -> Line {
        let (p, q) = (s.to_f64(), t.to_f64());
        let len = (q[0] - p[0]).hypot(q[1] - p[1]);
        let d = [(q[0] - p[0]) / len, (q[1] - p[1]) / len];
        let n = [d[1], -d[0]];
        Line { p, d, n, c: n[0] * p[0] + n[1] * p[1] }
    }

    pub fn depth(&self, q: [f64; 2]) -> f64 {
        self.c - (self.n[0] * q[0] + self.n[1] * q[1])
    }

    /// Angle of the outward normal.
    pub fn normal_angle(&self) -> f64 {
        self.n[1].atan2(self.n[0])
    }
}

pub fn unit(theta: f64) -> [f64; 2] {
    let (s, c) = theta.sin_cos();
    [c, s]
}

fn dot(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

/// The θ-oriented chord through a fixed vertex between two support lines.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Chord {
    pub v: [f64; 2],
    pub ceiling: Line,
    pub floor: Line,
    pub on_ceiling: bool,
    pub on_floor: bool,
}

impl Chord {
    /// Distance from the vertex up to the ceiling line.
    pub fn up(&self, theta: f64) -> f64 {
        if self.on_ceiling {
            return 0.0;
        }
        self.ceiling.depth(self.v) / dot(self.ceiling.n, unit(theta))
    }

    /// Distance from the vertex down to the floor line.
    pub fn down(&self, theta: f64) -> f64 {
        if self.on_floor {
            return 0.0;
        }
        -self.floor.depth(self.v) / dot(self.floor.n, unit(theta))
    }

    pub fn length(&self, theta: f64) -> f64 {
        self.up(theta) + self.down(theta)
    }

    pub fn slope(&self, theta: f64) -> f64 {
        let du = [-theta.sin(), theta.cos()];
        let mut g = 0.0;
        if !self.on_ceiling {
            let k = dot(self.ceiling.n, unit(theta));
            g -= self.ceiling.depth(self.v) * dot(self.ceiling.n, du) / (k * k);
        }
        if !self.on_floor {
            let k = dot(self.floor.n, unit(theta));
            g += self.floor.depth(self.v) * dot(self.floor.n, du) / (k * k);
        }
        g
    }

    pub fn top(&self, theta: f64) -> [f64; 2] {
        let (u, t) = (unit(theta), self.up(theta));
        [self.v[0] + t * u[0], self.v[1] + t * u[1]]
    }

    pub fn bottom(&self, theta: f64) -> [f64; 2] {
        let (u, t) = (unit(theta), self.down(theta));
        [self.v[0] - t * u[0], self.v[1] - t * u[1]]
    }

    /// Minimum of the (convex) length over `[lo, hi]`: `(argmin, min)`.
    pub fn minimize(&self, lo: f64, hi: f64) -> (f64, f64) {
        if !(self.slope(lo) < 0.0) {
            return (lo, self.length(lo));
        }
        if !(self.slope(hi) > 0.0) {
            return (hi, self.length(hi));
        }
        let (mut a, mut b) = (lo, hi);
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            if self.slope(m) < 0.0 {
                a = m;
            } else {
                b = m;
            }
        }
        let m = 0.5 * (a + b);
        (m, self.length(m))
    }

    /// Open angle interval around `anchor` on which the chord meets both
    /// support lines in front of the vertex (the length is finite there).
    pub fn domain(&self, anchor: f64) -> (f64, f64) {
        let near = |c: f64| c + TAU * ((anchor - c) / TAU).round();
        let (mut lo, mut hi) = (anchor - PI, anchor + PI);
        if !self.on_ceiling {
            let c = near(self.ceiling.n[1].atan2(self.ceiling.n[0]));
            lo = lo.max(c - FRAC_PI_2);
            hi = hi.min(c + FRAC_PI_2);
        }
        if !self.on_floor {
            let c = near((-self.floor.n[1]).atan2(-self.floor.n[0]));
            lo = lo.max(c - FRAC_PI_2);
            hi = hi.min(c + FRAC_PI_2);
        }
        (lo, hi)
    }

    /// Roots of `length = d` on the falling and rising branches of the
    /// domain around `anchor`.
    pub fn roots(&self, d: f64, anchor: f64) -> [Option<f64>; 2] {
        let (lo, hi) = self.domain(anchor);
        let margin = 1e-12 * (1.0 + anchor.abs());
        let (lo, hi) = (lo + margin, hi - margin);
        if lo >= hi {
            return [None, None];
        }
        let (m, min) = self.minimize(lo, hi);
        if !(min <= d) {
            return [None, None];
        }
        [self.solve(lo, m, d, false), self.solve(m, hi, d, true)]
    }

    /// Solves `length = d` on `[lo, hi]` where the length is monotone
    /// (increasing if `rising`). `None` when `d` is not bracketed.
    pub fn solve(&self, lo: f64, hi: f64, d: f64, rising: bool) -> Option<f64> {
        let sgn = if rising { 1.0 } else { -1.0 };
        let g = |t: f64| sgn * (self.length(t) - d);
        let (glo, ghi) = (g(lo), g(hi));
        if glo > 0.0 || ghi < 0.0 {
            return None;
        }
        let (mut a, mut b) = (lo, hi);
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            if g(m) < 0.0 {
                a = m;
            } else {
                b = m;
            }
        }
        Some(0.5 * (a + b))
    }
}

/// Slope–intercept form of a cell's support lines in a local frame chosen so
/// that neither line is vertical there (the frame is a rotation by `φ`).
#[derive(Clone, Debug, PartialEq)]
pub struct OpeningProfile {
    /// rotation (cos φ, sin φ), exact
    pub frame: (Scalar, Scalar),
    pub m_t: Scalar,
    pub b_t: Scalar,
    pub m_b: Scalar,
    pub b_b: Scalar,
    /// the ceiling / floor is vertical in world coordinates
    pub vertical_t: bool,
    pub vertical_b: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Inverse {
    At(f64),
    AllX,
    NoX,
}

fn to_local(frame: &(Scalar, Scalar), p: &Point) -> (Scalar, Scalar) {
    let (c, s) = frame;
    (c * &p.x + s * &p.y, c * &p.y - s * &p.x)
}

impl OpeningProfile {
    pub fn from_lines(t: (&Point, &Point), b: (&Point, &Point)) -> OpeningProfile {
        let frames = [(int(1), int(0)), (int(0), int(1)), (ratio(3, 5), ratio(4, 5))];
        let vertical = |a: &Point, z: &Point| a.x == z.x;
        let frame = frames
            .into_iter()
            .find(|f| {
                let dt = to_local(f, t.1).0 - to_local(f, t.0).0;
                let db = to_local(f, b.1).0 - to_local(f, b.0).0;
                !dt.is_zero() && !db.is_zero()
            })
            .expect("two directions cannot be vertical in three distinct frames");
        let mb = |a: &Point, z: &Point| {
            let (ax, ay) = to_local(&frame, a);
            let (zx, zy) = to_local(&frame, z);
            let m = (&zy - &ay) / (&zx - &ax);
            let b = &ay - &m * &ax;
            (m, b)
        };
        let (m_t, b_t) = mb(t.0, t.1);
        let (m_b, b_b) = mb(b.0, b.1);
        OpeningProfile { frame, m_t, b_t, m_b, b_b, vertical_t: vertical(t.0, t.1), vertical_b: vertical(b.0, b.1) }
    }

    pub fn frame_angle(&self) -> f64 {
        to_f64(&self.frame.1).atan2(to_f64(&self.frame.0))
    }

    pub fn parallel(&self) -> bool {
        self.m_t == self.m_b
    }

    /// Local abscissa of a world point.
    pub fn local_x(&self, p: [f64; 2]) -> f64 {
        let (c, s) = (to_f64(&self.frame.0), to_f64(&self.frame.1));
        c * p[0] + s * p[1]
    }

    /// World coordinates of the ceiling point at local abscissa `x`.
    pub fn ceiling_point(&self, x: f64) -> [f64; 2] {
        let (c, s) = (to_f64(&self.frame.0), to_f64(&self.frame.1));
        let y = x * to_f64(&self.m_t) + to_f64(&self.b_t);
        [c * x - s * y, s * x + c * y]
    }

    /// `(x(m_t − m_b) + b_t − b_b) / (sin θ − m_b cos θ)` in the local frame.
    pub fn opening(&self, theta: f64, x: f64) -> f64 {
        let (s, c) = (theta - self.frame_angle()).sin_cos();
        let (mt, mb) = (to_f64(&self.m_t), to_f64(&self.m_b));
        (x * (mt - mb) + to_f64(&self.b_t) - to_f64(&self.b_b)) / (s - mb * c)
    }

    /// Unrestricted solution of `opening(θ, x) = f`.
    pub fn inverse(&self, theta: f64, f: f64, eps: f64) -> Inverse {
        let (s, c) = (theta - self.frame_angle()).sin_cos();
        let (mt, mb) = (to_f64(&self.m_t), to_f64(&self.m_b));
        let (bt, bb) = (to_f64(&self.b_t), to_f64(&self.b_b));
        if self.parallel() {
            let o = (bt - bb) / (s - mb * c);
            return if (o - f).abs() <= eps * f.max(1.0) { Inverse::AllX } else { Inverse::NoX };
        }
        Inverse::At((f * (s - mb * c) + bb - bt) / (mt - mb))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_6};

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    #[test]
    fn slab_openings() {
        // ceiling y = 1 traversed right to left (interior below), floor y = 0
        let pr = OpeningProfile::from_lines((&p(1, 1), &p(0, 1)), (&p(0, 0), &p(1, 0)));
        assert!((pr.opening(FRAC_PI_2, 0.3) - 1.0).abs() < 1e-12);
        assert!((pr.opening(FRAC_PI_6, 0.3) - 2.0).abs() < 1e-12);
        assert_eq!(pr.inverse(FRAC_PI_2, 1.0, 1e-9), Inverse::AllX);
        assert_eq!(pr.inverse(FRAC_PI_2, 0.5, 1e-9), Inverse::NoX);
    }

    #[test]
    fn slanted_floor() {
        let pr = OpeningProfile::from_lines((&p(1, 1), &p(-1, 1)), (&p(0, 0), &p(1, 1)));
        assert!((pr.opening(FRAC_PI_2, 0.0) - 1.0).abs() < 1e-12);
        match pr.inverse(FRAC_PI_2, 1.0, 1e-9) {
            Inverse::At(x) => assert!(x.abs() < 1e-12),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn vertical_edges_use_a_rotated_frame() {
        let pr = OpeningProfile::from_lines((&p(1, 0), &p(1, 1)), (&p(0, 1), &p(0, 0)));
        assert!(pr.vertical_t && pr.vertical_b);
        assert_ne!(pr.frame.0, int(1));
        // horizontal chord between x = 0 and x = 1 has length 1 at θ = 0
        let x = pr.local_x([1.0, 0.5]);
        assert!((pr.opening(0.0, x) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn chord_matches_profile() {
        let t = Line::from_edge(&p(4, 3), &p(-1, 2));
        let b = Line::from_edge(&p(0, 0), &p(3, -1));
        let ch = Chord { v: [1.0, 1.0], ceiling: t, floor: b, on_ceiling: false, on_floor: false };
        let pr = OpeningProfile::from_lines((&p(4, 3), &p(-1, 2)), (&p(0, 0), &p(3, -1)));
        for k in 1..20 {
            let th = 1.0 + 0.05 * k as f64;
            let x = pr.local_x(ch.top(th));
            assert!((pr.opening(th, x) - ch.length(th)).abs() < 1e-12);
            let h = 1e-6;
            let fd = (ch.length(th + h) - ch.length(th - h)) / (2.0 * h);
            assert!((fd - ch.slope(th)).abs() < 1e-6);
        }
    }
}
