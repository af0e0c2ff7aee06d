//! Curve algebra for query answers: conchoids of Nicomedes (single-reading
//! region boundaries), glissette ellipses (antipodal loci), and polyline
//! flattening.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::rtd::Line;
use crate::{Error, Result};

/// Samples `f` on `[a, b]` so that no chord strays more than `deviation`
/// from the curve (checked at chord midpoints and quarter points).
pub fn flatten<F: Fn(f64) -> [f64; 2]>(f: F, a: f64, b: f64, deviation: f64) -> Vec<[f64; 2]> {
    let mut out = vec![f(a)];
    if b > a {
        let k = 8;
        for i in 0..k {
            let (s, t) = (a + (b - a) * i as f64 / k as f64, a + (b - a) * (i + 1) as f64 / k as f64);
            refine(&f, s, t, f(s), f(t), deviation, 0, &mut out);
        }
    }
    out
}

fn refine<F: Fn(f64) -> [f64; 2]>(f: &F, s: f64, t: f64, ps: [f64; 2], pt: [f64; 2], dev: f64, depth: u32, out: &mut Vec<[f64; 2]>) {
    let m = 0.5 * (s + t);
    let pm = f(m);
    let far = [0.25, 0.5, 0.75].iter().any(|&w| {
        let q = if w == 0.5 { pm } else { f(s + (t - s) * w) };
        seg_dist(q, ps, pt) > dev
    });
    if far && depth < 24 {
        refine(f, s, m, ps, pm, dev, depth + 1, out);
        refine(f, m, t, pm, pt, dev, depth + 1, out);
    } else {
        out.push(pt);
    }
}

pub fn seg_dist(q: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let d = [b[0] - a[0], b[1] - a[1]];
    let l2 = d[0] * d[0] + d[1] * d[1];
    let t = if l2 > 0.0 { (((q[0] - a[0]) * d[0] + (q[1] - a[1]) * d[1]) / l2).clamp(0.0, 1.0) } else { 0.0 };
    (q[0] - a[0] - t * d[0]).hypot(q[1] - a[1] - t * d[1])
}

/// Dense bivariate polynomial, `c[i][j]` the coefficient of `x^i y^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly2 {
    pub c: Vec<Vec<f64>>,
}

impl Poly2 {
    fn linear(k: f64, kx: f64, ky: f64) -> Poly2 {
        Poly2 { c: vec![vec![k, ky], vec![kx, 0.0]] }
    }

    pub fn degree(&self) -> usize {
        let mut deg = 0;
        for (i, row) in self.c.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if *v != 0.0 {
                    deg = deg.max(i + j);
                }
            }
        }
        deg
    }

    fn mul(&self, o: &Poly2) -> Poly2 {
        let n = self.c.len() + o.c.len() - 1;
        let m = self.c[0].len() + o.c[0].len() - 1;
        let mut c = vec![vec![0.0; m]; n];
        for (i, r) in self.c.iter().enumerate() {
            for (j, a) in r.iter().enumerate() {
                for (k, s) in o.c.iter().enumerate() {
                    for (l, b) in s.iter().enumerate() {
                        c[i + k][j + l] += a * b;
                    }
                }
            }
        }
        Poly2 { c }
    }

    fn add(&self, o: &Poly2, w: f64) -> Poly2 {
        let n = self.c.len().max(o.c.len());
        let m = self.c[0].len().max(o.c[0].len());
        let mut c = vec![vec![0.0; m]; n];
        for (i, r) in self.c.iter().enumerate() {
            for (j, a) in r.iter().enumerate() {
                c[i][j] += a;
            }
        }
        for (i, r) in o.c.iter().enumerate() {
            for (j, a) in r.iter().enumerate() {
                c[i][j] += w * a;
            }
        }
        Poly2 { c }
    }

    pub fn eval(&self, p: [f64; 2]) -> f64 {
        let mut s = 0.0;
        let mut xi = 1.0;
        for row in &self.c {
            let mut yj = 1.0;
            for v in row {
                s += v * xi * yj;
                yj *= p[1];
            }
            xi *= p[0];
        }
        s
    }
}

/// Implicit quartic of the conchoid with pole `q`, directrix `ℓ` and offset
/// `d`, written in a frame rotated by `frame` where `ℓ` is `y = m x + b`:
/// `(m(x−x₀) − (y−y₀) ± a√(1+m²))² ((x−x₀)² + (y−y₀)²) = d² (m(x−x₀) − (y−y₀))²`
/// with `+` when `ℓ` is above `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConchoidImplicit {
    pub pole: [f64; 2],
    /// rotation of the local frame
    pub frame: f64,
    pub m: f64,
    /// distance from the pole to the directrix
    pub a: f64,
    pub plus: bool,
    pub d: f64,
    /// the quartic in world coordinates, divided by `1 + m²`
    pub poly: Poly2,
}

impl ConchoidImplicit {
    fn local(&self, p: [f64; 2]) -> (f64, f64) {
        let (s, c) = self.frame.sin_cos();
        let (x, y) = (p[0] - self.pole[0], p[1] - self.pole[1]);
        (c * x + s * y, c * y - s * x)
    }

    /// Left side minus right side of the displayed equation, over `1 + m²`.
    pub fn residual(&self, p: [f64; 2]) -> f64 {
        let (x, y) = self.local(p);
        let k = self.m * x - y;
        let sg = if self.plus { 1.0 } else { -1.0 };
        let w = 1.0 + self.m * self.m;
        ((k + sg * self.a * w.sqrt()).powi(2) * (x * x + y * y) - self.d * self.d * k * k) / w
    }
}

pub fn conchoid_implicit(pole: [f64; 2], directrix: &Line, d: f64) -> Result<ConchoidImplicit> {
    let a = directrix.depth(pole);
    if a.abs() <= 1e-12 {
        return Err(Error::PoleOnDirectrix);
    }
    // keep the directrix away from vertical in the local frame
    let frame = if directrix.d[0].abs() >= 0.5 { 0.0 } else { FRAC_PI_2 };
    let (s, c) = frame.sin_cos();
    let dl = [c * directrix.d[0] + s * directrix.d[1], c * directrix.d[1] - s * directrix.d[0]];
    let m = dl[1] / dl[0];
    // the line through `directrix.p` in local coordinates relative to the pole
    let pl = [directrix.p[0] - pole[0], directrix.p[1] - pole[1]];
    let (lx, ly) = (c * pl[0] + s * pl[1], c * pl[1] - s * pl[0]);
    let b = ly - m * lx;
    let plus = b > 0.0;
    let w = 1.0 + m * m;
    // k = m X − Y with X, Y the local offsets, as a polynomial in world (x, y)
    let (x0, y0) = (pole[0], pole[1]);
    let kx = m * c + s;
    let ky = m * s - c;
    let k = Poly2::linear(-(kx * x0 + ky * y0), kx, ky);
    let sg = if plus { 1.0 } else { -1.0 };
    let shifted = k.add(&Poly2::linear(1.0, 0.0, 0.0), sg * a.abs() * w.sqrt());
    let rx = Poly2::linear(-x0, 1.0, 0.0);
    let ry = Poly2::linear(-y0, 0.0, 1.0);
    let r2 = rx.mul(&rx).add(&ry.mul(&ry), 1.0);
    let lhs = shifted.mul(&shifted).mul(&r2);
    let rhs = k.mul(&k);
    let mut poly = lhs.add(&rhs, -d * d);
    for row in poly.c.iter_mut() {
        for v in row.iter_mut() {
            *v /= w;
        }
    }
    Ok(ConchoidImplicit { pole, frame, m, a: a.abs(), plus, d, poly })
}

/// Glissette ellipse of a length-`d1 + d2` segment sliding with its ends on
/// the ceiling and floor support lines, traced at distance `d1` from the
/// ceiling end.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EllipseParams {
    pub center: [f64; 2],
    /// semi-axis along the rotated x direction
    pub a: f64,
    pub b: f64,
    /// world rotation of the `a` axis, in `(−π/2, π/2]`
    pub rotation: f64,
    /// angle between the lines, measured from the floor direction
    pub alpha: f64,
    /// direction angle of the floor line used as the local x-axis
    pub floor_angle: f64,
    pub d1: f64,
    pub d2: f64,
}

/// The closed form in the frame where the floor is the x-axis:
/// `θ = ½·cot⁻¹((d1/d2 + cos 2α)/sin 2α)`,
/// `a² = d1²/(1 − (s/(c·tan α))(1 + d1/d2))`,
/// `b² = d1²/(1 + (c/(s·tan α))(1 + d1/d2))`, `s, c = sin θ, cos θ`.
pub fn ellipse_closed_form(alpha: f64, d1: f64, d2: f64) -> (f64, f64, f64) {
    let k = 1.0 + d1 / d2;
    let theta = 0.5 * (2.0 * alpha).sin().atan2(d1 / d2 + (2.0 * alpha).cos());
    let (s, c) = theta.sin_cos();
    let cot = alpha.cos() / alpha.sin();
    let a2 = d1 * d1 / (1.0 - s / c * cot * k);
    let b2 = d1 * d1 / (1.0 + c / s * cot * k);
    (theta, a2, b2)
}

/// Principal axes of the same conic from its quadratic form; used where the
/// closed form divides by zero (right angles, `θ ∈ {0, π/2}`).
fn principal_axes(alpha: f64, d1: f64, d2: f64) -> (f64, f64, f64) {
    let k = 1.0 + d1 / d2;
    let cot = alpha.cos() / alpha.sin();
    let qa = 1.0 / (d1 * d1);
    let qb = -k * cot / (d1 * d1);
    let qc = k * k * cot * cot / (d1 * d1) + 1.0 / (d2 * d2);
    let theta = 0.5 * (2.0 * qb).atan2(qa - qc);
    let (s, c) = theta.sin_cos();
    let l1 = qa * c * c + 2.0 * qb * s * c + qc * s * s;
    let l2 = qa * s * s - 2.0 * qb * s * c + qc * c * c;
    (theta, 1.0 / l1, 1.0 / l2)
}

pub fn ellipse_params(ceiling: &Line, floor: &Line, d1: f64, d2: f64) -> Result<EllipseParams> {
    let f = floor.d;
    let cr = f[0] * ceiling.d[1] - f[1] * ceiling.d[0];
    if cr.abs() <= 1e-12 {
        return Err(Error::ParallelSupportLines);
    }
    let g = if cr > 0.0 { ceiling.d } else { [-ceiling.d[0], -ceiling.d[1]] };
    let alpha = cr.abs().atan2(f[0] * g[0] + f[1] * g[1]);
    // intersection of the two lines
    let w = [ceiling.p[0] - floor.p[0], ceiling.p[1] - floor.p[1]];
    let t = (w[0] * g[1] - w[1] * g[0]) / (f[0] * g[1] - f[1] * g[0]);
    let center = [floor.p[0] + t * f[0], floor.p[1] + t * f[1]];
    let (mut th, mut a2, mut b2) = ellipse_closed_form(alpha, d1, d2);
    if !(a2.is_finite() && b2.is_finite() && a2 > 0.0 && b2 > 0.0) {
        (th, a2, b2) = principal_axes(alpha, d1, d2);
    }
    let floor_angle = f[1].atan2(f[0]);
    let mut rotation = th + floor_angle;
    while rotation > FRAC_PI_2 {
        rotation -= PI;
    }
    while rotation <= -FRAC_PI_2 {
        rotation += PI;
    }
    Ok(EllipseParams { center, a: a2.sqrt(), b: b2.sqrt(), rotation, alpha, floor_angle, d1, d2 })
}

impl EllipseParams {
    /// `(x cos θ′ + y sin θ′)²/a² + (x sin θ′ − y cos θ′)²/b² − 1` about the center.
    pub fn residual(&self, p: [f64; 2]) -> f64 {
        let (x, y) = (p[0] - self.center[0], p[1] - self.center[1]);
        let (s, c) = self.rotation.sin_cos();
        (x * c + y * s).powi(2) / (self.a * self.a) + (x * s - y * c).powi(2) / (self.b * self.b) - 1.0
    }

    /// Point on the ellipse at parameter `t`.
    pub fn point(&self, t: f64) -> [f64; 2] {
        let (s, c) = self.rotation.sin_cos();
        let (x, y) = (self.a * t.cos(), self.b * t.sin());
        [self.center[0] + x * c + y * s, self.center[1] + x * s - y * c]
    }

    /// The glissette parametrisation in oblique coordinates:
    /// `x sin α = d1 cos φ`, `y sin α = d2 cos(φ + α)` along the floor and
    /// ceiling directions, mapped to world coordinates.
    pub fn glissette(&self, phi: f64) -> [f64; 2] {
        let sa = self.alpha.sin();
        let y = self.d2 * (phi + self.alpha).cos();
        let x = self.d1 * phi.cos() / sa + y * self.alpha.cos() / sa;
        let (s, c) = self.floor_angle.sin_cos();
        [self.center[0] + x * c - y * s, self.center[1] + x * s + y * c]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;

    fn line(a: [f64; 2], b: [f64; 2]) -> Line {
        Line::from_edge(&Point::from_f64(a[0], a[1]), &Point::from_f64(b[0], b[1]))
    }

    #[test]
    fn flatten_respects_deviation() {
        let r = 2.0;
        let pts = flatten(|t| [r * t.cos(), r * t.sin()], 0.0, PI, 1e-3);
        for w in pts.windows(2) {
            let m = [(w[0][0] + w[1][0]) / 2.0, (w[0][1] + w[1][1]) / 2.0];
            assert!(r - m[0].hypot(m[1]) <= 1e-3 + 1e-12);
        }
        assert!((pts.last().unwrap()[0] + r).abs() < 1e-12);
    }

    #[test]
    fn classic_conchoid() {
        // pole at the origin, directrix x = a
        let a = 1.5;
        let l = line([a, 0.0], [a, 1.0]);
        let d = 0.7;
        let ci = conchoid_implicit([0.0, 0.0], &l, d).unwrap();
        assert_eq!(ci.poly.degree(), 4);
        for k in 1..40 {
            let t = -1.4 + 2.8 * k as f64 / 40.0;
            let rho = a / t.cos();
            for off in [d, -d] {
                let p = [(rho + off) * t.cos(), (rho + off) * t.sin()];
                let classic = (p[0] - a).powi(2) * (p[0] * p[0] + p[1] * p[1]) - d * d * p[0] * p[0];
                assert!(classic.abs() < 1e-9);
                assert!(ci.residual(p).abs() < 1e-9);
                assert!(ci.poly.eval(p).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn conchoid_sign_rule_and_translation() {
        let l = line([-3.0, 1.0], [3.0, 1.0]);
        let below = conchoid_implicit([0.0, 0.0], &l, 1.0).unwrap();
        assert!(below.plus);
        let l2 = line([3.0, -1.0], [-3.0, -1.0]);
        assert!(!conchoid_implicit([0.0, 0.0], &l2, 1.0).unwrap().plus);
        let moved = conchoid_implicit([2.0, 3.0], &line([-1.0, 4.0], [5.0, 4.0]), 1.0).unwrap();
        for k in 0..20 {
            let t = 0.3 + 2.5 * k as f64 / 20.0;
            let p = [(1.0 / t.sin() - 1.0) * t.cos(), (1.0 / t.sin() - 1.0) * t.sin()];
            assert!(below.residual(p).abs() < 1e-9);
            assert!(moved.residual([p[0] + 2.0, p[1] + 3.0]).abs() < 1e-9);
        }
        assert_eq!(conchoid_implicit([0.0, 1.0], &l, 1.0), Err(Error::PoleOnDirectrix));
    }

    #[test]
    fn right_angle_equal_split_is_a_circle() {
        let e = ellipse_params(&line([0.0, 0.0], [0.0, 1.0]), &line([0.0, 0.0], [1.0, 0.0]), 0.8, 0.8).unwrap();
        assert!((e.a - 0.8).abs() < 1e-12 && (e.b - 0.8).abs() < 1e-12);
        let e = ellipse_params(&line([0.0, 0.0], [0.0, 1.0]), &line([0.0, 0.0], [1.0, 0.0]), 0.5, 1.5).unwrap();
        for k in 0..100 {
            assert!(e.residual(e.glissette(k as f64 * 0.063)).abs() < 1e-12);
        }
    }

    #[test]
    fn forty_five_degrees() {
        let (theta, _, _) = ellipse_closed_form(PI / 4.0, 1.0, 1.0);
        assert!((theta - PI / 8.0).abs() < 1e-15);
    }

    #[test]
    fn closed_form_matches_principal_axes() {
        for (al, d1, d2) in [(1.0, 0.7, 1.3), (0.4, 1.0, 1.0), (2.5, 1.0, 0.5), (1.9, 0.3, 2.0)] {
            let (t1, a1, b1) = ellipse_closed_form(al, d1, d2);
            let (t2, a2, b2) = principal_axes(al, d1, d2);
            let same = |x: f64, y: f64| (x - y).abs() < 1e-9 * (1.0 + x.abs());
            let dt = ((t1 - t2) / FRAC_PI_2).round();
            assert!(same(t1, t2 + dt * FRAC_PI_2));
            if dt as i64 % 2 == 0 {
                assert!(same(a1, a2) && same(b1, b2));
            } else {
                assert!(same(a1, b2) && same(b1, a2));
            }
        }
    }
}
