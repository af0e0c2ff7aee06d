//! Brute-force ground truth by dense sampling. Depends only on `geom`.

use std::f64::consts::{PI, TAU};

use crate::geom::{inside_f64, ray_cast_f64, EdgeId, Workspace};

/// Sampling density: `resolution` positions along the longer side of the
/// bounding box, `angles` directions over the full turn.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub resolution: usize,
    pub angles: usize,
    /// tolerance; twice the diagonal pitch when `None`
    pub eps: Option<f64>,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { resolution: 200, angles: 720, eps: None }
    }
}

fn bbox(ws: &Workspace) -> ([f64; 2], [f64; 2]) {
    let (mut lo, mut hi) = ([f64::MAX; 2], [f64::MIN; 2]);
    for v in 0..ws.n() {
        let p = ws.vertex_f64(v);
        for i in 0..2 {
            lo[i] = lo[i].min(p[i]);
            hi[i] = hi[i].max(p[i]);
        }
    }
    (lo, hi)
}

impl GridSpec {
    pub fn new(resolution: usize, angles: usize) -> GridSpec {
        GridSpec { resolution, angles, eps: None }
    }

    pub fn pitch(&self, ws: &Workspace) -> f64 {
        let (lo, hi) = bbox(ws);
        (hi[0] - lo[0]).max(hi[1] - lo[1]) / self.resolution as f64
    }

    pub fn eps(&self, ws: &Workspace) -> f64 {
        self.eps.unwrap_or(2.0 * std::f64::consts::SQRT_2 * self.pitch(ws))
    }

    /// Interior sample positions, row by row.
    pub fn positions(&self, ws: &Workspace) -> Vec<[f64; 2]> {
        let (lo, hi) = bbox(ws);
        let h = self.pitch(ws);
        let (nx, ny) = (((hi[0] - lo[0]) / h).ceil() as usize, ((hi[1] - lo[1]) / h).ceil() as usize);
        let mut out = Vec::new();
        for j in 0..ny {
            for i in 0..nx {
                let p = [lo[0] + (i as f64 + 0.5) * h, lo[1] + (j as f64 + 0.5) * h];
                if inside_f64(ws, p) {
                    out.push(p);
                }
            }
        }
        out
    }

    pub fn angle(&self, k: usize) -> f64 {
        TAU * k as f64 / self.angles as f64
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampledPose {
    pub p: [f64; 2],
    pub theta: f64,
    /// reading ahead, and behind for antipodal samples
    pub h: f64,
    pub h_back: f64,
}

/// Outcome of comparing a structure's answer against the oracle.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct OracleReport {
    pub matched: usize,
    /// oracle solutions the structure missed
    pub unmatched: Vec<SampledPose>,
    /// structure answers the oracle refutes
    pub false_positives: Vec<SampledPose>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.unmatched.is_empty() && self.false_positives.is_empty()
    }
}

fn par_map<T: Send, F: Fn(&[f64; 2]) -> Vec<T> + Sync>(pts: &[[f64; 2]], f: F) -> Vec<T> {
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(16);
    let chunk = pts.len().div_ceil(threads).max(1);
    std::thread::scope(|s| {
        let handles: Vec<_> = pts.chunks(chunk).map(|c| s.spawn(|| c.iter().flat_map(&f).collect::<Vec<T>>())).collect();
        handles.into_iter().flat_map(|h| h.join().expect("oracle worker")).collect()
    })
}

/// Sampled poses whose reading is within the grid tolerance of `d`.
pub fn oracle_single(ws: &Workspace, d: f64, grid: &GridSpec) -> Vec<SampledPose> {
    let eps = grid.eps(ws);
    let pts = grid.positions(ws);
    par_map(&pts, |p| {
        (0..grid.angles)
            .filter_map(|k| {
                let t = grid.angle(k);
                let h = ray_cast_f64(ws, *p, t)?;
                ((h - d).abs() <= eps).then_some(SampledPose { p: *p, theta: t, h, h_back: f64::NAN })
            })
            .collect()
    })
}

/// Sampled poses whose readings ahead and behind are near `d1` and `d2`.
pub fn oracle_antipodal(ws: &Workspace, d1: f64, d2: f64, grid: &GridSpec) -> Vec<SampledPose> {
    let eps = grid.eps(ws);
    let pts = grid.positions(ws);
    par_map(&pts, |p| {
        (0..grid.angles)
            .filter_map(|k| {
                let t = grid.angle(k);
                let h = ray_cast_f64(ws, *p, t)?;
                if (h - d1).abs() > eps {
                    return None;
                }
                let b = ray_cast_f64(ws, *p, t + PI)?;
                ((b - d2).abs() <= eps).then_some(SampledPose { p: *p, theta: t, h, h_back: b })
            })
            .collect()
    })
}

/// Whether an interior chord of length `d` at angle θ runs from edge `e1`
/// (ahead) down to edge `e2`.
pub fn chord_fits(ws: &Workspace, e1: EdgeId, e2: EdgeId, d: f64, theta: f64) -> bool {
    let (a1, b1) = ws.edge_points(e1);
    let (a2, b2) = ws.edge_points(e2);
    let (a1, b1, a2, b2) = (a1.to_f64(), b1.to_f64(), a2.to_f64(), b2.to_f64());
    let (s, c) = theta.sin_cos();
    // top = a1 + λ(b1 − a1); top − d·u = a2 + μ(b2 − a2)
    let d1 = [b1[0] - a1[0], b1[1] - a1[1]];
    let d2 = [b2[0] - a2[0], b2[1] - a2[1]];
    let rhs = [a2[0] - a1[0] + d * c, a2[1] - a1[1] + d * s];
    let det = d1[0] * (-d2[1]) + d2[0] * d1[1];
    if det.abs() < 1e-300 {
        return false;
    }
    let lam = (rhs[0] * (-d2[1]) + d2[0] * rhs[1]) / det;
    let mu = (d1[0] * rhs[1] - d1[1] * rhs[0]) / det;
    if !(0.0..=1.0).contains(&lam) || !(0.0..=1.0).contains(&mu) {
        return false;
    }
    let top = [a1[0] + lam * d1[0], a1[1] + lam * d1[1]];
    let mid = [top[0] - 0.5 * d * c, top[1] - 0.5 * d * s];
    if !inside_f64(ws, mid) {
        return false;
    }
    let tol = 1e-9 * (1.0 + d);
    let up = ray_cast_f64(ws, mid, theta);
    let down = ray_cast_f64(ws, mid, theta + PI);
    matches!((up, down), (Some(u), Some(w)) if (u - 0.5 * d).abs() <= tol && (w - 0.5 * d).abs() <= tol)
}

/// Angle intervals (over `[0, 2π)`, not joined across 0) on which a chord
/// of length `d` from `e1` to `e2` fits, from `samples` equally spaced angles.
pub fn oracle_pair_intervals(ws: &Workspace, e1: EdgeId, e2: EdgeId, d: f64, samples: usize) -> Vec<(f64, f64)> {
    let mut out: Vec<(f64, f64)> = Vec::new();
    let mut run: Option<(f64, f64)> = None;
    for k in 0..samples {
        let t = TAU * k as f64 / samples as f64;
        if chord_fits(ws, e1, e2, d, t) {
            run = Some(run.map_or((t, t), |(a, _)| (a, t)));
        } else if let Some(r) = run.take() {
            out.push(r);
        }
    }
    out.extend(run);
    out
}
