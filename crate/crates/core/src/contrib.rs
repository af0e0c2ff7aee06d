//! Angle sets contributed by a cell at a fixed length `d`, with endpoints kept
//! symbolic so they can be re-resolved at another `d`.

use crate::geom::VertexId;
use crate::rtd::{AngleEnd, CellId, RtdCell};
use crate::{Error, Result};

/// One end of a contributed angle interval.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EndSpec {
    /// the cell's first direction
    Begin(CellId),
    /// the cell's last direction (possibly the full turn)
    End(CellId),
    /// angle at which the chord through a limiting vertex has length `d`
    Root { cell: CellId, vertex: VertexId, side: u8, rising: bool },
}

impl EndSpec {
    /// Concrete angle for length `d`.
    pub fn resolve(&self, cells: &[RtdCell], d: f64) -> Result<f64> {
        match *self {
            EndSpec::Begin(c) => Ok(cells[c].theta.0),
            EndSpec::End(c) => Ok(cells[c].theta.1),
            EndSpec::Root { cell, side, rising, .. } => {
                let c = &cells[cell];
                c.sides[side as usize].roots(d, anchor(c))[rising as usize].ok_or(Error::NoIncidence(d))
            }
        }
    }

    /// Cell boundary shared with a neighbouring cell's boundary spec.
    pub fn boundary<'a>(&self, cells: &'a [RtdCell]) -> Option<Boundary<'a>> {
        match *self {
            EndSpec::Begin(c) => Some(Boundary::Dir(&cells[c].begin)),
            EndSpec::End(c) => Some(match &cells[c].end {
                AngleEnd::Dir(d) => Boundary::Dir(d),
                AngleEnd::FullTurn => Boundary::FullTurn,
            }),
            EndSpec::Root { .. } => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Boundary<'a> {
    Dir(&'a crate::geom::Direction),
    FullTurn,
}

/// Reference angle for a cell's root branches.
pub fn anchor(c: &RtdCell) -> f64 {
    0.5 * (c.theta.0 + c.theta.1)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Piece {
    pub lo: EndSpec,
    pub hi: EndSpec,
    pub theta: (f64, f64),
}

/// Splits the cell's angle range at every angle where a side length equals
/// `d` and keeps the sub-ranges whose midpoint satisfies `keep(L, R)`.
pub fn split_theta(c: &RtdCell, d: f64, keep: impl Fn(f64, f64) -> bool) -> Vec<Piece> {
    let (a, b) = c.theta;
    let mut cuts: Vec<(f64, EndSpec)> = vec![(a, EndSpec::Begin(c.id))];
    let anc = anchor(c);
    let verts = [c.left, c.right];
    for side in 0..2u8 {
        let rs = c.sides[side as usize].roots(d, anc);
        for (k, r) in rs.iter().enumerate() {
            if let Some(t) = *r {
                if t > a && t < b {
                    cuts.push((t, EndSpec::Root { cell: c.id, vertex: verts[side as usize], side, rising: k == 1 }));
                }
            }
        }
    }
    cuts.push((b, EndSpec::End(c.id)));
    cuts.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut out: Vec<Piece> = Vec::new();
    let mut open: Option<(f64, EndSpec)> = None;
    for w in cuts.windows(2) {
        let (s, t) = (w[0].0, w[1].0);
        let inside = t > s && {
            let m = 0.5 * (s + t);
            keep(c.side_length(false, m), c.side_length(true, m))
        };
        if inside {
            if open.is_none() {
                open = Some(w[0].clone());
            }
        } else if t > s {
            if let Some((lo_t, lo)) = open.take() {
                out.push(Piece { lo, hi: w[0].1.clone(), theta: (lo_t, s) });
            }
        }
    }
    if let Some((lo_t, lo)) = open {
        let (hi_t, hi) = cuts.last().unwrap().clone();
        out.push(Piece { lo, hi, theta: (lo_t, hi_t) });
    }
    out
}

/// Angles where a chord of length `d` fits: `d` between the side lengths.
pub fn antipodal_pieces(c: &RtdCell, d: f64) -> Vec<Piece> {
    split_theta(c, d, |l, r| (l - d) * (r - d) <= 0.0)
}

/// Angles where some chord is at least `d` long.
pub fn single_pieces(c: &RtdCell, d: f64) -> Vec<Piece> {
    split_theta(c, d, |l, r| l.max(r) >= d)
}

/// Union of pieces as sorted disjoint runs `(lo, hi, lo_spec, hi_spec)`;
/// touching runs are joined.
pub fn union_runs(mut items: Vec<(f64, f64, EndSpec, EndSpec)>) -> Vec<(f64, f64, EndSpec, EndSpec)> {
    items.sort_by(|x, y| x.0.total_cmp(&y.0).then(y.1.total_cmp(&x.1)).then_with(|| x.2.cmp(&y.2)));
    let mut out: Vec<(f64, f64, EndSpec, EndSpec)> = Vec::new();
    for it in items {
        match out.last_mut() {
            Some(last) if it.0 <= last.1 => {
                if it.1 > last.1 {
                    last.1 = it.1;
                    last.3 = it.3;
                }
            }
            _ => out.push(it),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rtd::Rtd;

    #[test]
    fn pieces_match_dense_sampling() {
        for ws in [fixtures::simple_polygon(), fixtures::triangle(), fixtures::spiky_triangle(4)] {
            let rtd = Rtd::build(&ws).unwrap();
            for d in [0.3, 1.0, 2.5] {
                for c in rtd.cells.iter().filter(|c| !c.parallel) {
                    let ps = antipodal_pieces(c, d);
                    for p in &ps {
                        assert_eq!(p.lo.resolve(&rtd.cells, d).unwrap(), p.theta.0);
                        assert_eq!(p.hi.resolve(&rtd.cells, d).unwrap(), p.theta.1);
                    }
                    let (a, b) = c.theta;
                    for k in 0..=97 {
                        let t = a + (b - a) * (k as f64 + 0.5) / 98.0;
                        let (l, r) = (c.side_length(false, t), c.side_length(true, t));
                        let want = (l - d) * (r - d) < 0.0;
                        let near = ps.iter().any(|p| (t - p.theta.0).abs() < 1e-9 || (t - p.theta.1).abs() < 1e-9);
                        let got = ps.iter().any(|p| p.theta.0 <= t && t <= p.theta.1);
                        assert!(near || want == got, "cell {} d {d} θ {t}", c.id);
                    }
                }
            }
        }
    }

    #[test]
    fn union_joins_touching_runs() {
        let s = |c| EndSpec::Begin(c);
        let runs = union_runs(vec![
            (2.0, 3.0, s(2), s(3)),
            (0.0, 1.0, s(0), s(1)),
            (1.0, 1.5, s(4), s(5)),
            (2.5, 2.7, s(6), s(7)),
        ]);
        assert_eq!(runs, vec![(0.0, 1.5, s(0), s(5)), (2.0, 3.0, s(2), s(3))]);
    }
}
