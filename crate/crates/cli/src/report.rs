//! Machine-readable query listings. Floats carry 12 significant digits;
//! angles are radians in `[0, 2π)`.

use std::f64::consts::TAU;

use localizer_core::antipodal::{merge_by_pair, query_antipodal, CellLocus, ParallelBand, PairInterval};
use localizer_core::curves::conchoid_implicit;
use localizer_core::opt::{interval_arc, query_opt};
use localizer_core::rtd::{CellId, Line};
use localizer_core::single::{project_region, query_single, CurvePiece, PositionRegion, SingleAnswer};
use localizer_core::RtdCell;
use serde::Serialize;

use crate::artifact::{Preprocessed, SpecDoc};
use crate::CliError;

pub const NO_POSES: &str = "no poses";

/// Rounds to 12 significant digits.
pub fn sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

/// Angle reduced to `[0, 2π)` and rounded.
pub fn angle(x: f64) -> f64 {
    let a = sig(x.rem_euclid(TAU));
    if a >= sig(TAU) {
        0.0
    } else {
        a
    }
}

fn pt(p: [f64; 2]) -> [f64; 2] {
    [sig(p[0]), sig(p[1])]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AngleRange {
    pub lo: f64,
    pub hi: f64,
    pub lo_spec: SpecDoc,
    pub hi_spec: SpecDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingleCell {
    pub cell: CellId,
    pub ceiling: usize,
    pub floor: usize,
    pub left: usize,
    pub right: usize,
    pub max_opening: f64,
    pub intervals: Vec<AngleRange>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LineDoc {
    pub point: [f64; 2],
    pub direction: [f64; 2],
}

impl LineDoc {
    fn of(l: &Line) -> LineDoc {
        LineDoc { point: pt(l.p), direction: pt(l.d) }
    }
}

/// A boundary piece traversed from angle `from` through the signed `sweep`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum PieceDoc {
    CircularArc { center: [f64; 2], radius: f64, from: f64, sweep: f64 },
    ConchoidArc { pole: [f64; 2], directrix: LineDoc, offset: f64, branch: String, from: f64, sweep: f64 },
    Segment { a: [f64; 2], b: [f64; 2] },
}

impl PieceDoc {
    fn of(p: &CurvePiece) -> PieceDoc {
        match p {
            CurvePiece::CircularArc { center, radius, theta } => {
                PieceDoc::CircularArc { center: pt(*center), radius: sig(*radius), from: angle(theta.0), sweep: sig(theta.1 - theta.0) }
            }
            CurvePiece::ConchoidArc { pole, directrix, d, theta } => {
                let branch = match conchoid_implicit(*pole, directrix, *d) {
                    Ok(c) if c.plus => "+",
                    Ok(_) => "-",
                    Err(_) => "degenerate",
                };
                PieceDoc::ConchoidArc {
                    pole: pt(*pole),
                    directrix: LineDoc::of(directrix),
                    offset: sig(*d),
                    branch: branch.into(),
                    from: angle(theta.0),
                    sweep: sig(theta.1 - theta.0),
                }
            }
            CurvePiece::Segment { a, b } => PieceDoc::Segment { a: pt(*a), b: pt(*b) },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegionDoc {
    pub cell: CellId,
    pub theta: [f64; 2],
    pub boundary: Vec<PieceDoc>,
    /// the region is cut to the side of this line opposite its outward normal
    pub clip: LineDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingleReport {
    pub query: &'static str,
    pub d: f64,
    pub eps: f64,
    pub cells_inspected: usize,
    pub cells: Vec<SingleCell>,
    pub region_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regions: Option<Vec<RegionDoc>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub notice: Option<&'static str>,
}

fn ranges(pieces: &[localizer_core::contrib::Piece]) -> Vec<AngleRange> {
    pieces
        .iter()
        .map(|p| AngleRange { lo: angle(p.theta.0), hi: angle(p.theta.1), lo_spec: SpecDoc::of(&p.lo), hi_spec: SpecDoc::of(&p.hi) })
        .collect()
}

/// Answer plus the projected regions of every hit cell.
pub struct SingleResult {
    pub answer: SingleAnswer,
    pub regions: Vec<PositionRegion>,
}

pub fn run_single(p: &Preprocessed, d: f64) -> Result<SingleResult, CliError> {
    let cells = &p.rtd.cells;
    let mut answer = query_single(&p.single, cells, d)?;
    answer.hits.retain(|h| !h.pieces.is_empty());
    let mut regions = Vec::new();
    for h in &answer.hits {
        regions.extend(project_region(&cells[h.cell], d)?);
    }
    Ok(SingleResult { answer, regions })
}

impl SingleReport {
    pub fn of(cells: &[RtdCell], d: f64, r: &SingleResult, with_regions: bool) -> SingleReport {
        let out: Vec<SingleCell> = r
            .answer
            .hits
            .iter()
            .map(|h| {
                let c = &cells[h.cell];
                SingleCell {
                    cell: c.id,
                    ceiling: c.ceiling,
                    floor: c.floor,
                    left: c.left,
                    right: c.right,
                    max_opening: sig(c.max_opening()),
                    intervals: ranges(&h.pieces),
                }
            })
            .collect();
        let regions = with_regions.then(|| {
            r.regions
                .iter()
                .map(|g| RegionDoc {
                    cell: g.cell,
                    theta: [angle(g.theta.0), angle(g.theta.1)],
                    boundary: g.boundary.iter().map(PieceDoc::of).collect(),
                    clip: LineDoc::of(&g.clip),
                })
                .collect()
        });
        SingleReport {
            query: "single",
            d,
            eps: localizer_core::eps(),
            cells_inspected: r.answer.inspected,
            notice: out.is_empty().then_some(NO_POSES),
            cells: out,
            region_count: r.regions.len(),
            regions,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Engine {
    Rtd,
    Opt,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::Rtd => "rtd",
            Engine::Opt => "opt",
        }
    }
}

/// Both engines reduce to merged per-pair intervals and parallel bands.
pub struct AntipodalResult {
    pub intervals: Vec<PairInterval>,
    pub bands: Vec<(CellId, ParallelBand)>,
    /// cells (rtd) or records (opt) the engine had to report
    pub reported: usize,
}

pub fn run_antipodal(p: &Preprocessed, d1: f64, d2: f64, engine: Engine) -> Result<AntipodalResult, CliError> {
    let cells = &p.rtd.cells;
    Ok(match engine {
        Engine::Rtd => {
            let answers = query_antipodal(&p.antipodal, cells, d1, d2)?;
            let mut bands = Vec::new();
            let mut reported = 0;
            for a in &answers {
                match &a.locus {
                    CellLocus::Arcs(arcs) => reported += !arcs.is_empty() as usize,
                    CellLocus::Bands(bs) => {
                        reported += !bs.is_empty() as usize;
                        bands.extend(bs.iter().map(|b| (a.cell, b.clone())));
                    }
                }
            }
            AntipodalResult { intervals: merge_by_pair(&answers), bands, reported }
        }
        Engine::Opt => {
            let ans = query_opt(&p.opt, cells, d1, d2)?;
            AntipodalResult { reported: ans.intervals.len() + ans.bands.len(), intervals: ans.intervals, bands: ans.bands }
        }
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EllipseDoc {
    pub center: [f64; 2],
    pub a: f64,
    pub b: f64,
    pub rotation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntervalDoc {
    pub ceiling: usize,
    pub floor: usize,
    #[serde(flatten)]
    pub range: AngleRange,
    /// glissette ellipse carrying the positions over the interval
    pub ellipse: Option<EllipseDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BandDoc {
    pub cell: CellId,
    pub ceiling: usize,
    pub floor: usize,
    pub theta: f64,
    pub a: [f64; 2],
    pub b: [f64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AntipodalReport {
    pub query: &'static str,
    pub engine: &'static str,
    pub d1: f64,
    pub d2: f64,
    pub eps: f64,
    pub convention: &'static str,
    pub reported: usize,
    pub intervals: Vec<IntervalDoc>,
    /// parallel ceiling and floor: a whole segment of positions at one angle
    pub bands: Vec<BandDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub notice: Option<&'static str>,
}

pub const CONVENTION: &str = "intervals run counterclockwise from lo to hi; when d1 + d2 equals a breakpoint of the opt index, the record for lengths just below it is used";

impl AntipodalReport {
    pub fn of(cells: &[RtdCell], d1: f64, d2: f64, engine: Engine, r: &AntipodalResult) -> AntipodalReport {
        let intervals: Vec<IntervalDoc> = r
            .intervals
            .iter()
            .map(|iv| IntervalDoc {
                ceiling: iv.ceiling,
                floor: iv.floor,
                range: AngleRange { lo: angle(iv.theta.0), hi: angle(iv.theta.1), lo_spec: SpecDoc::of(&iv.lo), hi_spec: SpecDoc::of(&iv.hi) },
                ellipse: interval_arc(iv, cells, d1, d2).ok().map(|arc| {
                    let e = arc.ellipse;
                    EllipseDoc { center: pt(e.center), a: sig(e.a), b: sig(e.b), rotation: sig(e.rotation) }
                }),
            })
            .collect();
        let bands: Vec<BandDoc> = r
            .bands
            .iter()
            .map(|(c, b)| BandDoc { cell: *c, ceiling: cells[*c].ceiling, floor: cells[*c].floor, theta: angle(b.theta), a: pt(b.a), b: pt(b.b) })
            .collect();
        AntipodalReport {
            query: "antipodal",
            engine: engine.name(),
            d1,
            d2,
            eps: localizer_core::eps(),
            convention: CONVENTION,
            reported: r.reported,
            notice: (intervals.is_empty() && bands.is_empty()).then_some(NO_POSES),
            intervals,
            bands,
        }
    }
}
