//! Command bodies. Each returns what goes to stdout; files are written here.

use std::fmt::Write;
use std::path::Path;
use std::time::Instant;

use localizer_core::oracle::{GridSpec, OracleReport};
use serde::Serialize;

use crate::artifact::{Artifact, Preprocessed};
use crate::check;
use crate::report::{run_antipodal, run_single, AntipodalReport, Engine, SingleReport, NO_POSES};
use crate::svg::{render_svg, RenderStyle, Shape};
use crate::wsfile::parse_workspace;
use crate::CliError;

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn json<T: Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("report serializes");
    s.push('\n');
    s
}

pub fn load_workspace(path: &Path) -> Result<localizer_core::Workspace, CliError> {
    parse_workspace(&read(path)?).map_err(|e| match e {
        CliError::Parse { line, column, message } => CliError::Parse { line, column, message: format!("{}: {message}", path.display()) },
        e => e,
    })
}

pub fn preprocess(ws_path: &Path, out: &Path) -> Result<String, CliError> {
    let ws = load_workspace(ws_path)?;
    let t0 = Instant::now();
    let p = Preprocessed::build(&ws)?;
    let text = Artifact::of(&p).to_json();
    let elapsed = t0.elapsed();
    write(out, &text)?;
    let mut s = String::new();
    let _ = writeln!(s, "vertices: {}", ws.n());
    let _ = writeln!(s, "cells: {}", p.rtd.cells.len());
    let _ = writeln!(s, "visibility pairs |E|: {}", p.rtd.visibility_pairs);
    let _ = writeln!(s, "critical values |D|: {}", p.critical_values.len());
    let _ = writeln!(s, "opt records: {}", p.opt.len());
    let _ = writeln!(s, "wall time: {:.3} s", elapsed.as_secs_f64());
    Ok(s)
}

/// Reads and verifies an artifact, optionally against the workspace file it
/// should have been built from.
pub fn load(artifact: &Path, workspace: Option<&Path>) -> Result<Preprocessed, CliError> {
    let a = Artifact::parse(&read(artifact)?)?;
    if let Some(w) = workspace {
        a.check_workspace(&load_workspace(w)?)?;
    }
    a.payload.restore()
}

pub struct SingleOpts<'a> {
    pub json: bool,
    pub svg: Option<&'a Path>,
    pub regions: bool,
}

pub fn query_single(p: &Preprocessed, d: f64, o: &SingleOpts) -> Result<String, CliError> {
    let r = run_single(p, d)?;
    let cells = &p.rtd.cells;
    if let Some(path) = o.svg {
        let shapes: Vec<Shape> = r.regions.iter().map(Shape::Region).collect();
        write(path, &render_svg(p.workspace(), &shapes, &RenderStyle::default()))?;
    }
    let rep = SingleReport::of(cells, d, &r, o.regions);
    if o.json {
        return Ok(json(&rep));
    }
    let mut s = String::new();
    if rep.cells.is_empty() {
        let _ = writeln!(s, "{NO_POSES} for d = {d}");
        return Ok(s);
    }
    let _ = writeln!(s, "d = {d}: {} cells, {} regions ({} of {} cells inspected)", rep.cells.len(), rep.region_count, rep.cells_inspected, cells.len());
    for c in &rep.cells {
        let _ = write!(s, "cell {} ceiling {} floor {} limits {},{}:", c.cell, c.ceiling, c.floor, c.left, c.right);
        for iv in &c.intervals {
            let _ = write!(s, " [{}, {}]", iv.lo, iv.hi);
        }
        s.push('\n');
    }
    Ok(s)
}

pub struct AntipodalOpts<'a> {
    pub json: bool,
    pub svg: Option<&'a Path>,
    pub engine: Engine,
}

pub fn query_antipodal(p: &Preprocessed, d1: f64, d2: f64, o: &AntipodalOpts) -> Result<String, CliError> {
    let r = run_antipodal(p, d1, d2, o.engine)?;
    let cells = &p.rtd.cells;
    if let Some(path) = o.svg {
        let arcs: Vec<_> = r.intervals.iter().filter_map(|iv| localizer_core::opt::interval_arc(iv, cells, d1, d2).ok()).collect();
        let mut shapes: Vec<Shape> = arcs.iter().map(Shape::Arc).collect();
        shapes.extend(r.bands.iter().map(|(_, b)| Shape::Band(b)));
        write(path, &render_svg(p.workspace(), &shapes, &RenderStyle::default()))?;
    }
    let rep = AntipodalReport::of(cells, d1, d2, o.engine, &r);
    if o.json {
        return Ok(json(&rep));
    }
    let mut s = String::new();
    if rep.notice.is_some() {
        let _ = writeln!(s, "{NO_POSES} for d1 = {d1}, d2 = {d2}");
        return Ok(s);
    }
    let _ = writeln!(
        s,
        "d1 = {d1}, d2 = {d2} ({} engine, {} reported): {} intervals, {} bands",
        rep.engine,
        rep.reported,
        rep.intervals.len(),
        rep.bands.len()
    );
    for iv in &rep.intervals {
        let _ = write!(s, "edges {} -> {}: [{}, {}]", iv.ceiling, iv.floor, iv.range.lo, iv.range.hi);
        if let Some(e) = &iv.ellipse {
            let _ = write!(s, " ellipse center ({}, {}) axes {} {} rotation {}", e.center[0], e.center[1], e.a, e.b, e.rotation);
        }
        s.push('\n');
    }
    for b in &rep.bands {
        let _ = writeln!(s, "edges {} -> {}: band at {} from ({}, {}) to ({}, {})", b.ceiling, b.floor, b.theta, b.a[0], b.a[1], b.b[0], b.b[1]);
    }
    Ok(s)
}

#[derive(Serialize)]
pub struct OracleSummary {
    pub query: &'static str,
    pub resolution: usize,
    pub angles: usize,
    pub grid_eps: f64,
    pub oracle_poses: usize,
    pub matched: usize,
    pub unmatched: usize,
    /// oracle poses with no genuine pose within `grid_eps`; not counted as misses
    pub unsupported: usize,
    pub soundness_samples: usize,
    pub false_positives: usize,
    pub passed: bool,
}

impl OracleSummary {
    fn new(query: &'static str, grid: &GridSpec, eps: f64, complete: &OracleReport, unsupported: usize, sound: &OracleReport) -> OracleSummary {
        OracleSummary {
            query,
            resolution: grid.resolution,
            angles: grid.angles,
            grid_eps: eps,
            oracle_poses: complete.matched + complete.unmatched.len() + unsupported,
            matched: complete.matched,
            unmatched: complete.unmatched.len(),
            unsupported,
            soundness_samples: sound.matched + sound.false_positives.len(),
            false_positives: sound.false_positives.len(),
            passed: complete.passed() && sound.passed(),
        }
    }

    pub fn to_json(&self) -> String {
        json(self)
    }
}

pub fn oracle_single(p: &Preprocessed, d: f64, grid: &GridSpec, samples: usize) -> Result<OracleSummary, CliError> {
    let r = run_single(p, d)?;
    let (ws, cells) = (p.workspace(), &p.rtd.cells);
    let complete = check::single_completeness(ws, cells, &r.answer, &r.regions, d, grid);
    let sound = check::single_soundness(ws, cells, &r.answer, d, samples, 1e-6);
    Ok(OracleSummary::new("single", grid, grid.eps(ws), &complete.report, complete.unsupported.len(), &sound))
}

pub fn oracle_antipodal(p: &Preprocessed, d1: f64, d2: f64, engine: Engine, grid: &GridSpec, samples: usize) -> Result<OracleSummary, CliError> {
    let r = run_antipodal(p, d1, d2, engine)?;
    let ws = p.workspace();
    let complete = check::antipodal_completeness(ws, &r, d1, d2, grid);
    let sound = check::antipodal_soundness(ws, &r, d1, d2, samples, 1e-6);
    Ok(OracleSummary::new("antipodal", grid, grid.eps(ws), &complete, 0, &sound))
}
