//! Versioned preprocessing bundle. Exact data (coordinates, event and cell
//! boundary directions) is stored as `"p/q"` strings; derived floats use
//! serde_json's shortest round-trip form, so loading and re-saving
//! reproduces the file byte for byte.

use localizer_core::antipodal::{build_antipodal_index, AntipodalIndex};
use localizer_core::contrib::EndSpec;
use localizer_core::geom::{format_scalar, parse_scalar, Vector};
use localizer_core::opt::{build_opt_index, critical_values, MaximalInterval, OptIndex, SweepStats};
use localizer_core::rtd::{AngleEnd, EventKind, SweepEvent};
use localizer_core::single::{build_single_index, SingleIndex};
use localizer_core::{Direction, Rtd, Workspace};
use serde::{Deserialize, Serialize};

use crate::wsfile::{sha256_hex, WorkspaceDoc};
use crate::CliError;

pub const FORMAT: &str = "localizer-artifact";
pub const VERSION: u32 = 1;

/// Everything a query needs, rebuilt in memory.
pub struct Preprocessed {
    pub rtd: Rtd,
    pub single: SingleIndex,
    pub antipodal: AntipodalIndex,
    pub opt: OptIndex,
    pub critical_values: Vec<f64>,
}

impl Preprocessed {
    pub fn build(ws: &Workspace) -> Result<Preprocessed, CliError> {
        let rtd = Rtd::build(ws)?;
        let single = build_single_index(&rtd.cells);
        let antipodal = build_antipodal_index(&rtd.cells);
        let opt = build_opt_index(&rtd.cells)?;
        let critical_values = critical_values(&rtd.cells);
        Ok(Preprocessed { rtd, single, antipodal, opt, critical_values })
    }

    pub fn workspace(&self) -> &Workspace {
        &self.rtd.workspace
    }
}

/// Floats that may be infinite; JSON has no literal for them.
mod num {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        N(f64),
        S(String),
    }

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        match *x {
            x if x.is_finite() => Repr::N(x),
            x if x > 0.0 => Repr::S("inf".into()),
            x if x < 0.0 => Repr::S("-inf".into()),
            _ => Repr::S("nan".into()),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::N(x) => Ok(x),
            Repr::S(s) => match s.as_str() {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                "nan" => Ok(f64::NAN),
                _ => Err(serde::de::Error::custom(format!("bad number {s:?}"))),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Float(#[serde(with = "num")] pub f64);

type Dir = [String; 2];

fn dir_doc(d: &Direction) -> Dir {
    [format_scalar(&d.vec().x), format_scalar(&d.vec().y)]
}

fn dir_of(d: &Dir) -> Result<Direction, CliError> {
    match (parse_scalar(&d[0]), parse_scalar(&d[1])) {
        (Some(x), Some(y)) => Direction::new(Vector::new(x, y)).ok_or_else(|| CliError::Artifact("zero direction".into())),
        _ => Err(CliError::Artifact(format!("bad direction {d:?}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellDoc {
    pub ceiling: usize,
    pub floor: usize,
    pub left: usize,
    pub right: usize,
    pub begin: Dir,
    /// `None` for the full turn
    pub end: Option<Dir>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EventDoc {
    pub kind: String,
    pub direction: Dir,
    pub pairs: Vec<[usize; 2]>,
    pub terminated: usize,
    pub created: usize,
}

/// Symbolic interval end, shared with the query reports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpecDoc {
    Begin(usize),
    End(usize),
    Root { cell: usize, vertex: usize, side: u8, rising: bool },
}

impl SpecDoc {
    pub fn of(s: &EndSpec) -> SpecDoc {
        match *s {
            EndSpec::Begin(c) => SpecDoc::Begin(c),
            EndSpec::End(c) => SpecDoc::End(c),
            EndSpec::Root { cell, vertex, side, rising } => SpecDoc::Root { cell, vertex, side, rising },
        }
    }

    fn spec(&self, cells: usize) -> Result<EndSpec, CliError> {
        let s = match *self {
            SpecDoc::Begin(c) => EndSpec::Begin(c),
            SpecDoc::End(c) => EndSpec::End(c),
            SpecDoc::Root { cell, vertex, side, rising } if side < 2 => EndSpec::Root { cell, vertex, side, rising },
            SpecDoc::Root { .. } => return Err(CliError::Artifact("root side out of range".into())),
        };
        let c = match s {
            EndSpec::Begin(c) | EndSpec::End(c) | EndSpec::Root { cell: c, .. } => c,
        };
        if c >= cells {
            return Err(CliError::Artifact(format!("interval end refers to missing cell {c}")));
        }
        Ok(s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecordDoc {
    pub ceiling: usize,
    pub floor: usize,
    pub lo: SpecDoc,
    pub hi: SpecDoc,
    pub d_lo: Float,
    pub d_hi: Float,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StatsDoc {
    pub steps: usize,
    pub insertions: usize,
    pub deletions: usize,
    pub splits: usize,
    pub merges: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SingleDoc {
    pub order: Vec<usize>,
    pub max_opening: Vec<Float>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptDoc {
    pub records: Vec<RecordDoc>,
    pub stats: StatsDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Payload {
    pub workspace: WorkspaceDoc,
    pub visibility_pairs: usize,
    pub cells: Vec<CellDoc>,
    pub events: Vec<EventDoc>,
    pub critical_values: Vec<Float>,
    pub single: SingleDoc,
    /// `[min opening, max opening, cell]`
    pub antipodal: Vec<(Float, Float, usize)>,
    pub opt: OptDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Artifact {
    pub format: String,
    pub version: u32,
    pub workspace_hash: String,
    pub payload_hash: String,
    pub payload: Payload,
}

fn kind_name(k: EventKind) -> &'static str {
    match k {
        EventKind::TypeI => "type-i",
        EventKind::TypeII => "type-ii",
        EventKind::Collinear => "collinear",
    }
}

fn kind_of(s: &str) -> Result<EventKind, CliError> {
    Ok(match s {
        "type-i" => EventKind::TypeI,
        "type-ii" => EventKind::TypeII,
        "collinear" => EventKind::Collinear,
        _ => return Err(CliError::Artifact(format!("unknown event kind {s:?}"))),
    })
}

fn floats(xs: impl IntoIterator<Item = f64>) -> Vec<Float> {
    xs.into_iter().map(Float).collect()
}

impl Payload {
    pub fn of(p: &Preprocessed) -> Payload {
        let rtd = &p.rtd;
        let cells = rtd
            .cells
            .iter()
            .map(|c| CellDoc {
                ceiling: c.ceiling,
                floor: c.floor,
                left: c.left,
                right: c.right,
                begin: dir_doc(&c.begin),
                end: match &c.end {
                    AngleEnd::Dir(d) => Some(dir_doc(d)),
                    AngleEnd::FullTurn => None,
                },
            })
            .collect();
        let events = rtd
            .events
            .iter()
            .map(|e| EventDoc {
                kind: kind_name(e.kind).into(),
                direction: dir_doc(&e.direction),
                pairs: e.pairs.iter().map(|&(a, b)| [a, b]).collect(),
                terminated: e.terminated,
                created: e.created,
            })
            .collect();
        let s = &p.opt.stats;
        Payload {
            workspace: WorkspaceDoc::of(&rtd.workspace),
            visibility_pairs: rtd.visibility_pairs,
            cells,
            events,
            critical_values: floats(p.critical_values.iter().copied()),
            single: SingleDoc { order: p.single.order.clone(), max_opening: floats(p.single.max_opening.iter().copied()) },
            antipodal: p.antipodal.ranges().map(|(a, b, c)| (Float(a), Float(b), c)).collect(),
            opt: OptDoc {
                records: p
                    .opt
                    .records()
                    .map(|r| RecordDoc {
                        ceiling: r.ceiling,
                        floor: r.floor,
                        lo: SpecDoc::of(&r.lo),
                        hi: SpecDoc::of(&r.hi),
                        d_lo: Float(r.d_lo),
                        d_hi: Float(r.d_hi),
                    })
                    .collect(),
                stats: StatsDoc { steps: s.steps, insertions: s.insertions, deletions: s.deletions, splits: s.splits, merges: s.merges },
            },
        }
    }

    pub fn hash(&self) -> String {
        sha256_hex(serde_json::to_string(self).expect("payload serializes").as_bytes())
    }

    /// Rebuilds the in-memory structures. Stored values that can be
    /// recomputed cheaply from the cells are checked against them.
    pub fn restore(&self) -> Result<Preprocessed, CliError> {
        let ws = self.workspace.to_workspace()?;
        let mut ranges = Vec::with_capacity(self.cells.len());
        for c in &self.cells {
            let end = match &c.end {
                Some(d) => AngleEnd::Dir(dir_of(d)?),
                None => AngleEnd::FullTurn,
            };
            ranges.push(((c.ceiling, c.floor, c.left, c.right), dir_of(&c.begin)?, end));
        }
        let mut events = Vec::with_capacity(self.events.len());
        for e in &self.events {
            events.push(SweepEvent {
                kind: kind_of(&e.kind)?,
                direction: dir_of(&e.direction)?,
                pairs: e.pairs.iter().map(|p| (p[0], p[1])).collect(),
                terminated: e.terminated,
                created: e.created,
            });
        }
        let rtd = Rtd::from_parts(ws, self.visibility_pairs, ranges, events)?;
        let n = rtd.cells.len();

        let single = SingleIndex {
            order: self.single.order.clone(),
            max_opening: self.single.max_opening.iter().map(|f| f.0).collect(),
        };
        let mut seen = vec![false; n];
        for &c in &single.order {
            if c >= n || std::mem::replace(&mut seen[c], true) {
                return Err(CliError::Artifact("single index is not a permutation of the cells".into()));
            }
        }
        if single.order.len() != n
            || single.order.iter().zip(&single.max_opening).any(|(&c, &m)| rtd.cells[c].max_opening().to_bits() != m.to_bits())
        {
            return Err(CliError::Artifact("single index disagrees with the cells".into()));
        }

        let mut anti = Vec::with_capacity(self.antipodal.len());
        for (lo, hi, c) in &self.antipodal {
            let cell = rtd.cells.get(*c).ok_or_else(|| CliError::Artifact(format!("missing cell {c}")))?;
            if cell.min_opening().to_bits() != lo.0.to_bits() || cell.max_opening().to_bits() != hi.0.to_bits() {
                return Err(CliError::Artifact(format!("opening range of cell {c} disagrees with the cell")));
            }
            anti.push((lo.0, hi.0, *c));
        }

        let mut records = Vec::with_capacity(self.opt.records.len());
        for r in &self.opt.records {
            records.push(MaximalInterval {
                ceiling: r.ceiling,
                floor: r.floor,
                lo: r.lo.spec(n)?,
                hi: r.hi.spec(n)?,
                d_lo: r.d_lo.0,
                d_hi: r.d_hi.0,
            });
        }
        let s = &self.opt.stats;
        let stats = SweepStats { steps: s.steps, insertions: s.insertions, deletions: s.deletions, splits: s.splits, merges: s.merges };
        let opt = OptIndex::from_records(records, &rtd.cells, stats);
        Ok(Preprocessed {
            single,
            antipodal: AntipodalIndex::from_ranges(anti),
            opt,
            critical_values: self.critical_values.iter().map(|f| f.0).collect(),
            rtd,
        })
    }
}

impl Artifact {
    pub fn of(p: &Preprocessed) -> Artifact {
        let payload = Payload::of(p);
        Artifact {
            format: FORMAT.into(),
            version: VERSION,
            workspace_hash: payload.workspace.hash(),
            payload_hash: payload.hash(),
            payload,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("artifact serializes");
        s.push('\n');
        s
    }

    /// Parses and verifies format, version and both hashes.
    pub fn parse(text: &str) -> Result<Artifact, CliError> {
        #[derive(Deserialize)]
        struct Header {
            format: String,
            version: u32,
        }
        let bad = |e: serde_json::Error| CliError::Artifact(format!("unreadable artifact: {e}"));
        let h: Header = serde_json::from_str(text).map_err(bad)?;
        if h.format != FORMAT {
            return Err(CliError::Artifact(format!("not an artifact (format {:?})", h.format)));
        }
        if h.version != VERSION {
            return Err(CliError::Artifact(format!("artifact version {} is not supported (expected {VERSION})", h.version)));
        }
        let a: Artifact = serde_json::from_str(text).map_err(bad)?;
        if a.payload.workspace.hash() != a.workspace_hash {
            return Err(CliError::Artifact("workspace hash mismatch".into()));
        }
        if a.payload.hash() != a.payload_hash {
            return Err(CliError::Artifact("payload hash mismatch".into()));
        }
        Ok(a)
    }

    /// Refuses an artifact built for a different workspace.
    pub fn check_workspace(&self, ws: &Workspace) -> Result<(), CliError> {
        if WorkspaceDoc::of(ws).hash() != self.workspace_hash {
            return Err(CliError::Artifact("artifact was built for a different workspace".into()));
        }
        Ok(())
    }
}
