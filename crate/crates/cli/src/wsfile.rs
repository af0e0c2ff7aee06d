//! Workspace documents:
//!
//! ```json
//! { "outer": [["0", "0"], ["1", "0"], ["1/2", "1"]],
//!   "holes": [[["0.25", "0.25"], ...]] }
//! ```
//!
//! Coordinates are decimal strings, `"p/q"` rationals, or plain JSON numbers
//! (read through their shortest decimal form, so `0.1` means 1/10). Outer
//! rings run counterclockwise, holes clockwise.

use std::fmt;

use localizer_core::geom::{format_scalar, parse_scalar};
use localizer_core::{Point, Scalar, Workspace};
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::CliError;

struct Coord(Scalar);

impl<'de> Deserialize<'de> for Coord {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Coord;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a coordinate: number, decimal string or \"p/q\"")
            }

            fn visit_str<E: de::Error>(self, s: &str) -> Result<Coord, E> {
                parse_scalar(s).map(Coord).ok_or_else(|| E::custom(format!("bad coordinate {s:?}")))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Coord, E> {
                Ok(Coord(Scalar::from_integer(v.into())))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Coord, E> {
                Ok(Coord(Scalar::from_integer(v.into())))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Coord, E> {
                if !v.is_finite() {
                    return Err(E::custom("non-finite coordinate"));
                }
                self.visit_str(&format!("{v:e}"))
            }
        }
        de.deserialize_any(V)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Doc {
    outer: Vec<[Coord; 2]>,
    #[serde(default)]
    holes: Vec<Vec<[Coord; 2]>>,
}

fn ring(r: Vec<[Coord; 2]>) -> Vec<Point> {
    r.into_iter().map(|[x, y]| Point::new(x.0, y.0)).collect()
}

/// Parses a workspace document; syntax errors carry line and column.
pub fn parse_workspace(text: &str) -> Result<Workspace, CliError> {
    let doc: Doc = serde_json::from_str(text).map_err(|e| CliError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let holes = doc.holes.into_iter().map(ring).collect();
    Ok(Workspace::new(ring(doc.outer), holes)?)
}

/// Exact form used inside artifacts and for hashing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkspaceDoc {
    pub outer: Vec<[String; 2]>,
    pub holes: Vec<Vec<[String; 2]>>,
}

fn ring_doc(r: &[Point]) -> Vec<[String; 2]> {
    r.iter().map(|p| [format_scalar(&p.x), format_scalar(&p.y)]).collect()
}

impl WorkspaceDoc {
    pub fn of(ws: &Workspace) -> WorkspaceDoc {
        WorkspaceDoc { outer: ring_doc(ws.outer()), holes: ws.holes().into_iter().map(ring_doc).collect() }
    }

    pub fn to_workspace(&self) -> Result<Workspace, CliError> {
        let pt = |[x, y]: &[String; 2]| -> Result<Point, CliError> {
            match (parse_scalar(x), parse_scalar(y)) {
                (Some(x), Some(y)) => Ok(Point::new(x, y)),
                _ => Err(CliError::Artifact(format!("bad stored coordinate ({x}, {y})"))),
            }
        };
        let outer = self.outer.iter().map(pt).collect::<Result<_, _>>()?;
        let holes = self.holes.iter().map(|h| h.iter().map(pt).collect::<Result<_, _>>()).collect::<Result<_, _>>()?;
        Ok(Workspace::new(outer, holes)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("strings serialize")
    }

    /// SHA-256 of the compact document, hex.
    pub fn hash(&self) -> String {
        sha256_hex(self.to_json().as_bytes())
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use localizer_core::geom::ratio;

    #[test]
    fn unit_square() {
        let ws = parse_workspace(r#"{"outer": [[0, 0], ["1", 0], [1, "1"], ["0.0", "1/1"]]}"#).unwrap();
        assert_eq!(ws.n(), 4);
        assert_eq!(ws.area(), Scalar::from_integer(1.into()));
    }

    #[test]
    fn repeated_vertex_is_invalid() {
        let e = parse_workspace(r#"{"outer": [[0, 0], [1, 0], [1, 0], [1, 1], [0, 1]]}"#).unwrap_err();
        assert!(matches!(e, CliError::Core(localizer_core::Error::InvalidPolygon(_))), "{e}");
    }

    #[test]
    fn thirds_round_trip() {
        let text = r#"{"outer": [["0", "0"], ["1/3", "0"], ["1/3", "2/3"]], "holes": []}"#;
        let ws = parse_workspace(text).unwrap();
        assert_eq!(ws.vertex(1).x, ratio(1, 3));
        let doc = WorkspaceDoc::of(&ws);
        assert_eq!(doc.to_json(), text.replace(' ', ""));
        assert_eq!(WorkspaceDoc::of(&doc.to_workspace().unwrap()), doc);
    }

    #[test]
    fn json_numbers_read_as_decimals() {
        let ws = parse_workspace(r#"{"outer": [[0, 0], [0.1, 0], [0, 0.1]]}"#).unwrap();
        assert_eq!(ws.vertex(1).x, ratio(1, 10));
    }

    #[test]
    fn parse_errors_have_positions() {
        let e = parse_workspace("{\"outer\": [[0, 0],\n  [\"x\", 0]]}").unwrap_err();
        match e {
            CliError::Parse { line, column, .. } => assert_eq!((line, column > 0), (2, true)),
            other => panic!("{other}"),
        }
        assert!(matches!(parse_workspace("{\"outer\": [[0, 0]"), Err(CliError::Parse { line: 1, .. })));
        assert!(matches!(parse_workspace("{\"outer\": [], \"extra\": 1}"), Err(CliError::Parse { .. })));
    }
}
