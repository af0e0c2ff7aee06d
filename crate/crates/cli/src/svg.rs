//! Deterministic SVG figures. Geometry is written in workspace coordinates
//! inside a y-flipping group; strokes do not scale.

use std::f64::consts::PI;
use std::fmt::Write;

use geo::MultiPolygon;
use localizer_core::antipodal::{EllipseArc, ParallelBand};
use localizer_core::curves::flatten;
use localizer_core::single::{CurvePiece, PositionRegion};
use localizer_core::Workspace;

#[derive(Clone, Debug, PartialEq)]
pub struct RenderStyle {
    pub outline_width: f64,
    pub curve_width: f64,
    pub fill: String,
    /// per region; overlaps composite darker
    pub fill_opacity: f64,
    pub curve_stroke: String,
    /// maximum distance between a curve and its polyline
    pub deviation: f64,
    /// pixels along the longer side of the drawing
    pub size: f64,
}

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle {
            outline_width: 1.5,
            curve_width: 1.5,
            fill: "#1f5fbf".into(),
            fill_opacity: 0.25,
            curve_stroke: "#c0392b".into(),
            deviation: 1e-3,
            size: 800.0,
        }
    }
}

pub enum Shape<'a> {
    Region(&'a PositionRegion),
    Arc(&'a EllipseArc),
    Band(&'a ParallelBand),
}

/// Fixed-precision number without trailing zeros.
fn num(x: f64) -> String {
    let s = format!("{x:.9}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" || s.is_empty() {
        "0".into()
    } else {
        s.into()
    }
}

fn xy(p: [f64; 2]) -> String {
    format!("{} {}", num(p[0]), num(p[1]))
}

fn ring_path(out: &mut String, pts: impl IntoIterator<Item = [f64; 2]>) {
    for (i, p) in pts.into_iter().enumerate() {
        let _ = write!(out, "{}{} ", if i == 0 { "M" } else { "L" }, xy(p));
    }
    out.push_str("Z ");
}

fn polyline(pts: &[[f64; 2]]) -> String {
    let mut s = String::new();
    for (i, p) in pts.iter().enumerate() {
        let _ = write!(s, "{}{} ", if i == 0 { "M" } else { "L" }, xy(*p));
    }
    s.trim_end().into()
}

fn multipolygon_path(mp: &MultiPolygon<f64>) -> String {
    let mut s = String::new();
    for poly in &mp.0 {
        for ring in std::iter::once(poly.exterior()).chain(poly.interiors()) {
            let pts: Vec<[f64; 2]> = ring.coords().map(|c| [c.x, c.y]).collect();
            let open = if pts.len() > 1 && pts.first() == pts.last() { &pts[..pts.len() - 1] } else { &pts[..] };
            ring_path(&mut s, open.iter().copied());
        }
    }
    s.trim_end().into()
}

/// Boundary drawn directly from its pieces, with circular arcs as `A`
/// commands. Only valid when the floor clip removes nothing.
fn exact_region_path(r: &PositionRegion, deviation: f64) -> String {
    let mut s = format!("M{} ", xy(r.boundary[0].start()));
    for piece in &r.boundary {
        match piece {
            CurvePiece::CircularArc { radius, theta, .. } => {
                let sweep = theta.1 - theta.0;
                let _ = write!(
                    s,
                    "A{} {} 0 {} {} {} ",
                    num(*radius),
                    num(*radius),
                    (sweep.abs() > PI) as u8,
                    (sweep > 0.0) as u8,
                    xy(piece.end())
                );
            }
            CurvePiece::ConchoidArc { .. } => {
                for q in piece.flatten(deviation).into_iter().skip(1) {
                    let _ = write!(s, "L{} ", xy(q));
                }
            }
            CurvePiece::Segment { b, .. } => {
                let _ = write!(s, "L{} ", xy(*b));
            }
        }
    }
    s.push('Z');
    s
}

fn unclipped(r: &PositionRegion, deviation: f64) -> bool {
    let tol = 1e-12 * (1.0 + r.d);
    r.boundary.iter().flat_map(|p| p.flatten(deviation)).all(|q| r.clip.depth(q) >= -tol)
}

fn region_path(r: &PositionRegion, deviation: f64) -> String {
    if unclipped(r, deviation) {
        exact_region_path(r, deviation)
    } else {
        multipolygon_path(&r.polygon(deviation))
    }
}

pub fn render_svg(ws: &Workspace, shapes: &[Shape], style: &RenderStyle) -> String {
    assert!(style.deviation > 0.0, "flattening deviation must be positive");
    let (mut lo, mut hi) = ([f64::MAX; 2], [f64::MIN; 2]);
    for v in 0..ws.n() {
        let p = ws.vertex_f64(v);
        for i in 0..2 {
            lo[i] = lo[i].min(p[i]);
            hi[i] = hi[i].max(p[i]);
        }
    }
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]);
    let margin = 0.03 * span;
    let k = style.size / (span + 2.0 * margin);
    let (w, h) = ((hi[0] - lo[0] + 2.0 * margin) * k, (hi[1] - lo[1] + 2.0 * margin) * k);
    let (tx, ty) = ((margin - lo[0]) * k, (hi[1] + margin) * k);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        num(w.ceil()),
        num(h.ceil()),
        num(w.ceil()),
        num(h.ceil())
    );
    let _ = writeln!(s, r#"<g transform="matrix({} 0 0 {} {} {})">"#, num(k), num(-k), num(tx), num(ty));

    let mut outline = String::new();
    for r in 0..ws.ring_count() {
        ring_path(&mut outline, ws.ring(r).iter().map(|p| p.to_f64()));
    }
    let _ = writeln!(
        s,
        r##"<path class="workspace" d="{}" fill="#f7f7f7" fill-rule="evenodd" stroke="#000" stroke-width="{}" vector-effect="non-scaling-stroke"/>"##,
        outline.trim_end(),
        num(style.outline_width)
    );

    let regions: Vec<&PositionRegion> = shapes.iter().filter_map(|x| if let Shape::Region(r) = x { Some(*r) } else { None }).collect();
    if !regions.is_empty() {
        let _ = writeln!(s, r#"<g class="regions" fill="{}" fill-opacity="{}" stroke="none">"#, style.fill, num(style.fill_opacity));
        for r in regions {
            let _ = writeln!(s, r#"<path data-cell="{}" d="{}"/>"#, r.cell, region_path(r, style.deviation));
        }
        s.push_str("</g>\n");
    }

    let curves: Vec<(String, String)> = shapes
        .iter()
        .filter_map(|x| match x {
            Shape::Arc(a) => {
                let pts = flatten(|t| a.pose(t).p, a.theta.0, a.theta.1, style.deviation);
                Some(("arc".to_string(), polyline(&pts)))
            }
            Shape::Band(b) => Some(("band".to_string(), polyline(&[b.a, b.b]))),
            Shape::Region(_) => None,
        })
        .collect();
    if !curves.is_empty() {
        let _ = writeln!(
            s,
            r#"<g class="curves" fill="none" stroke="{}" stroke-width="{}" stroke-linecap="round">"#,
            style.curve_stroke,
            num(style.curve_width)
        );
        for (class, d) in curves {
            let _ = writeln!(s, r#"<path class="{class}" d="{d}" vector-effect="non-scaling-stroke"/>"#);
        }
        s.push_str("</g>\n");
    }
    s.push_str("</g>\n</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use localizer_core::fixtures;
    use localizer_core::rtd::Rtd;
    use localizer_core::single::project_region;

    #[test]
    fn empty_result_is_outline_only() {
        let ws = fixtures::square_with_hole();
        let svg = render_svg(&ws, &[], &RenderStyle::default());
        assert_eq!(svg.matches("<path").count(), 1);
        assert_eq!(svg.matches('M').count(), 2);
        assert!(!svg.contains("regions") && !svg.contains("curves"));
    }

    fn parse_arc_end(cmd: &str) -> [f64; 2] {
        let v: Vec<f64> = cmd.split_whitespace().map(|t| t.parse().unwrap()).collect();
        [v[5], v[6]]
    }

    #[test]
    fn circular_arcs_use_arc_commands() {
        let ws = fixtures::unit_square();
        let rtd = Rtd::build(&ws).unwrap();
        let style = RenderStyle::default();
        let mut seen = 0;
        for c in &rtd.cells {
            let Ok(regions) = project_region(c, 0.15) else { continue };
            for r in regions.iter().filter(|r| matches!(r.boundary[0], CurvePiece::CircularArc { .. }) && unclipped(r, style.deviation)) {
                let svg = render_svg(&ws, &[Shape::Region(r)], &style);
                let d = svg.split("data-cell").nth(1).unwrap();
                let d = &d[d.find("d=\"").unwrap() + 3..];
                let d = &d[..d.find('"').unwrap()];
                let arc = d.split('A').nth(1).unwrap().split(['L', 'Z']).next().unwrap();
                let end = parse_arc_end(arc);
                let want = r.boundary[0].end();
                assert!((end[0] - want[0]).hypot(end[1] - want[1]) <= style.deviation);
                seen += 1;
            }
        }
        assert!(seen > 0);
    }

    #[test]
    fn overlaps_stack_opacity() {
        let ws = fixtures::unit_square();
        let rtd = Rtd::build(&ws).unwrap();
        let regions: Vec<PositionRegion> = rtd.cells.iter().filter_map(|c| project_region(c, 0.3).ok()).flatten().collect();
        let shapes: Vec<Shape> = regions.iter().map(Shape::Region).collect();
        let svg = render_svg(&ws, &shapes, &RenderStyle::default());
        // each region is its own translucent path, so overlaps darken
        assert_eq!(svg.matches("data-cell").count(), regions.len());
        assert!(svg.contains(r#"fill-opacity="0.25""#));
        assert_eq!(svg, render_svg(&ws, &shapes, &RenderStyle::default()));
    }

    #[test]
    fn numbers() {
        assert_eq!(num(-0.0000000001), "0");
        assert_eq!(num(1.5), "1.5");
        assert_eq!(num(2.0), "2");
    }
}
