//! Standalone SVG diagrams of a polar grid or a slab table.
//!
//! World coordinates are mapped into a fixed-size canvas with y pointing up.
//! Cells are shaded by candidate count: darker means more edges to test.

use std::fmt::Write as _;
use std::path::Path;

use convex_locate::polar::sector_start_direction;
use convex_locate::{ConvexPolygon, Point2, PolarGrid, SectorId, SlabTable};

use crate::HarnessError;

const CANVAS: f64 = 800.0;
const MARGIN: f64 = 20.0;

struct Frame {
    min: Point2,
    scale: f64,
}

impl Frame {
    fn fit(lo: Point2, hi: Point2) -> Self {
        let inner = CANVAS - 2.0 * MARGIN;
        let span = (hi.x - lo.x).max(hi.y - lo.y).max(f64::MIN_POSITIVE);
        let scale = inner / span;
        // center the shorter axis
        let slack = |extent: f64| (inner / scale - extent) / 2.0;
        Self {
            min: Point2::new(lo.x - slack(hi.x - lo.x), lo.y - slack(hi.y - lo.y)),
            scale,
        }
    }

    fn map(&self, p: Point2) -> (f64, f64) {
        (
            MARGIN + (p.x - self.min.x) * self.scale,
            CANVAS - MARGIN - (p.y - self.min.y) * self.scale,
        )
    }

    fn points(&self, pts: &[Point2]) -> String {
        pts.iter()
            .map(|&p| {
                let (x, y) = self.map(p);
                format!("{x:.3},{y:.3}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn header(out: &mut String, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{c}" height="{c}" viewBox="0 0 {c} {c}">"#,
        c = CANVAS
    );
    let _ = writeln!(out, "<title>{}</title>", escape(title));
    out.push_str(
        "<style>\n\
         .outline{fill:none;stroke:#1f4e9c;stroke-width:2}\n\
         .virtual-square{fill:none;stroke:#777;stroke-dasharray:4 3}\n\
         .sector-ray,.slab-line,.slab-end{stroke:#999;stroke-width:0.5}\n\
         .cell{fill:#d9534f;stroke:none}\n\
         .reference{fill:#000}\n\
         </style>\n",
    );
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn shade(count: usize, max: usize) -> f64 {
    if max == 0 {
        0.0
    } else {
        0.08 + 0.5 * count as f64 / max as f64
    }
}

fn outline(out: &mut String, frame: &Frame, poly: &ConvexPolygon) {
    let _ = writeln!(out, r#"<polygon class="outline" points="{}"/>"#, frame.points(poly.vertices()));
}

fn reference(out: &mut String, frame: &Frame, c: Point2) {
    let (x, y) = frame.map(c);
    let _ = writeln!(out, r#"<circle class="reference" cx="{x:.3}" cy="{y:.3}" r="3"/>"#);
}

/// Polygon, reference point, virtual square, `8m` sector rays and sector cells.
pub fn render_polar(poly: &ConvexPolygon, grid: &PolarGrid, title: &str) -> String {
    let c = grid.reference_point();
    let half = poly.vertices().iter().map(|v| (v.x - c.x).abs().max((v.y - c.y).abs())).fold(0.0, f64::max);
    let lo = Point2::new(c.x - half, c.y - half);
    let hi = Point2::new(c.x + half, c.y + half);
    let frame = Frame::fit(lo, hi);
    let m = grid.m();
    let on_square = |s: u32| {
        let d = sector_start_direction(SectorId(s % grid.sector_count() as u32), m);
        let k = half / d.x.abs().max(d.y.abs());
        Point2::new(c.x + d.x * k, c.y + d.y * k)
    };

    let mut out = String::new();
    header(&mut out, title);
    out.push_str("<g id=\"cells\">\n");
    for s in 0..grid.sector_count() as u32 {
        let count = grid.candidates(SectorId(s)).count();
        let _ = writeln!(
            out,
            r#"<polygon class="cell" fill-opacity="{:.3}" points="{}"/>"#,
            shade(count, grid.max_candidates()),
            frame.points(&[c, on_square(s), on_square(s + 1)])
        );
    }
    out.push_str("</g>\n<g id=\"rays\">\n");
    let (cx, cy) = frame.map(c);
    for s in 0..grid.sector_count() as u32 {
        let (x, y) = frame.map(on_square(s));
        let _ = writeln!(out, r#"<line class="sector-ray" x1="{cx:.3}" y1="{cy:.3}" x2="{x:.3}" y2="{y:.3}"/>"#);
    }
    out.push_str("</g>\n");
    let square = [lo, Point2::new(hi.x, lo.y), hi, Point2::new(lo.x, hi.y)];
    let _ = writeln!(out, r#"<polygon class="virtual-square" points="{}"/>"#, frame.points(&square));
    outline(&mut out, &frame, poly);
    reference(&mut out, &frame, c);
    out.push_str("</svg>\n");
    out
}

/// Polygon, one line at the bottom of each of the `M` slabs, the closing line
/// at the top, and slab cells.
pub fn render_slabs(poly: &ConvexPolygon, table: &SlabTable, title: &str) -> String {
    let v = poly.vertices();
    let (lo, hi) = v.iter().fold((v[0], v[0]), |(lo, hi), p| {
        (Point2::new(lo.x.min(p.x), lo.y.min(p.y)), Point2::new(hi.x.max(p.x), hi.y.max(p.y)))
    });
    let frame = Frame::fit(lo, hi);
    let (y_min, y_max) = table.y_range();
    let h = table.slab_height();

    let mut out = String::new();
    header(&mut out, title);
    out.push_str("<g id=\"cells\">\n");
    for s in 0..table.slab_count() as usize {
        let count = table.left(s).len() + table.right(s).len();
        let y0 = y_min + s as f64 * h;
        let cell = [
            Point2::new(lo.x, y0),
            Point2::new(hi.x, y0),
            Point2::new(hi.x, y0 + h),
            Point2::new(lo.x, y0 + h),
        ];
        let _ = writeln!(
            out,
            r#"<polygon class="cell" fill-opacity="{:.3}" points="{}"/>"#,
            shade(count, table.max_candidates()),
            frame.points(&cell)
        );
    }
    out.push_str("</g>\n<g id=\"slabs\">\n");
    let line = |out: &mut String, class: &str, y: f64| {
        let (x1, y1) = frame.map(Point2::new(lo.x, y));
        let (x2, y2) = frame.map(Point2::new(hi.x, y));
        let _ = writeln!(out, r#"<line class="{class}" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}"/>"#);
    };
    for s in 0..table.slab_count() {
        line(&mut out, "slab-line", y_min + s as f64 * h);
    }
    line(&mut out, "slab-end", y_max);
    out.push_str("</g>\n");
    outline(&mut out, &frame, poly);
    reference(&mut out, &frame, poly.reference_point());
    out.push_str("</svg>\n");
    out
}

pub fn write_svg(path: &Path, svg: &str) -> Result<(), HarnessError> {
    std::fs::write(path, svg).map_err(|source| HarnessError::FileWrite { path: path.to_path_buf(), source })
}

#[cfg(test)]
mod tests {
    use super::*;
    use convex_locate::validate_polygon;

    #[test]
    fn square_with_m4_has_32_rays() {
        let sq = validate_polygon(&[
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(2.0, 2.0),
            Point2::new(0.0, 2.0),
        ])
        .unwrap();
        let svg = render_polar(&sq, &PolarGrid::new(&sq, Some(4)), "square <m=4>");
        assert_eq!(svg.matches(r#"class="sector-ray""#).count(), 32);
        assert!(svg.contains("square &lt;m=4&gt;"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }
}
