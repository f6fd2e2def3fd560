//! Plain-text polygon files and OFF polyhedra.
//!
//! Polygon: first line `N`, then `N` lines `x y`. Either winding is accepted.
//! Polyhedron: `OFF`, then `V F E`, `V` lines `x y z`, `F` lines `k i1 .. ik`.
//! `#` starts a comment; blank lines are skipped. Writers use the shortest
//! round-trip float representation so files reproduce geometry bit for bit.

use std::fmt::Write as _;

use crate::error::FormatError;
use crate::geometry::{Point2, Point3, Tolerance};
use crate::polygon::ConvexPolygon;
use crate::polyhedron::ConvexPolyhedron;

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Self { inner: text.lines().enumerate() }
    }

    /// Next non-empty line, comments stripped, with its 1-based number.
    fn next_content(&mut self, what: &'static str) -> Result<(usize, &'a str), FormatError> {
        for (i, line) in self.inner.by_ref() {
            let content = line.split('#').next().unwrap_or("").trim();
            if !content.is_empty() {
                return Ok((i + 1, content));
            }
        }
        Err(FormatError::UnexpectedEof(what))
    }
}

fn parse_fields<T: std::str::FromStr>(
    line: usize,
    text: &str,
    expected: usize,
) -> Result<Vec<T>, FormatError> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != expected {
        return Err(FormatError::Parse {
            line,
            message: format!("expected {expected} fields, found {}", fields.len()),
        });
    }
    fields
        .iter()
        .map(|f| {
            f.parse::<T>().map_err(|_| FormatError::Parse {
                line,
                message: format!("cannot parse {f:?}"),
            })
        })
        .collect()
}

pub fn parse_polygon_points(text: &str) -> Result<Vec<Point2>, FormatError> {
    let mut lines = Lines::new(text);
    let (ln, header) = lines.next_content("vertex count")?;
    let n = parse_fields::<usize>(ln, header, 1)?[0];
    (0..n)
        .map(|_| {
            let (ln, l) = lines.next_content("vertex line")?;
            let xy = parse_fields::<f64>(ln, l, 2)?;
            Ok(Point2::new(xy[0], xy[1]))
        })
        .collect()
}

pub fn read_polygon(text: &str, tolerance: Tolerance) -> Result<ConvexPolygon, FormatError> {
    let points = parse_polygon_points(text)?;
    Ok(ConvexPolygon::new(&points, tolerance)?)
}

pub fn write_polygon(poly: &ConvexPolygon) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", poly.len());
    for v in poly.vertices() {
        let _ = writeln!(out, "{} {}", v.x, v.y);
    }
    out
}

pub type RawMesh = (Vec<Point3>, Vec<Vec<usize>>);

pub fn parse_off(text: &str) -> Result<RawMesh, FormatError> {
    let mut lines = Lines::new(text);
    let (ln, magic) = lines.next_content("OFF header")?;
    if magic != "OFF" {
        return Err(FormatError::Parse { line: ln, message: "missing OFF header".into() });
    }
    let (ln, counts) = lines.next_content("counts line")?;
    let counts = parse_fields::<usize>(ln, counts, 3)?;
    let (nv, nf) = (counts[0], counts[1]);

    let mut vertices = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (ln, l) = lines.next_content("vertex line")?;
        let xyz = parse_fields::<f64>(ln, l, 3)?;
        vertices.push(Point3::new(xyz[0], xyz[1], xyz[2]));
    }
    let mut faces = Vec::with_capacity(nf);
    for _ in 0..nf {
        let (ln, l) = lines.next_content("face line")?;
        let k: usize = l
            .split_whitespace()
            .next()
            .and_then(|f| f.parse().ok())
            .ok_or_else(|| FormatError::Parse { line: ln, message: "missing face size".into() })?;
        let fields = parse_fields::<usize>(ln, l, k + 1)?;
        faces.push(fields[1..].to_vec());
    }
    Ok((vertices, faces))
}

pub fn read_off(text: &str, tolerance: Tolerance) -> Result<ConvexPolyhedron, FormatError> {
    let (v, f) = parse_off(text)?;
    Ok(ConvexPolyhedron::new(&v, &f, tolerance)?)
}

pub fn write_off(ph: &ConvexPolyhedron) -> String {
    let mut out = String::from("OFF\n");
    let _ = writeln!(out, "{} {} 0", ph.vertices().len(), ph.face_count());
    for v in ph.vertices() {
        let _ = writeln!(out, "{} {} {}", v.x, v.y, v.z);
    }
    for ring in ph.faces() {
        let _ = write!(out, "{}", ring.len());
        for i in ring {
            let _ = write!(out, " {i}");
        }
        out.push('\n');
    }
    out
}
