//! Tan-spaced polar subdivision around an interior reference point.
//!
//! Directions are bucketed by the ratio of their smaller to larger coordinate
//! magnitude, which is the same as splitting the edges of a square centered at
//! the reference point into `m` equal segments per octant. No trigonometry is
//! needed at query time: one division, one multiplication and a truncation pick
//! the sector, and each sector stores the cyclic range of polygon edges that
//! rays through it can cross.

use crate::angles::polar_exact;
use crate::error::GeometryError;
use crate::geometry::{Containment, Point2, Vector2};
use crate::polygon::{half_plane_side, ConvexPolygon, EdgePlane};

/// Upper bound for the automatically chosen resolution.
pub const M_CAP: u32 = 4096;

/// Relative slack when comparing the widest sector against the narrowest edge
/// span, so a vertex sitting exactly on a sector boundary cannot share a sector
/// with its neighbour.
const AUTO_M_MARGIN: f64 = 1e-9;

/// Sector index in `[0, 8m)`, increasing counterclockwise from +x.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SectorId(pub u32);

impl SectorId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Sector of a non-zero direction; see [`sector_of`] for the octant table.
pub fn sector_index(d: Vector2, m: u32) -> Result<SectorId, GeometryError> {
    if d.is_zero() {
        return Err(GeometryError::ZeroVector);
    }
    Ok(SectorId(sector_of(d.x, d.y, m.max(1))))
}

/// Octant table, first match wins. Boundaries belong to the counterclockwise
/// octant. Odd octants count down in the ratio so ids stay angle-ordered.
#[inline(always)]
fn sector_of(dx: f64, dy: f64, m: u32) -> u32 {
    let mf = m as f64;
    let local = |t: f64| -> u32 { ((t * mf) as u32).min(m - 1) };
    let rev = |t: f64| -> u32 { m - 1 - local(t) };
    if dx > 0.0 && dy >= 0.0 && dy < dx {
        local(dy / dx)
    } else if dy > 0.0 && dx > 0.0 && dx <= dy {
        m + rev(dx / dy)
    } else if dy > 0.0 && -dy < dx && dx <= 0.0 {
        2 * m + local(-dx / dy)
    } else if dy > 0.0 && dx <= -dy {
        3 * m + rev(dy / -dx)
    } else if dx < 0.0 && dy <= 0.0 && -dy < -dx {
        4 * m + local(dy / dx)
    } else if dy < 0.0 && dx < 0.0 && -dx <= -dy {
        5 * m + rev(dx / dy)
    } else if dy < 0.0 && dx >= 0.0 && dx < -dy {
        6 * m + local(dx / -dy)
    } else {
        7 * m + rev(-dy / dx)
    }
}

/// Direction of the clockwise-most boundary ray of sector `s`.
pub fn sector_start_direction(s: SectorId, m: u32) -> Vector2 {
    let m = m.max(1);
    let octant = s.0 / m;
    let i = (s.0 % m) as f64;
    let mf = m as f64;
    let t = if octant.is_multiple_of(2) { i / mf } else { (mf - i) / mf };
    match octant {
        0 => Vector2::new(1.0, t),
        1 => Vector2::new(t, 1.0),
        2 => Vector2::new(-t, 1.0),
        3 => Vector2::new(-1.0, t),
        4 => Vector2::new(-1.0, -t),
        5 => Vector2::new(-t, -1.0),
        6 => Vector2::new(t, -1.0),
        _ => Vector2::new(1.0, -t),
    }
}

/// Reference point used as the center of the subdivision.
pub fn reference_point(poly: &ConvexPolygon) -> Point2 {
    poly.reference_point()
}

/// Smallest angular span of any edge seen from the reference point.
pub fn min_edge_span(poly: &ConvexPolygon) -> f64 {
    let c = poly.reference_point();
    let angles: Vec<f64> = poly
        .vertices()
        .iter()
        .map(|&v| polar_exact(v - c).map(|(_, phi)| phi).unwrap_or(0.0))
        .collect();
    let n = angles.len();
    (0..n)
        .map(|k| (angles[(k + 1) % n] - angles[k]).rem_euclid(std::f64::consts::TAU))
        .fold(f64::INFINITY, f64::min)
}

/// Smallest power of two whose widest sector, `atan(1/m)`, is narrower than
/// every edge span; capped at [`M_CAP`].
pub fn auto_m(poly: &ConvexPolygon) -> u32 {
    let span = min_edge_span(poly) * (1.0 - AUTO_M_MARGIN);
    let mut m = 1u32;
    while m < M_CAP && (1.0 / m as f64).atan() > span {
        m *= 2;
    }
    m
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
struct SectorRange {
    first: u32,
    len: u32,
}

/// Per-sector candidate edge ranges for one polygon.
#[derive(Debug, Clone)]
pub struct PolarGrid {
    polygon: ConvexPolygon,
    reference: Point2,
    m: u32,
    ranges: Vec<SectorRange>,
    max_candidates: usize,
}

/// Builds the grid; `m` defaults to [`auto_m`] and is raised to at least 1.
pub fn build(poly: &ConvexPolygon, m: Option<u32>) -> PolarGrid {
    PolarGrid::new(poly, m)
}

impl PolarGrid {
    pub fn new(poly: &ConvexPolygon, m: Option<u32>) -> Self {
        let m = m.unwrap_or_else(|| auto_m(poly)).max(1);
        let reference = poly.reference_point();
        let sectors = 8 * m as usize;
        let n = poly.len();

        let vertex_sector: Vec<u32> = poly
            .vertices()
            .iter()
            .map(|&v| {
                let d = v - reference;
                sector_of(d.x, d.y, m)
            })
            .collect();

        // Edges arrive in increasing index order, so each sector sees its cyclic
        // run either as one block or as `0..=a` followed by `b..n`.
        let mut runs = vec![RunBuilder::default(); sectors];
        for k in 0..n {
            let sa = vertex_sector[k] as usize;
            let sb = vertex_sector[(k + 1) % n] as usize;
            let span = (sb + sectors - sa) % sectors;
            for step in 0..=span {
                runs[(sa + step) % sectors].push(k as u32);
            }
        }
        let ranges: Vec<SectorRange> = runs.iter().map(|r| r.finish(n as u32)).collect();
        let max_candidates = ranges.iter().map(|r| r.len as usize).max().unwrap_or(0);

        Self {
            polygon: poly.clone(),
            reference,
            m,
            ranges,
            max_candidates,
        }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn sector_count(&self) -> usize {
        self.ranges.len()
    }

    pub fn reference_point(&self) -> Point2 {
        self.reference
    }

    pub fn polygon(&self) -> &ConvexPolygon {
        &self.polygon
    }

    pub fn max_candidates(&self) -> usize {
        self.max_candidates
    }

    /// Cyclic `[first, last]` edge range of sector `s`, `None` if empty.
    pub fn candidate_range(&self, s: SectorId) -> Option<(usize, usize)> {
        let r = self.ranges[s.index()];
        if r.len == 0 {
            return None;
        }
        let n = self.polygon.len();
        Some((r.first as usize, (r.first + r.len - 1) as usize % n))
    }

    /// Edge indices listed for sector `s`, in boundary order.
    pub fn candidates(&self, s: SectorId) -> impl Iterator<Item = usize> + '_ {
        let r = self.ranges[s.index()];
        let n = self.polygon.len();
        (0..r.len as usize).map(move |i| (r.first as usize + i) % n)
    }

    pub fn table_bytes(&self) -> usize {
        self.ranges.len() * std::mem::size_of::<SectorRange>()
    }

    pub fn report(&self) -> String {
        format!(
            "polar m={} maxcand={} bytes={}",
            self.m,
            self.max_candidates,
            self.table_bytes()
        )
    }

    /// Empties one sector. Only for fault-injection tests of the verifier.
    #[doc(hidden)]
    pub fn clear_sector(&mut self, s: SectorId) {
        self.ranges[s.index()] = SectorRange::default();
    }

    pub fn sector_of_point(&self, p: Point2) -> Option<SectorId> {
        sector_index(p - self.reference, self.m).ok()
    }

    pub fn query(&self, p: Point2) -> Containment {
        query(self, p)
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct RunBuilder {
    first: u32,
    len: u32,
    prev: u32,
    gaps: u32,
}

impl RunBuilder {
    fn push(&mut self, k: u32) {
        if self.len == 0 {
            self.first = k;
        } else if k != self.prev + 1 {
            // the block after the gap is where the cyclic run starts
            self.first = k;
            self.gaps += 1;
        }
        self.prev = k;
        self.len += 1;
    }

    fn finish(&self, n: u32) -> SectorRange {
        let wrapped_ok = self.gaps == 0 || (self.gaps == 1 && self.prev == n - 1);
        if self.len == 0 || self.len >= n {
            SectorRange { first: 0, len: self.len.min(n) }
        } else if wrapped_ok {
            SectorRange { first: self.first, len: self.len }
        } else {
            // Only reachable if rounding broke angular order; listing every
            // edge keeps the sector correct.
            debug_assert!(false, "sector run is not contiguous: {self:?}");
            SectorRange { first: 0, len: n }
        }
    }
}

/// O(1) containment: locate the sector of `p`, then test its candidate edges.
pub fn query(grid: &PolarGrid, p: Point2) -> Containment {
    let d = p - grid.reference;
    let band = grid.polygon.band();
    if d.x * d.x + d.y * d.y <= band * band {
        return Containment::Inside;
    }
    let r = grid.ranges[sector_of(d.x, d.y, grid.m) as usize];
    classify_range(grid.polygon.edges(), r.first as usize, r.len as usize, p)
}

#[inline(always)]
fn classify_range(edges: &[EdgePlane], first: usize, len: usize, p: Point2) -> Containment {
    let n = edges.len();
    let mut k = first;
    let mut on_boundary = false;
    for _ in 0..len {
        let e = &edges[k];
        let v = half_plane_side(e, p);
        if v < -e.band {
            return Containment::Outside;
        }
        on_boundary |= v <= e.band;
        k += 1;
        if k == n {
            k = 0;
        }
    }
    if on_boundary {
        Containment::Boundary
    } else {
        Containment::Inside
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::{point_in_polygon_linear, validate_polygon};
    use std::f64::consts::TAU;

    fn regular(n: usize) -> ConvexPolygon {
        let pts: Vec<Point2> = (0..n)
            .map(|k| {
                let a = k as f64 * TAU / n as f64;
                Point2::new(a.cos(), a.sin())
            })
            .collect();
        validate_polygon(&pts).unwrap()
    }

    fn square2() -> ConvexPolygon {
        validate_polygon(&[
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(2.0, 2.0),
            Point2::new(0.0, 2.0),
        ])
        .unwrap()
    }

    fn sid(x: f64, y: f64, m: u32) -> u32 {
        sector_index(Vector2::new(x, y), m).unwrap().0
    }

    #[test]
    fn sector_index_examples() {
        assert_eq!(sid(1.0, 0.0, 4), 0);
        assert_eq!(sid(2.0, 1.0, 4), 2);
        assert_eq!(sid(1.0, 2.0, 4), 5);
        assert_eq!(sid(1.0, 1.0, 4), 4);
        assert_eq!(sector_index(Vector2::default(), 4), Err(GeometryError::ZeroVector));
    }

    #[test]
    fn sector_examples_agree_with_exact_boundaries() {
        // (2,1): phi in [atan(2/4), atan(3/4))
        let (_, phi) = polar_exact(Vector2::new(2.0, 1.0)).unwrap();
        assert!((0.5f64).atan() <= phi && phi < (0.75f64).atan());
        // (1,2): octant 1 boundaries sit at 90deg - atan(i/4); local id 1 covers
        // (90 - atan(3/4), 90 - atan(2/4)], and (1,2) lies on its upper ray
        let (_, phi) = polar_exact(Vector2::new(1.0, 2.0)).unwrap();
        let q = std::f64::consts::FRAC_PI_2;
        assert!(q - 0.75f64.atan() < phi && phi <= q - 0.5f64.atan());
    }

    #[test]
    fn axis_and_diagonal_ties_go_counterclockwise() {
        let m = 3;
        let cases = [
            ((1.0, 0.0), 0),
            ((1.0, 1.0), 1),
            ((0.0, 1.0), 2),
            ((-1.0, 1.0), 3),
            ((-1.0, 0.0), 4),
            ((-1.0, -1.0), 5),
            ((0.0, -1.0), 6),
            ((1.0, -1.0), 7),
        ];
        for ((x, y), octant) in cases {
            let s = sid(x, y, m);
            assert_eq!(s / m, octant, "direction ({x},{y})");
            // the boundary ray starts its octant
            assert_eq!(s % m, 0, "direction ({x},{y})");
            let start = sector_start_direction(SectorId(s), m);
            assert_eq!(sid(start.x, start.y, m), s);
        }
    }

    #[test]
    fn auto_m_examples() {
        assert_eq!(auto_m(&square2()), 1);
        assert_eq!(auto_m(&regular(64)), 16);

        let needle: Vec<Point2> = (0..16)
            .map(|k| {
                let a = (k as f64 + 0.5) * TAU / 16.0;
                Point2::new(a.cos(), 1e-6 * a.sin())
            })
            .collect();
        let needle = validate_polygon(&needle).unwrap();
        assert!(min_edge_span(&needle) < (1.0f64 / 4096.0).atan());
        assert_eq!(auto_m(&needle), M_CAP);
    }

    #[test]
    fn square_grid_lists_two_edges_at_corners() {
        let g = build(&square2(), Some(1));
        assert_eq!(g.sector_count(), 8);
        assert_eq!(g.max_candidates(), 2);
        for s in 0..8u32 {
            let count = g.candidates(SectorId(s)).count();
            // corners at 45, 135, 225, 315 degrees start the odd octants
            assert_eq!(count, if s % 2 == 1 { 2 } else { 1 }, "sector {s}");
        }
        assert_eq!(g.report(), "polar m=1 maxcand=2 bytes=64");
    }

    #[test]
    fn wrapped_range_is_reported_cyclically() {
        let g = build(&square2(), Some(1));
        // sector 7 (315..360 deg) holds edge 0 (bottom) and edge 1 (right)
        assert_eq!(g.candidate_range(SectorId(7)), Some((0, 1)));
        // sector 5 holds edges 3 and 0: a range that wraps past n-1
        assert_eq!(g.candidate_range(SectorId(5)), Some((3, 0)));
    }

    #[test]
    fn query_examples() {
        let g = build(&square2(), None);
        let q = |x, y| g.query(Point2::new(x, y));
        assert_eq!(q(1.0, 1.0), Containment::Inside);
        assert_eq!(q(1.5, 1.0), Containment::Inside);
        assert_eq!(q(2.5, 1.0), Containment::Outside);
        assert_eq!(q(2.0, 1.7), Containment::Boundary);
    }

    #[test]
    fn hexagon_needs_at_most_two_candidates() {
        let hex = regular(6);
        let g = build(&hex, None);
        assert!(g.max_candidates() <= 2, "{}", g.report());
    }

    #[test]
    fn cleared_sector_changes_verdicts() {
        let poly = regular(12);
        let mut g = build(&poly, Some(2));
        let p = Point2::new(3.0, 0.1);
        assert_eq!(g.query(p), Containment::Outside);
        g.clear_sector(g.sector_of_point(p).unwrap());
        assert_eq!(g.query(p), Containment::Inside);
        assert_eq!(point_in_polygon_linear(&poly, p), Containment::Outside);
    }
}
