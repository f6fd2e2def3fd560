//! Cubemap subdivision of directions around an interior reference point.
//!
//! A direction is assigned to the cube face of its dominant axis and then to an
//! `m x m` cell on that face by the two minor-to-major ratios. Each cell stores
//! the polyhedron faces that rays through its pyramid can hit.

mod clip;
mod raster;

use std::fmt;

pub use clip::clip_face_to_cone;
pub use raster::conservative_raster;

use crate::error::GeometryError;
use crate::geometry::{Containment, Point3, Vector3};
use crate::polyhedron::ConvexPolyhedron;

/// Upper bound for the default resolution.
pub const CUBE_M_CAP: u32 = 256;

/// Relative widening of every direction cone during the build. Faces that only
/// graze a cone boundary after rounding are still listed.
const CONE_SLACK: f64 = 1e-9;
/// Growth of each cell box, in `(u, v)` units, during rasterization.
const CELL_PAD: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CubeFace {
    PosX,
    NegX,
    PosY,
    NegY,
    PosZ,
    NegZ,
}

impl CubeFace {
    pub const ALL: [CubeFace; 6] = [
        CubeFace::PosX,
        CubeFace::NegX,
        CubeFace::PosY,
        CubeFace::NegY,
        CubeFace::PosZ,
        CubeFace::NegZ,
    ];

    /// `(major, u, v)` coordinate axes, 0 = x, 1 = y, 2 = z.
    pub fn axes(self) -> (usize, usize, usize) {
        match self {
            CubeFace::PosX | CubeFace::NegX => (0, 1, 2),
            CubeFace::PosY | CubeFace::NegY => (1, 0, 2),
            CubeFace::PosZ | CubeFace::NegZ => (2, 0, 1),
        }
    }

    pub fn sign(self) -> f64 {
        match self {
            CubeFace::PosX | CubeFace::PosY | CubeFace::PosZ => 1.0,
            _ => -1.0,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CubeFace::PosX => "+X",
            CubeFace::NegX => "-X",
            CubeFace::PosY => "+Y",
            CubeFace::NegY => "-Y",
            CubeFace::PosZ => "+Z",
            CubeFace::NegZ => "-Z",
        }
    }
}

impl fmt::Display for CubeFace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CellId {
    pub face: CubeFace,
    pub i: u32,
    pub j: u32,
}

impl CellId {
    /// Position in a face-major, row-major table of `6 m^2` cells.
    pub fn flat(self, m: u32) -> usize {
        let m = m as usize;
        self.face.index() * m * m + self.j as usize * m + self.i as usize
    }

    /// True if `d` lies in the closed pyramid of this cell.
    pub fn cone_contains(self, d: Vector3, m: u32) -> bool {
        let (major, a, b) = self.face.axes();
        let depth = self.face.sign() * clip::coord(d, major);
        if depth <= 0.0 {
            return false;
        }
        let w = 2.0 / m as f64;
        let inside = |t: f64, k: u32| {
            let lo = -1.0 + k as f64 * w;
            lo <= t && t <= lo + w
        };
        let (u, v) = (clip::coord(d, a) / depth, clip::coord(d, b) / depth);
        inside(u, self.i) && inside(v, self.j)
    }
}

/// Cell of a non-zero direction. Ties between axes go to x, then y.
pub fn cell_index(d: Vector3, m: u32) -> Result<CellId, GeometryError> {
    if d.is_zero() {
        return Err(GeometryError::ZeroVector);
    }
    let m = m.max(1);
    let (face, i, j) = cell_of(d, m);
    Ok(CellId { face: CubeFace::ALL[face as usize], i, j })
}

#[inline(always)]
fn cell_of(d: Vector3, m: u32) -> (u32, u32, u32) {
    let (ax, ay, az) = (d.x.abs(), d.y.abs(), d.z.abs());
    let (face, u, v) = if ax >= ay && ax >= az {
        (if d.x > 0.0 { 0 } else { 1 }, d.y / ax, d.z / ax)
    } else if ay >= az {
        (if d.y > 0.0 { 2 } else { 3 }, d.x / ay, d.z / ay)
    } else {
        (if d.z > 0.0 { 4 } else { 5 }, d.x / az, d.y / az)
    };
    let half = 0.5 * m as f64;
    let bin = |t: f64| (((t + 1.0) * half) as u32).min(m - 1);
    (face, bin(u), bin(v))
}

/// Vertex centroid, checked to be strictly inside every face plane.
pub fn reference_point3(ph: &ConvexPolyhedron) -> Result<Point3, GeometryError> {
    let c = ph.vertex_centroid();
    let band = ph.band();
    match ph.planes().iter().position(|pl| pl.signed_distance(c) >= -band) {
        Some(face) => Err(GeometryError::DegenerateInterior { face }),
        None => Ok(c),
    }
}

/// Smallest power of two `>= ceil(sqrt(F))`, capped at [`CUBE_M_CAP`].
pub fn default_m(face_count: usize) -> u32 {
    let target = (face_count as f64).sqrt().ceil().max(1.0) as u32;
    target.next_power_of_two().min(CUBE_M_CAP)
}

/// Per-cell candidate face lists for one polyhedron, stored compressed.
#[derive(Debug, Clone)]
pub struct CubeGrid {
    polyhedron: ConvexPolyhedron,
    reference: Point3,
    m: u32,
    offsets: Vec<u32>,
    faces: Vec<u32>,
    max_candidates: usize,
}

pub fn build3(ph: &ConvexPolyhedron, m: Option<u32>) -> Result<CubeGrid, GeometryError> {
    CubeGrid::new(ph, m)
}

impl CubeGrid {
    pub fn new(ph: &ConvexPolyhedron, m: Option<u32>) -> Result<Self, GeometryError> {
        let reference = reference_point3(ph)?;
        let m = m.unwrap_or_else(|| default_m(ph.face_count())).max(1);
        let per_face = (m * m) as usize;
        let mut lists: Vec<Vec<u32>> = vec![Vec::new(); 6 * per_face];

        for f in 0..ph.face_count() {
            for cf in CubeFace::ALL {
                let uv = clip_face_to_cone(ph, f, cf, reference, CONE_SLACK);
                if uv.is_empty() {
                    continue;
                }
                let base = cf.index() * per_face;
                raster::raster_padded(&uv, m, CELL_PAD, |i, j| {
                    lists[base + (j * m + i) as usize].push(f as u32);
                });
            }
        }

        let mut offsets = Vec::with_capacity(lists.len() + 1);
        let mut faces = Vec::new();
        offsets.push(0);
        for l in &lists {
            faces.extend_from_slice(l);
            offsets.push(faces.len() as u32);
        }
        let max_candidates = lists.iter().map(Vec::len).max().unwrap_or(0);

        Ok(Self {
            polyhedron: ph.clone(),
            reference,
            m,
            offsets,
            faces,
            max_candidates,
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn cell_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn reference_point(&self) -> Point3 {
        self.reference
    }

    pub fn polyhedron(&self) -> &ConvexPolyhedron {
        &self.polyhedron
    }

    pub fn max_candidates(&self) -> usize {
        self.max_candidates
    }

    pub fn candidates(&self, cell: CellId) -> &[u32] {
        let k = cell.flat(self.m);
        &self.faces[self.offsets[k] as usize..self.offsets[k + 1] as usize]
    }

    pub fn table_bytes(&self) -> usize {
        (self.offsets.len() + self.faces.len()) * std::mem::size_of::<u32>()
    }

    pub fn report(&self) -> String {
        format!(
            "cube m={} maxcand={} cells={} bytes={}",
            self.m,
            self.max_candidates,
            self.cell_count(),
            self.table_bytes()
        )
    }

    /// Empties one cell. Only for fault-injection tests of the verifier.
    #[doc(hidden)]
    pub fn clear_cell(&mut self, cell: CellId) {
        let k = cell.flat(self.m);
        let (lo, hi) = (self.offsets[k] as usize, self.offsets[k + 1] as usize);
        self.faces.drain(lo..hi);
        let removed = (hi - lo) as u32;
        for o in &mut self.offsets[k + 1..] {
            *o -= removed;
        }
    }

    pub fn cell_of_point(&self, p: Point3) -> Option<CellId> {
        cell_index(p - self.reference, self.m).ok()
    }

    pub fn query(&self, p: Point3) -> Containment {
        query3(self, p)
    }
}

/// O(1) containment: locate the cell of `p`, then test its candidate planes.
pub fn query3(grid: &CubeGrid, p: Point3) -> Containment {
    let d = p - grid.reference;
    let band = grid.polyhedron.band();
    if d.dot(d) <= band * band {
        return Containment::Inside;
    }
    let (face, i, j) = cell_of(d, grid.m);
    let m = grid.m as usize;
    let k = face as usize * m * m + j as usize * m + i as usize;
    let planes = grid.polyhedron.planes();
    let mut on_boundary = false;
    for &f in &grid.faces[grid.offsets[k] as usize..grid.offsets[k + 1] as usize] {
        let s = planes[f as usize].signed_distance(p);
        if s > band {
            return Containment::Outside;
        }
        on_boundary |= s >= -band;
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
    use crate::geometry::Tolerance;
    use crate::polyhedron::fixtures::{tetrahedron, unit_cube, unit_cube_raw};
    use crate::polyhedron::point_in_polyhedron_linear;

    fn cell(x: f64, y: f64, z: f64, m: u32) -> CellId {
        cell_index(Vector3::new(x, y, z), m).unwrap()
    }

    #[test]
    fn cell_index_examples() {
        assert_eq!(cell(1.0, 0.0, 0.0, 4), CellId { face: CubeFace::PosX, i: 2, j: 2 });
        let c = cell(2.0, 1.0, -1.0, 4);
        assert_eq!(c, CellId { face: CubeFace::PosX, i: 3, j: 1 });
        assert!(c.cone_contains(Vector3::new(2.0, 1.0, -1.0), 4));
        assert_eq!(cell(1.0, 1.0, 1.0, 4), CellId { face: CubeFace::PosX, i: 3, j: 3 });
        assert_eq!(cell_index(Vector3::default(), 4), Err(GeometryError::ZeroVector));
    }

    #[test]
    fn each_axis_maps_to_its_face() {
        let cases = [
            ((0.0, -3.0, 0.5), CubeFace::NegY),
            ((0.1, 0.2, 5.0), CubeFace::PosZ),
            ((-1.0, 0.0, -1.0), CubeFace::NegX),
            ((0.0, 1.0, -1.0), CubeFace::PosY),
        ];
        for ((x, y, z), face) in cases {
            assert_eq!(cell(x, y, z, 8).face, face, "({x},{y},{z})");
        }
    }

    #[test]
    fn reference_points() {
        assert_eq!(reference_point3(&unit_cube()).unwrap(), Point3::new(0.5, 0.5, 0.5));
        assert_eq!(reference_point3(&tetrahedron()).unwrap(), Point3::new(0.0, 0.0, 0.0));
        let (v, f) = unit_cube_raw();
        let moved: Vec<Point3> = v.iter().map(|p| Point3::new(p.x + 10.0, p.y + 10.0, p.z + 10.0)).collect();
        let ph = ConvexPolyhedron::new(&moved, &f, Tolerance::default()).unwrap();
        assert_eq!(reference_point3(&ph).unwrap(), Point3::new(10.5, 10.5, 10.5));
    }

    #[test]
    fn default_m_rule() {
        assert_eq!(default_m(6), 4);
        assert_eq!(default_m(20), 8);
        assert_eq!(default_m(1280), 64);
        assert_eq!(default_m(1_000_000), CUBE_M_CAP);
    }

    #[test]
    fn cube_grid_at_m1() {
        let cube = unit_cube();
        let g = build3(&cube, Some(1)).unwrap();
        assert_eq!(g.cell_count(), 6);
        for cf in CubeFace::ALL {
            let list = g.candidates(CellId { face: cf, i: 0, j: 0 });
            // the aligned face plus the four that touch the cone along edges
            assert_eq!(list.len(), 5, "{cf}");
            let aligned = cube
                .planes()
                .iter()
                .position(|pl| {
                    let (major, _, _) = cf.axes();
                    cf.sign() * clip::coord(pl.normal, major) > 0.5
                })
                .unwrap();
            assert!(list.contains(&(aligned as u32)));
        }
        assert_eq!(g.report(), format!("cube m=1 maxcand=5 cells=6 bytes={}", (7 + 30) * 4));
    }

    #[test]
    fn tetrahedron_cells_are_never_empty() {
        let g = build3(&tetrahedron(), Some(1)).unwrap();
        for cf in CubeFace::ALL {
            assert!(!g.candidates(CellId { face: cf, i: 0, j: 0 }).is_empty(), "{cf}");
        }
    }

    #[test]
    fn query_examples() {
        let g = build3(&unit_cube(), None).unwrap();
        assert_eq!(g.query(Point3::new(0.5, 0.5, 0.5)), Containment::Inside);
        assert_eq!(g.query(Point3::new(0.5, 0.5, 1.5)), Containment::Outside);
        assert_eq!(g.query(Point3::new(0.5, 0.2, 1.0)), Containment::Boundary);
        assert_eq!(g.query(Point3::new(1.0, 1.0, 1.0)), Containment::Boundary);
    }

    #[test]
    fn cleared_cell_changes_verdicts() {
        let cube = unit_cube();
        let mut g = build3(&cube, Some(2)).unwrap();
        let p = Point3::new(2.0, 0.6, 0.6);
        assert_eq!(g.query(p), Containment::Outside);
        g.clear_cell(g.cell_of_point(p).unwrap());
        assert_eq!(g.query(p), Containment::Inside);
        assert_eq!(point_in_polyhedron_linear(&cube, p), Containment::Outside);
        // neighbours keep their lists
        assert_eq!(g.query(Point3::new(0.5, 2.0, 0.5)), Containment::Outside);
    }
}
