//! Validated convex polyhedra with outward face planes and the O(F) plane sweep.

use std::collections::HashMap;

use crate::error::GeometryError;
use crate::geometry::{fold_sides, Containment, Point3, Tolerance, Vector3};

/// Outward face plane: `normal · p <= offset` on the inner side. `normal` is unit length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FacePlane {
    pub normal: Vector3,
    pub offset: f64,
}

impl FacePlane {
    /// Signed distance, positive outside.
    #[inline(always)]
    pub fn signed_distance(&self, p: Point3) -> f64 {
        self.normal.x * p.x + self.normal.y * p.y + self.normal.z * p.z - self.offset
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolyhedron {
    vertices: Vec<Point3>,
    faces: Vec<Vec<usize>>,
    planes: Vec<FacePlane>,
    diameter: f64,
    tolerance: Tolerance,
    centroid: Point3,
}

/// Validates with the default tolerance.
pub fn validate_polyhedron(
    vertices: &[Point3],
    faces: &[Vec<usize>],
) -> Result<ConvexPolyhedron, GeometryError> {
    ConvexPolyhedron::new(vertices, faces, Tolerance::default())
}

impl ConvexPolyhedron {
    /// Validates the surface and orients each ring so the vertex centroid lies on
    /// the inner side of its plane.
    pub fn new(
        vertices: &[Point3],
        faces: &[Vec<usize>],
        tolerance: Tolerance,
    ) -> Result<Self, GeometryError> {
        if vertices.len() < 4 {
            return Err(GeometryError::TooFewVertices { min: 4, got: vertices.len() });
        }
        if faces.len() < 4 {
            return Err(GeometryError::TooFewVertices { min: 4, got: faces.len() });
        }
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        for (f, ring) in faces.iter().enumerate() {
            if ring.len() < 3 {
                return Err(GeometryError::TooFewVertices { min: 3, got: ring.len() });
            }
            if let Some(&index) = ring.iter().find(|&&i| i >= vertices.len()) {
                return Err(GeometryError::IndexOutOfRange { face: f, index, len: vertices.len() });
            }
        }

        let mut diameter: f64 = 0.0;
        for (i, &a) in vertices.iter().enumerate() {
            for &b in &vertices[i + 1..] {
                diameter = diameter.max(a.distance(b));
            }
        }
        let band = tolerance.band(diameter);

        let inv = 1.0 / vertices.len() as f64;
        let sum = vertices
            .iter()
            .fold(Vector3::default(), |acc, v| acc + v.to_vector());
        let centroid = Point3::new(sum.x * inv, sum.y * inv, sum.z * inv);

        check_closed(faces)?;

        let mut rings = Vec::with_capacity(faces.len());
        let mut planes = Vec::with_capacity(faces.len());
        for (f, ring) in faces.iter().enumerate() {
            let mut ring = ring.clone();
            let newell = newell_normal(vertices, &ring);
            let len = newell.norm();
            if len == 0.0 || !len.is_finite() {
                return Err(GeometryError::DegenerateEdge { index: f });
            }
            let mut normal = newell * (1.0 / len);
            let anchor = ring_centroid(vertices, &ring);
            let mut offset = normal.dot(anchor.to_vector());
            if normal.dot(centroid.to_vector()) > offset {
                ring.reverse();
                normal = -normal;
                offset = -offset;
            }
            let plane = FacePlane { normal, offset };
            let deviation = ring
                .iter()
                .map(|&i| plane.signed_distance(vertices[i]).abs())
                .fold(0.0, f64::max);
            if deviation > band {
                return Err(GeometryError::NonPlanarFace { face: f, deviation });
            }
            rings.push(ring);
            planes.push(plane);
        }

        for (f, plane) in planes.iter().enumerate() {
            if vertices.iter().any(|&v| plane.signed_distance(v) > band) {
                return Err(GeometryError::NonConvex { index: f });
            }
        }

        Ok(Self {
            vertices: vertices.to_vec(),
            faces: rings,
            planes,
            diameter,
            tolerance,
            centroid,
        })
    }

    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    /// Vertex rings, oriented counterclockwise seen from outside.
    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn planes(&self) -> &[FacePlane] {
        &self.planes
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    pub fn tolerance(&self) -> Tolerance {
        self.tolerance
    }

    pub fn band(&self) -> f64 {
        self.tolerance.band(self.diameter)
    }

    /// Average of all vertices.
    pub fn vertex_centroid(&self) -> Point3 {
        self.centroid
    }

    /// Average of the vertices of face `f`.
    pub fn face_centroid(&self, f: usize) -> Point3 {
        ring_centroid(&self.vertices, &self.faces[f])
    }
}

fn newell_normal(vertices: &[Point3], ring: &[usize]) -> Vector3 {
    let mut n = Vector3::default();
    for (k, &i) in ring.iter().enumerate() {
        let a = vertices[i];
        let b = vertices[ring[(k + 1) % ring.len()]];
        n.x += (a.y - b.y) * (a.z + b.z);
        n.y += (a.z - b.z) * (a.x + b.x);
        n.z += (a.x - b.x) * (a.y + b.y);
    }
    n
}

fn ring_centroid(vertices: &[Point3], ring: &[usize]) -> Point3 {
    let inv = 1.0 / ring.len() as f64;
    let s = ring
        .iter()
        .fold(Vector3::default(), |acc, &i| acc + vertices[i].to_vector());
    Point3::new(s.x * inv, s.y * inv, s.z * inv)
}

fn check_closed(faces: &[Vec<usize>]) -> Result<(), GeometryError> {
    let mut uses: HashMap<(usize, usize), usize> = HashMap::new();
    for ring in faces {
        for (k, &a) in ring.iter().enumerate() {
            let b = ring[(k + 1) % ring.len()];
            *uses.entry((a.min(b), a.max(b))).or_default() += 1;
        }
    }
    let mut bad: Vec<_> = uses.into_iter().filter(|&(_, c)| c != 2).collect();
    bad.sort_unstable();
    match bad.first() {
        Some(&((a, b), count)) => Err(GeometryError::OpenSurface { a, b, count }),
        None => Ok(()),
    }
}

/// O(F) test against every face plane.
pub fn point_in_polyhedron_linear(ph: &ConvexPolyhedron, p: Point3) -> Containment {
    let band = ph.band();
    fold_sides(ph.planes.iter().map(|pl| (-pl.signed_distance(p), band)))
}
