//! Validated convex polygons and the two preprocessing-free containment tests:
//! the O(N) half-plane sweep and the O(lg N) binary search over the vertex fan.

use crate::error::GeometryError;
use crate::geometry::{ensure_finite2, fold_sides, Containment, Point2, Tolerance, Vector2};

/// Inner half-plane of one polygon edge: `normal · p - offset >= 0` inside.
///
/// The normal is the edge vector rotated a quarter turn counterclockwise and is
/// not normalized, so a side test costs two multiplications and two additions.
/// `band` is the matching absolute tolerance, `eps_rel * diameter * |edge|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgePlane {
    pub normal: Vector2,
    pub offset: f64,
    pub band: f64,
}

impl EdgePlane {
    fn through(a: Point2, b: Point2, abs_band: f64) -> Self {
        let d = b - a;
        let normal = d.perp();
        Self {
            normal,
            offset: normal.x * a.x + normal.y * a.y,
            band: abs_band * d.norm(),
        }
    }
}

/// Signed side value of `p` against an edge; positive on the inner side.
#[inline(always)]
pub fn half_plane_side(edge: &EdgePlane, p: Point2) -> f64 {
    edge.normal.x * p.x + edge.normal.y * p.y - edge.offset
}

/// A strictly convex polygon with counterclockwise vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Point2>,
    edges: Vec<EdgePlane>,
    diameter: f64,
    tolerance: Tolerance,
    reference: Point2,
}

/// Validates with the default tolerance.
pub fn validate_polygon(raw: &[Point2]) -> Result<ConvexPolygon, GeometryError> {
    ConvexPolygon::new(raw, Tolerance::default())
}

impl ConvexPolygon {
    /// Validates `raw` and precomputes the edge half-planes.
    ///
    /// Clockwise input is reversed (keeping vertex 0 first).
    pub fn new(raw: &[Point2], tolerance: Tolerance) -> Result<Self, GeometryError> {
        let n = raw.len();
        if n < 3 {
            return Err(GeometryError::TooFewVertices { min: 3, got: n });
        }
        for &p in raw {
            ensure_finite2(p)?;
        }

        let mut vertices = raw.to_vec();
        if signed_area2(&vertices) < 0.0 {
            vertices[1..].reverse();
        }

        let diameter = diameter2(&vertices);
        let abs_band = tolerance.band(diameter);
        if diameter == 0.0 {
            return Err(GeometryError::DegenerateEdge { index: 0 });
        }

        let mut turning = 0.0;
        for k in 0..n {
            let a = vertices[k];
            let b = vertices[(k + 1) % n];
            let c = vertices[(k + 2) % n];
            let turn_at = (k + 1) % n;
            if (b - a).norm() <= abs_band {
                return Err(GeometryError::DegenerateEdge { index: turn_at });
            }
            let chord = (c - a).norm();
            if chord <= abs_band {
                // b is a spike going out and straight back
                return Err(GeometryError::NonConvex { index: turn_at });
            }
            let cross = (b - a).cross(c - b);
            let height = cross / chord;
            if height < -abs_band {
                return Err(GeometryError::NonConvex { index: turn_at });
            }
            if height <= abs_band {
                return Err(GeometryError::DegenerateEdge { index: turn_at });
            }
            turning += cross.atan2((b - a).dot(c - b));
        }
        // Locally convex but winding more than once (star polygons).
        if turning > 3.0 * std::f64::consts::PI {
            return Err(GeometryError::NonConvex { index: 0 });
        }

        let edges: Vec<EdgePlane> = (0..n)
            .map(|k| EdgePlane::through(vertices[k], vertices[(k + 1) % n], abs_band))
            .collect();

        let reference = pick_reference_point(&vertices, &edges);
        Ok(Self {
            vertices,
            edges,
            diameter,
            tolerance,
            reference,
        })
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgePlane] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    pub fn tolerance(&self) -> Tolerance {
        self.tolerance
    }

    /// Absolute tolerance `eps_rel * diameter`.
    pub fn band(&self) -> f64 {
        self.tolerance.band(self.diameter)
    }

    /// Strictly interior point: midpoint of vertices 0 and N/2, or the vertex
    /// centroid when that midpoint is not strictly inside.
    pub fn reference_point(&self) -> Point2 {
        self.reference
    }

    /// Endpoints of edge `k`.
    pub fn edge_endpoints(&self, k: usize) -> (Point2, Point2) {
        (self.vertices[k], self.vertices[(k + 1) % self.len()])
    }

    /// Same polygon with a different tolerance.
    pub fn with_tolerance(&self, tolerance: Tolerance) -> Result<Self, GeometryError> {
        Self::new(&self.vertices, tolerance)
    }
}

fn signed_area2(vertices: &[Point2]) -> f64 {
    let n = vertices.len();
    (0..n)
        .map(|k| {
            let a = vertices[k];
            let b = vertices[(k + 1) % n];
            a.x * b.y - b.x * a.y
        })
        .sum()
}

fn diameter2(vertices: &[Point2]) -> f64 {
    let mut best: f64 = 0.0;
    for (i, &a) in vertices.iter().enumerate() {
        for &b in &vertices[i + 1..] {
            best = best.max(a.distance(b));
        }
    }
    best
}

fn strictly_inside(edges: &[EdgePlane], p: Point2) -> bool {
    edges.iter().all(|e| half_plane_side(e, p) > e.band)
}

fn pick_reference_point(vertices: &[Point2], edges: &[EdgePlane]) -> Point2 {
    let n = vertices.len();
    let mid = vertices[0].midpoint(vertices[n / 2]);
    if strictly_inside(edges, mid) {
        return mid;
    }
    let inv = 1.0 / n as f64;
    let (sx, sy) = vertices
        .iter()
        .fold((0.0, 0.0), |(sx, sy), v| (sx + v.x, sy + v.y));
    Point2::new(sx * inv, sy * inv)
}

/// O(N) test: every edge half-plane is evaluated (early exit on a clear outside).
pub fn point_in_polygon_linear(poly: &ConvexPolygon, p: Point2) -> Containment {
    fold_sides(poly.edges.iter().map(|e| (half_plane_side(e, p), e.band)))
}

/// O(lg N) test: binary search for the fan wedge `[v_k, v_k+1]` around the
/// reference point, then a single half-plane test against edge `k`.
pub fn point_in_polygon_logn(poly: &ConvexPolygon, p: Point2) -> Containment {
    let Some(k) = fan_wedge(poly, p) else {
        return Containment::Inside;
    };
    let e = &poly.edges[k];
    let value = half_plane_side(e, p);
    if value > e.band {
        Containment::Inside
    } else if value < -e.band {
        Containment::Outside
    } else {
        Containment::Boundary
    }
}

/// Index of the fan wedge containing `p`, or `None` when `p` is the pivot.
pub(crate) fn fan_wedge(poly: &ConvexPolygon, p: Point2) -> Option<usize> {
    let c = poly.reference;
    let w = p - c;
    if w.is_zero() {
        return None;
    }
    let r = poly.vertices[0] - c;
    // Angles measured counterclockwise from r, split into [0, pi) and [pi, 2pi).
    let half = |u: Vector2| -> u8 {
        let cr = r.cross(u);
        if cr > 0.0 || (cr == 0.0 && r.dot(u) > 0.0) {
            0
        } else {
            1
        }
    };
    let hw = half(w);
    let not_after = |u: Vector2| -> bool {
        let hu = half(u);
        hu < hw || (hu == hw && u.cross(w) >= 0.0)
    };
    let (mut lo, mut hi) = (0usize, poly.len());
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if not_after(poly.vertices[mid] - c) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(lo)
}
