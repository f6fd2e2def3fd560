use crate::geometry::{Point2, Point3, Vector3};
use crate::polyhedron::ConvexPolyhedron;

use super::CubeFace;

/// Clips polyhedron face `face` to the direction cone of `cube_face` as seen from
/// `origin`, then centrally projects the result onto that face's `(u, v)` square.
///
/// `slack` widens the cone from `|other| <= major` to `|other| <= (1 + slack) * major`;
/// pass `0.0` for the exact cone. Projected coordinates may then exceed `[-1, 1]`
/// by `slack`. Returns an empty vector when nothing survives.
pub fn clip_face_to_cone(
    ph: &ConvexPolyhedron,
    face: usize,
    cube_face: CubeFace,
    origin: Point3,
    slack: f64,
) -> Vec<Point2> {
    let mut poly: Vec<Vector3> = ph.faces()[face]
        .iter()
        .map(|&i| ph.vertices()[i] - origin)
        .collect();

    let (major, minor_u, minor_v) = cube_face.axes();
    let sign = cube_face.sign();
    let widen = 1.0 + slack;
    for (minor, minor_sign) in [(minor_u, 1.0), (minor_u, -1.0), (minor_v, 1.0), (minor_v, -1.0)] {
        // keep sign * widen * d[major] - minor_sign * d[minor] >= 0
        let f = |d: Vector3| sign * widen * coord(d, major) - minor_sign * coord(d, minor);
        poly = clip_against(&poly, f);
        if poly.is_empty() {
            return Vec::new();
        }
    }

    poly.iter()
        .map(|&d| {
            let depth = sign * coord(d, major);
            Point2::new(coord(d, minor_u) / depth, coord(d, minor_v) / depth)
        })
        .collect()
}

#[inline]
pub(super) fn coord(d: Vector3, axis: usize) -> f64 {
    match axis {
        0 => d.x,
        1 => d.y,
        _ => d.z,
    }
}

/// One Sutherland-Hodgman pass against the half-space `f >= 0` (boundary kept).
fn clip_against(poly: &[Vector3], f: impl Fn(Vector3) -> f64) -> Vec<Vector3> {
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 1);
    for k in 0..n {
        let a = poly[k];
        let b = poly[(k + 1) % n];
        let (fa, fb) = (f(a), f(b));
        let a_in = fa >= 0.0;
        if a_in {
            out.push(a);
        }
        if a_in != (fb >= 0.0) {
            let t = fa / (fa - fb);
            out.push(a + (b - a) * t);
        }
    }
    out
}
