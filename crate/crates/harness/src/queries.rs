//! Query point mixtures.
//!
//! Points come in blocks of ten, at fixed offsets within each block:
//!
//! | offset | point |
//! |--------|-------|
//! | 0..6   | uniform in the bounding box scaled 2x about its center |
//! | 6, 7   | a vertex or boundary sample pushed `+1e-9 * diameter` and `-1e-9 * diameter` along the outward normal |
//! | 8      | an exact vertex |
//! | 9      | an exact boundary sample (edge point in 2D, face point in 3D) |
//!
//! A trailing partial block is cut off after `count` points.

use convex_locate::{ConvexPolygon, ConvexPolyhedron, Point2, Point3, Vector2, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const BLOCK: usize = 10;
pub const DISPLACED_OUT: usize = 6;
pub const DISPLACED_IN: usize = 7;
pub const EXACT_VERTEX: usize = 8;
pub const EXACT_BOUNDARY: usize = 9;

/// Relative push of the boundary-adjacent pair.
pub const DISPLACEMENT: f64 = 1e-9;

pub fn gen_queries_2d(poly: &ConvexPolygon, count: usize, seed: u64) -> Vec<Point2> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = poly.vertices();
    let n = v.len();
    let outward: Vec<Vector2> = poly.edges().iter().map(|e| (-e.normal).normalized()).collect();
    let (lo, hi) = v.iter().fold((v[0], v[0]), |(lo, hi), p| {
        (Point2::new(lo.x.min(p.x), lo.y.min(p.y)), Point2::new(hi.x.max(p.x), hi.y.max(p.y)))
    });
    let (lo, hi) = (lo - (hi - lo) * 0.5, hi + (hi - lo) * 0.5);
    let step = DISPLACEMENT * poly.diameter();

    let mut out = Vec::with_capacity(count + BLOCK);
    while out.len() < count {
        for _ in 0..6 {
            out.push(Point2::new(rng.gen_range(lo.x..=hi.x), rng.gen_range(lo.y..=hi.y)));
        }
        let k = rng.gen_range(0..n);
        let (anchor, normal) = if rng.gen_bool(0.5) {
            (v[k], (outward[k] + outward[(k + n - 1) % n]).normalized())
        } else {
            let t = rng.gen_range(0.0..1.0);
            (v[k] + (v[(k + 1) % n] - v[k]) * t, outward[k])
        };
        out.push(anchor + normal * step);
        out.push(anchor - normal * step);
        out.push(v[rng.gen_range(0..n)]);
        let k = rng.gen_range(0..n);
        let t = rng.gen_range(0.0..1.0);
        out.push(v[k] + (v[(k + 1) % n] - v[k]) * t);
    }
    out.truncate(count);
    out
}

pub fn gen_queries_3d(ph: &ConvexPolyhedron, count: usize, seed: u64) -> Vec<Point3> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = ph.vertices();
    let mut vertex_normal = vec![Vector3::default(); v.len()];
    for (ring, plane) in ph.faces().iter().zip(ph.planes()) {
        for &i in ring {
            vertex_normal[i] = vertex_normal[i] + plane.normal;
        }
    }
    for n in &mut vertex_normal {
        *n = n.normalized();
    }
    let (lo, hi) = v.iter().fold((v[0], v[0]), |(lo, hi), p| {
        (
            Point3::new(lo.x.min(p.x), lo.y.min(p.y), lo.z.min(p.z)),
            Point3::new(hi.x.max(p.x), hi.y.max(p.y), hi.z.max(p.z)),
        )
    });
    let (lo, hi) = (lo - (hi - lo) * 0.5, hi + (hi - lo) * 0.5);
    let step = DISPLACEMENT * ph.diameter();

    let mut out = Vec::with_capacity(count + BLOCK);
    while out.len() < count {
        for _ in 0..6 {
            out.push(Point3::new(
                rng.gen_range(lo.x..=hi.x),
                rng.gen_range(lo.y..=hi.y),
                rng.gen_range(lo.z..=hi.z),
            ));
        }
        let (anchor, normal) = if rng.gen_bool(0.5) {
            let i = rng.gen_range(0..v.len());
            (v[i], vertex_normal[i])
        } else {
            let f = rng.gen_range(0..ph.face_count());
            (face_sample(ph, f, &mut rng), ph.planes()[f].normal)
        };
        out.push(anchor + normal * step);
        out.push(anchor - normal * step);
        out.push(v[rng.gen_range(0..v.len())]);
        let f = rng.gen_range(0..ph.face_count());
        out.push(face_sample(ph, f, &mut rng));
    }
    out.truncate(count);
    out
}

/// Uniform point on a random fan triangle of face `f`.
fn face_sample(ph: &ConvexPolyhedron, f: usize, rng: &mut ChaCha8Rng) -> Point3 {
    let ring = &ph.faces()[f];
    let v = ph.vertices();
    let k = rng.gen_range(1..ring.len() - 1);
    let (a, b, c) = (v[ring[0]], v[ring[k]], v[ring[k + 1]]);
    let (mut s, mut t) = (rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0));
    if s + t > 1.0 {
        (s, t) = (1.0 - s, 1.0 - t);
    }
    a + (b - a) * s + (c - a) * t
}
