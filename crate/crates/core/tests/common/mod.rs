#![allow(dead_code)]

use std::f64::consts::TAU;

use convex_locate::{validate_polygon, validate_polyhedron, ConvexPolygon, ConvexPolyhedron, Point2, Point3};
use rand::Rng;

pub fn regular(n: usize, phase: f64) -> ConvexPolygon {
    let pts: Vec<Point2> = (0..n)
        .map(|k| {
            let a = phase + k as f64 * TAU / n as f64;
            Point2::new(a.cos(), a.sin())
        })
        .collect();
    validate_polygon(&pts).unwrap()
}

/// Sorted random angles on an ellipse; retries until the validator accepts.
pub fn random_convex(rng: &mut impl Rng, n: usize) -> ConvexPolygon {
    loop {
        let mut angles: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..TAU)).collect();
        angles.sort_by(f64::total_cmp);
        let (a, b) = (rng.gen_range(0.5..3.0), rng.gen_range(0.5..3.0));
        let (cx, cy) = (rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
        let pts: Vec<Point2> = angles
            .iter()
            .map(|t| Point2::new(cx + a * t.cos(), cy + b * t.sin()))
            .collect();
        if let Ok(p) = validate_polygon(&pts) {
            return p;
        }
    }
}

pub fn icosahedron() -> ConvexPolyhedron {
    let g = (1.0 + 5f64.sqrt()) / 2.0;
    let mut v = Vec::new();
    for s in [-1.0, 1.0] {
        for t in [-1.0, 1.0] {
            v.push(Point3::new(0.0, s, t * g));
            v.push(Point3::new(s, t * g, 0.0));
            v.push(Point3::new(t * g, 0.0, s));
        }
    }
    // faces are the triples of mutually adjacent vertices (edge length 2)
    let adjacent = |i: usize, j: usize| (v[i].distance(v[j]) - 2.0).abs() < 1e-9;
    let mut faces = Vec::new();
    for i in 0..12 {
        for j in i + 1..12 {
            for k in j + 1..12 {
                if adjacent(i, j) && adjacent(j, k) && adjacent(i, k) {
                    faces.push(vec![i, j, k]);
                }
            }
        }
    }
    validate_polyhedron(&v, &faces).unwrap()
}

/// Random linear map with singular values in [1, 4], plus a translation.
pub fn random_affine(ph: &ConvexPolyhedron, rng: &mut impl Rng) -> ConvexPolyhedron {
    let rot = |rng: &mut dyn rand::RngCore| {
        // random rotation from a normalized quaternion
        let q: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        let [w, x, y, z] = q.map(|c| c / n);
        [
            [1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y - w * z), 2.0 * (x * z + w * y)],
            [2.0 * (x * y + w * z), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z - w * x)],
            [2.0 * (x * z - w * y), 2.0 * (y * z + w * x), 1.0 - 2.0 * (x * x + y * y)],
        ]
    };
    let (r1, r2) = (rot(rng), rot(rng));
    let s: [f64; 3] = std::array::from_fn(|_| rng.gen_range(1.0..4.0));
    let t: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-5.0..5.0));
    let apply = |m: &[[f64; 3]; 3], p: [f64; 3]| -> [f64; 3] {
        std::array::from_fn(|r| m[r][0] * p[0] + m[r][1] * p[1] + m[r][2] * p[2])
    };
    let v: Vec<Point3> = ph
        .vertices()
        .iter()
        .map(|p| {
            let a = apply(&r2, [p.x, p.y, p.z]);
            let b = apply(&r1, [a[0] * s[0], a[1] * s[1], a[2] * s[2]]);
            Point3::new(b[0] + t[0], b[1] + t[1], b[2] + t[2])
        })
        .collect();
    validate_polyhedron(&v, ph.faces()).unwrap()
}

/// Edge hit first by the ray `origin + t d`, by brute force over all edges.
pub fn ray_exit_edge(poly: &ConvexPolygon, origin: Point2, d: convex_locate::Vector2) -> usize {
    let mut best = (f64::INFINITY, usize::MAX);
    for (k, e) in poly.edges().iter().enumerate() {
        let rate = e.normal.dot(d);
        if rate < 0.0 {
            let t = (e.normal.x * origin.x + e.normal.y * origin.y - e.offset) / -rate;
            if t < best.0 {
                best = (t, k);
            }
        }
    }
    best.1
}

/// Face hit first by the ray `origin + t d`, by brute force over all planes.
pub fn ray_exit_face(ph: &ConvexPolyhedron, origin: Point3, d: convex_locate::Vector3) -> usize {
    let mut best = (f64::INFINITY, usize::MAX);
    for (f, pl) in ph.planes().iter().enumerate() {
        let rate = pl.normal.dot(d);
        if rate > 0.0 {
            let t = -pl.signed_distance(origin) / rate;
            if t < best.0 {
                best = (t, f);
            }
        }
    }
    best.1
}
