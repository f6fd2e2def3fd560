//! Seeded shape generators and the `family:key=value,...` corpus syntax.

use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_3, TAU};
use std::fmt;
use std::str::FromStr;

use convex_locate::{ConvexPolygon, ConvexPolyhedron, GeometryError, Point2, Point3, Tolerance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::HarnessError;

/// Attempts before the random polygon generator gives up.
pub const MAX_ATTEMPTS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    RandomConvex2d,
    RegularNgon,
    Needle2d,
    GeodesicSphere,
    AffineGeodesic,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::RandomConvex2d => "random-convex-2d",
            Family::RegularNgon => "regular-ngon",
            Family::Needle2d => "needle-2d",
            Family::GeodesicSphere => "geodesic-sphere",
            Family::AffineGeodesic => "affine-geodesic",
        }
    }

    pub fn is_3d(self) -> bool {
        matches!(self, Family::GeodesicSphere | Family::AffineGeodesic)
    }
}

impl FromStr for Family {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [
            Family::RandomConvex2d,
            Family::RegularNgon,
            Family::Needle2d,
            Family::GeodesicSphere,
            Family::AffineGeodesic,
        ]
        .into_iter()
        .find(|f| f.as_str() == s)
        .ok_or_else(|| HarnessError::Corpus(format!("unknown shape family {s:?}")))
    }
}

/// One generated shape. `size` is the vertex count in 2D and the subdivision
/// level in 3D; `thinness` is the needle exponent `k` (y scaled by `10^-k`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorpusSpec {
    pub family: Family,
    pub size: u32,
    pub thinness: u32,
    pub rotation: f64,
    pub seed: u64,
}

impl CorpusSpec {
    pub fn new(family: Family, size: u32) -> Self {
        Self { family, size, thinness: 0, rotation: 0.0, seed: 0 }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_rotation(mut self, rotation: f64) -> Self {
        self.rotation = rotation;
        self
    }

    pub fn with_thinness(mut self, k: u32) -> Self {
        self.thinness = k;
        self
    }

    /// Parses `family[:key=value,...]`; keys are `n`, `level`, `k`, `rot`, `seed`.
    /// A missing seed falls back to `default_seed`.
    pub fn parse(text: &str, default_seed: u64) -> Result<Self, HarnessError> {
        let (family, params) = text.split_once(':').unwrap_or((text, ""));
        let family: Family = family.trim().parse()?;
        let mut spec = CorpusSpec::new(family, if family.is_3d() { 0 } else { 8 }).with_seed(default_seed);
        for kv in params.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = kv
                .split_once('=')
                .ok_or_else(|| HarnessError::Corpus(format!("expected key=value, got {kv:?}")))?;
            let bad = || HarnessError::Corpus(format!("bad value for {key}: {value:?}"));
            match key {
                "n" | "level" => spec.size = value.parse().map_err(|_| bad())?,
                "k" => spec.thinness = value.parse().map_err(|_| bad())?,
                "rot" => spec.rotation = value.parse().map_err(|_| bad())?,
                "seed" => spec.seed = value.parse().map_err(|_| bad())?,
                _ => return Err(HarnessError::Corpus(format!("unknown key {key:?}"))),
            }
        }
        Ok(spec)
    }

    /// Name safe for file systems, unique within the default corpora.
    pub fn file_stem(&self) -> String {
        self.to_string().replace([':', ','], "_").replace('=', "")
    }
}

impl fmt::Display for CorpusSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let size_key = if self.family.is_3d() { "level" } else { "n" };
        write!(f, "{}:{}={}", self.family.as_str(), size_key, self.size)?;
        if self.family == Family::Needle2d {
            write!(f, ",k={}", self.thinness)?;
        }
        if self.rotation != 0.0 {
            write!(f, ",rot={}", self.rotation)?;
        }
        write!(f, ",seed={}", self.seed)
    }
}

fn rotate(p: Point2, angle: f64) -> Point2 {
    let (s, c) = angle.sin_cos();
    Point2::new(c * p.x - s * p.y, s * p.x + c * p.y)
}

pub fn gen_polygon(spec: &CorpusSpec, tol: Tolerance) -> Result<ConvexPolygon, HarnessError> {
    let n = spec.size as usize;
    let finish = |pts: Vec<Point2>| -> Result<ConvexPolygon, GeometryError> {
        let pts: Vec<Point2> = pts.into_iter().map(|p| rotate(p, spec.rotation)).collect();
        ConvexPolygon::new(&pts, tol)
    };
    match spec.family {
        Family::RegularNgon => {
            let pts = (0..n)
                .map(|j| {
                    let a = j as f64 * TAU / n as f64;
                    Point2::new(a.cos(), a.sin())
                })
                .collect();
            Ok(finish(pts)?)
        }
        Family::Needle2d => {
            // edge-centered so the tips are edges, not vertices
            let squash = 10f64.powi(-(spec.thinness as i32));
            let pts = (0..n)
                .map(|j| {
                    let a = (j as f64 + 0.5) * TAU / n as f64;
                    Point2::new(a.cos(), squash * a.sin())
                })
                .collect();
            Ok(finish(pts)?)
        }
        Family::RandomConvex2d => {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            for _ in 0..MAX_ATTEMPTS {
                if let Ok(poly) = finish(random_convex_points(&mut rng, n)) {
                    return Ok(poly);
                }
            }
            Err(HarnessError::GenerationFailed { spec: spec.to_string(), attempts: MAX_ATTEMPTS })
        }
        Family::GeodesicSphere | Family::AffineGeodesic => {
            Err(HarnessError::Corpus(format!("{spec} is not a polygon family")))
        }
    }
}

/// Sorted uniform angles on a random ellipse, radii pulled inward by a jitter
/// small enough relative to the neighbouring gaps to keep the ring convex.
fn random_convex_points(rng: &mut ChaCha8Rng, n: usize) -> Vec<Point2> {
    let mut angles: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..TAU)).collect();
    angles.sort_by(f64::total_cmp);
    let (a, b) = (rng.gen_range(0.5..2.0), rng.gen_range(0.5..2.0));
    let center = Point2::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
    (0..n)
        .map(|j| {
            let gap = |x: f64, y: f64| (y - x).rem_euclid(TAU);
            let g_prev = gap(angles[(j + n - 1) % n], angles[j]);
            let g_next = gap(angles[j], angles[(j + 1) % n]);
            let r = 1.0 - 0.1 * rng.gen_range(0.0..1.0) * g_prev * g_next;
            let t = angles[j];
            Point2::new(center.x + a * r * t.cos(), center.y + b * r * t.sin())
        })
        .collect()
}

pub fn gen_polyhedron(spec: &CorpusSpec, tol: Tolerance) -> Result<ConvexPolyhedron, HarnessError> {
    if spec.size > 3 {
        return Err(HarnessError::Corpus(format!("{spec}: level must be 0..=3")));
    }
    let (mut v, f) = geodesic(spec.size);
    match spec.family {
        Family::GeodesicSphere => {}
        Family::AffineGeodesic => {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            let map = random_affine(&mut rng);
            for p in &mut v {
                *p = map(*p);
            }
        }
        _ => return Err(HarnessError::Corpus(format!("{spec} is not a polyhedron family"))),
    }
    Ok(ConvexPolyhedron::new(&v, &f, tol)?)
}

/// Icosahedron subdivided `level` times, vertices on the unit sphere.
fn geodesic(level: u32) -> (Vec<Point3>, Vec<Vec<usize>>) {
    let t = (1.0 + 5f64.sqrt()) / 2.0;
    let mut v: Vec<Point3> = [
        (-1.0, t, 0.0),
        (1.0, t, 0.0),
        (-1.0, -t, 0.0),
        (1.0, -t, 0.0),
        (0.0, -1.0, t),
        (0.0, 1.0, t),
        (0.0, -1.0, -t),
        (0.0, 1.0, -t),
        (t, 0.0, -1.0),
        (t, 0.0, 1.0),
        (-t, 0.0, -1.0),
        (-t, 0.0, 1.0),
    ]
    .iter()
    .map(|&(x, y, z)| unit(Point3::new(x, y, z)))
    .collect();
    let mut faces: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    for _ in 0..level {
        let mut mids: HashMap<(usize, usize), usize> = HashMap::new();
        let mut mid = |a: usize, b: usize, v: &mut Vec<Point3>| -> usize {
            *mids.entry((a.min(b), a.max(b))).or_insert_with(|| {
                let (p, q) = (v[a], v[b]);
                v.push(unit(Point3::new((p.x + q.x) / 2.0, (p.y + q.y) / 2.0, (p.z + q.z) / 2.0)));
                v.len() - 1
            })
        };
        let mut next = Vec::with_capacity(faces.len() * 4);
        for [a, b, c] in faces {
            let ab = mid(a, b, &mut v);
            let bc = mid(b, c, &mut v);
            let ca = mid(c, a, &mut v);
            next.extend([[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
        }
        faces = next;
    }
    (v, faces.into_iter().map(|f| f.to_vec()).collect())
}

fn unit(p: Point3) -> Point3 {
    let r = p.to_vector().norm();
    Point3::new(p.x / r, p.y / r, p.z / r)
}

/// `x -> R1 diag(s) R2 x + t` with singular values in `[1, 10]`, so the
/// condition number is at most 10.
fn random_affine(rng: &mut ChaCha8Rng) -> impl Fn(Point3) -> Point3 {
    let r1 = random_rotation(rng);
    let r2 = random_rotation(rng);
    let s: [f64; 3] = std::array::from_fn(|_| rng.gen_range(1.0..10.0));
    let t: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-10.0..10.0));
    move |p| {
        let a = mat_vec(&r2, [p.x, p.y, p.z]);
        let b = mat_vec(&r1, [a[0] * s[0], a[1] * s[1], a[2] * s[2]]);
        Point3::new(b[0] + t[0], b[1] + t[1], b[2] + t[2])
    }
}

type Mat3 = [[f64; 3]; 3];

fn mat_vec(m: &Mat3, p: [f64; 3]) -> [f64; 3] {
    std::array::from_fn(|r| m[r][0] * p[0] + m[r][1] * p[1] + m[r][2] * p[2])
}

/// Rotation from a random unit quaternion (rejection-sampled in the 4-ball).
fn random_rotation(rng: &mut ChaCha8Rng) -> Mat3 {
    let q = loop {
        let q: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let n2: f64 = q.iter().map(|x| x * x).sum();
        if n2 > 1e-6 && n2 <= 1.0 {
            let n = n2.sqrt();
            break q.map(|c| c / n);
        }
    };
    let [w, x, y, z] = q;
    [
        [1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y - w * z), 2.0 * (x * z + w * y)],
        [2.0 * (x * y + w * z), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z - w * x)],
        [2.0 * (x * z - w * y), 2.0 * (y * z + w * x), 1.0 - 2.0 * (x * x + y * y)],
    ]
}

/// Needle rotation used by the default corpus; tilting the tip edges is what
/// shrinks their vertical extent relative to the height of the shape.
pub const NEEDLE_ROTATION: f64 = FRAC_PI_3;

/// The 2D verification corpus: regular polygons, random polygons, needles, and
/// 100 rotations of one random 16-gon.
pub fn default_corpus_2d(seed: u64) -> Vec<CorpusSpec> {
    let mut out = Vec::new();
    for n in [3, 4, 5, 6, 8, 12, 16, 32, 64, 128] {
        out.push(CorpusSpec::new(Family::RegularNgon, n).with_seed(seed));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..80u64 {
        let n = rng.gen_range(3..=128);
        out.push(CorpusSpec::new(Family::RandomConvex2d, n).with_seed(seed.wrapping_add(1000 + i)));
    }
    for n in [8, 16] {
        for k in [1, 2, 4, 6] {
            for rot in [0.0, NEEDLE_ROTATION] {
                out.push(
                    CorpusSpec::new(Family::Needle2d, n)
                        .with_thinness(k)
                        .with_rotation(rot)
                        .with_seed(seed),
                );
            }
        }
    }
    let fixed_seed = seed.wrapping_add(999);
    for _ in 0..100 {
        let rot = rng.gen_range(0.0..TAU);
        out.push(CorpusSpec::new(Family::RandomConvex2d, 16).with_seed(fixed_seed).with_rotation(rot));
    }
    out
}

/// Geodesic spheres of levels 0..=3 followed by 20 affine variants.
pub fn default_corpus_3d(seed: u64) -> Vec<CorpusSpec> {
    let mut out: Vec<CorpusSpec> = (0..=3)
        .map(|l| CorpusSpec::new(Family::GeodesicSphere, l).with_seed(seed))
        .collect();
    for i in 0..20u64 {
        out.push(CorpusSpec::new(Family::AffineGeodesic, (i % 4) as u32).with_seed(seed.wrapping_add(i)));
    }
    out
}
