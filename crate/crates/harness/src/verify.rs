//! Cross-checks every accelerated test against the linear oracle.

use std::fmt;
use std::str::FromStr;

use convex_locate::{
    point_in_polygon_linear, point_in_polygon_logn, point_in_polyhedron_linear, Containment, ConvexPolygon,
    ConvexPolyhedron, CubeGrid, Point2, Point3, PolarGrid, SlabTable, Tolerance,
};

use crate::corpus::{default_corpus_2d, default_corpus_3d, gen_polygon, gen_polyhedron, CorpusSpec};
use crate::queries::{gen_queries_2d, gen_queries_3d};
use crate::HarnessError;

pub trait Locate2 {
    fn name(&self) -> &'static str;
    fn locate(&self, p: Point2) -> Containment;
}

pub trait Locate3 {
    fn name(&self) -> &'static str;
    fn locate(&self, p: Point3) -> Containment;
}

impl Locate2 for PolarGrid {
    fn name(&self) -> &'static str {
        "polar"
    }
    fn locate(&self, p: Point2) -> Containment {
        self.query(p)
    }
}

impl Locate2 for SlabTable {
    fn name(&self) -> &'static str {
        "slab"
    }
    fn locate(&self, p: Point2) -> Containment {
        self.query(p)
    }
}

/// The O(lg N) fan search, which needs no preprocessing.
pub struct Logn<'a>(pub &'a ConvexPolygon);

impl Locate2 for Logn<'_> {
    fn name(&self) -> &'static str {
        "logn"
    }
    fn locate(&self, p: Point2) -> Containment {
        point_in_polygon_logn(self.0, p)
    }
}

impl Locate3 for CubeGrid {
    fn name(&self) -> &'static str {
        "cube"
    }
    fn locate(&self, p: Point3) -> Containment {
        self.query(p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Polar,
    Logn,
    Slab,
    Cube,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Polar => "polar",
            Algorithm::Logn => "logn",
            Algorithm::Slab => "slab",
            Algorithm::Cube => "cube",
        }
    }
}

impl FromStr for Algorithm {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "polar" => Ok(Algorithm::Polar),
            "logn" => Ok(Algorithm::Logn),
            "slab" => Ok(Algorithm::Slab),
            "cube" => Ok(Algorithm::Cube),
            _ => Err(HarnessError::Corpus(format!("unknown algorithm {s:?}"))),
        }
    }
}

/// First disagreement found, with enough data to reproduce it.
#[derive(Debug, Clone, PartialEq)]
pub struct Mismatch {
    pub shape: String,
    pub algorithm: &'static str,
    pub point: Vec<f64>,
    pub got: Containment,
    pub expected: Containment,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords: Vec<String> = self.point.iter().map(|c| c.to_string()).collect();
        write!(
            f,
            "shape {} algorithm {} point ({}) got {} expected {}",
            self.shape,
            self.algorithm,
            coords.join(", "),
            self.got,
            self.expected
        )
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub corpus_2d: Vec<CorpusSpec>,
    pub corpus_3d: Vec<CorpusSpec>,
    pub algorithms: Vec<Algorithm>,
    pub queries_2d: usize,
    pub queries_3d: usize,
    pub seed: u64,
    pub m: Option<u32>,
    pub slabs: Option<u32>,
    pub tolerance: Tolerance,
}

impl VerifyConfig {
    /// Default corpora, all algorithms, 10^4 points per polygon and 10^5 per polyhedron.
    pub fn default_with_seed(seed: u64) -> Self {
        Self {
            corpus_2d: default_corpus_2d(seed),
            corpus_3d: default_corpus_3d(seed),
            algorithms: vec![Algorithm::Polar, Algorithm::Logn, Algorithm::Slab, Algorithm::Cube],
            queries_2d: 10_000,
            queries_3d: 100_000,
            seed,
            m: None,
            slabs: None,
            tolerance: Tolerance::default(),
        }
    }

    fn wants(&self, a: Algorithm) -> bool {
        self.algorithms.contains(&a)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct VerifyReport {
    pub shapes_2d: usize,
    pub points_2d: usize,
    pub shapes_3d: usize,
    pub points_3d: usize,
    pub checks: usize,
    /// Build report line of every structure, in corpus order.
    pub builds: Vec<String>,
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "2d shapes={} points={}", self.shapes_2d, self.points_2d)?;
        writeln!(f, "3d shapes={} points={}", self.shapes_3d, self.points_3d)?;
        writeln!(f, "checks={}", self.checks)?;
        write!(f, "0 mismatches")
    }
}

/// Per-shape query seed, so inserting a shape does not shift the others' points.
pub fn query_seed(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

pub fn run_verify(config: &VerifyConfig) -> Result<VerifyReport, HarnessError> {
    let mut report = VerifyReport::default();
    let wants_2d = [Algorithm::Polar, Algorithm::Logn, Algorithm::Slab]
        .iter()
        .any(|&a| config.wants(a));

    if wants_2d {
        for (i, spec) in config.corpus_2d.iter().enumerate() {
            let poly = gen_polygon(spec, config.tolerance)?;
            let points = gen_queries_2d(&poly, config.queries_2d, query_seed(config.seed, i));
            let polar = config.wants(Algorithm::Polar).then(|| PolarGrid::new(&poly, config.m));
            let slab = config.wants(Algorithm::Slab).then(|| SlabTable::new(&poly, config.slabs));
            let logn = config.wants(Algorithm::Logn).then_some(Logn(&poly));
            let mut locators: Vec<&dyn Locate2> = Vec::new();
            if let Some(g) = &polar {
                report.builds.push(format!("{spec} {}", g.report()));
                locators.push(g);
            }
            if let Some(l) = &logn {
                locators.push(l);
            }
            if let Some(t) = &slab {
                report.builds.push(format!("{spec} {}", t.report()));
                locators.push(t);
            }
            report.checks += check_2d(&spec.to_string(), &poly, &locators, &points)?;
            report.shapes_2d += 1;
            report.points_2d += points.len();
        }
    }

    if config.wants(Algorithm::Cube) {
        for (i, spec) in config.corpus_3d.iter().enumerate() {
            let ph = gen_polyhedron(spec, config.tolerance)?;
            let grid = CubeGrid::new(&ph, config.m)?;
            report.builds.push(format!("{spec} {}", grid.report()));
            let mut points = gen_queries_3d(&ph, config.queries_3d, query_seed(config.seed, i));
            points.extend_from_slice(ph.vertices());
            points.extend((0..ph.face_count()).map(|f| ph.face_centroid(f)));
            report.checks += check_3d(&spec.to_string(), &ph, &[&grid], &points)?;
            report.shapes_3d += 1;
            report.points_3d += points.len();
        }
    }
    Ok(report)
}

/// Runs each locator on each point; returns the number of comparisons made.
pub fn check_2d(
    shape: &str,
    poly: &ConvexPolygon,
    locators: &[&dyn Locate2],
    points: &[Point2],
) -> Result<usize, HarnessError> {
    for &p in points {
        let expected = point_in_polygon_linear(poly, p);
        for loc in locators {
            let got = loc.locate(p);
            if got != expected {
                return Err(HarnessError::Mismatch(Box::new(Mismatch {
                    shape: shape.to_string(),
                    algorithm: loc.name(),
                    point: vec![p.x, p.y],
                    got,
                    expected,
                })));
            }
        }
    }
    Ok(points.len() * locators.len())
}

pub fn check_3d(
    shape: &str,
    ph: &ConvexPolyhedron,
    locators: &[&dyn Locate3],
    points: &[Point3],
) -> Result<usize, HarnessError> {
    for &p in points {
        let expected = point_in_polyhedron_linear(ph, p);
        for loc in locators {
            let got = loc.locate(p);
            if got != expected {
                return Err(HarnessError::Mismatch(Box::new(Mismatch {
                    shape: shape.to_string(),
                    algorithm: loc.name(),
                    point: vec![p.x, p.y, p.z],
                    got,
                    expected,
                })));
            }
        }
    }
    Ok(points.len() * locators.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Family;

    #[test]
    fn corrupted_sector_is_reported() {
        let spec = CorpusSpec::new(Family::RegularNgon, 12);
        let poly = gen_polygon(&spec, Tolerance::default()).unwrap();
        let mut grid = PolarGrid::new(&poly, Some(2));
        let p = Point2::new(3.0, 0.1);
        grid.clear_sector(grid.sector_of_point(p).unwrap());
        let points = [Point2::new(0.0, 0.0), p];
        let err = check_2d(&spec.to_string(), &poly, &[&grid], &points).unwrap_err();
        let HarnessError::Mismatch(m) = err else { panic!("{err}") };
        assert_eq!(m.algorithm, "polar");
        assert_eq!((m.got, m.expected), (Containment::Inside, Containment::Outside));
        assert_eq!(m.point, vec![3.0, 0.1]);
        assert!(m.to_string().contains("regular-ngon:n=12"));
    }

    #[test]
    fn small_corpus_has_no_mismatches() {
        let mut config = VerifyConfig::default_with_seed(4);
        config.corpus_2d.truncate(30);
        config.corpus_3d.truncate(2);
        config.queries_2d = 500;
        config.queries_3d = 2000;
        let report = run_verify(&config).unwrap();
        assert_eq!(report.shapes_2d, 30);
        assert_eq!(report.shapes_3d, 2);
        assert!(report.to_string().ends_with("0 mismatches"));
    }
}
