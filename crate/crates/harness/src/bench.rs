//! Batch query timing.
//!
//! Every (shape, algorithm) cell is warmed up once, then timed in rounds: each
//! round runs every cell once over the full query batch, so slow drift of the
//! machine spreads evenly over the cells. A cell's mean is the median of its
//! per-round means; its p99 is taken over per-chunk means of 1000 queries.

use std::hint::black_box;
use std::io::Write;
use std::time::Instant;

use convex_locate::{
    point_in_polygon_linear, point_in_polygon_logn, point_in_polyhedron_linear, Containment, ConvexPolygon,
    ConvexPolyhedron, CubeGrid, Point2, Point3, PolarGrid, SlabTable, Tolerance,
};

use crate::corpus::{gen_polygon, gen_polyhedron, CorpusSpec, Family};
use crate::queries::{gen_queries_2d, gen_queries_3d};
use crate::HarnessError;

pub const CSV_HEADER: &str = "algorithm,n,param,build_ns,query_ns_mean,query_ns_p99,queries,seed";

const CHUNK: usize = 1000;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub algorithm: String,
    /// Vertex count in 2D, face count in 3D.
    pub n: usize,
    /// `m` for the polar and cube grids, `M` for slabs, 0 otherwise.
    pub param: u32,
    pub build_ns: u64,
    pub query_ns_mean: f64,
    pub query_ns_p99: f64,
    pub queries: usize,
    pub seed: u64,
}

impl BenchRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{:.3},{:.3},{},{}",
            self.algorithm,
            self.n,
            self.param,
            self.build_ns,
            self.query_ns_mean,
            self.query_ns_p99,
            self.queries,
            self.seed
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchAlgorithm {
    Polar,
    Logn,
    Slab,
    Linear,
    Cube,
    Linear3,
}

impl BenchAlgorithm {
    pub const ALL: [BenchAlgorithm; 6] = [
        BenchAlgorithm::Polar,
        BenchAlgorithm::Logn,
        BenchAlgorithm::Slab,
        BenchAlgorithm::Linear,
        BenchAlgorithm::Cube,
        BenchAlgorithm::Linear3,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BenchAlgorithm::Polar => "polar",
            BenchAlgorithm::Logn => "logn",
            BenchAlgorithm::Slab => "slab",
            BenchAlgorithm::Linear => "linear",
            BenchAlgorithm::Cube => "cube",
            BenchAlgorithm::Linear3 => "linear3",
        }
    }

    fn is_3d(self) -> bool {
        matches!(self, BenchAlgorithm::Cube | BenchAlgorithm::Linear3)
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    /// Regular polygon vertex counts.
    pub sizes_2d: Vec<u32>,
    /// Geodesic sphere levels.
    pub levels_3d: Vec<u32>,
    pub algorithms: Vec<BenchAlgorithm>,
    pub queries: usize,
    pub repetitions: usize,
    pub seed: u64,
    pub m: Option<u32>,
    pub slabs: Option<u32>,
    pub tolerance: Tolerance,
}

impl BenchConfig {
    pub fn default_with_seed(seed: u64) -> Self {
        Self {
            sizes_2d: vec![8, 16, 32, 64, 128, 256, 512, 1024],
            levels_3d: vec![0, 1, 2, 3],
            algorithms: BenchAlgorithm::ALL.to_vec(),
            queries: 100_000,
            repetitions: 5,
            seed,
            m: None,
            slabs: None,
            tolerance: Tolerance::default(),
        }
    }
}

enum Subject {
    Polar(PolarGrid, Vec<Point2>),
    Logn(ConvexPolygon, Vec<Point2>),
    Slab(SlabTable, Vec<Point2>),
    Linear(ConvexPolygon, Vec<Point2>),
    Cube(CubeGrid, Vec<Point3>),
    Linear3(ConvexPolyhedron, Vec<Point3>),
}

impl Subject {
    fn len(&self) -> usize {
        match self {
            Subject::Polar(_, q) | Subject::Logn(_, q) | Subject::Slab(_, q) | Subject::Linear(_, q) => q.len(),
            Subject::Cube(_, q) | Subject::Linear3(_, q) => q.len(),
        }
    }

    /// Runs queries `range` and returns a count that depends on every verdict.
    fn run(&self, range: std::ops::Range<usize>) -> usize {
        fn tally<P: Copy>(points: &[P], f: impl Fn(P) -> Containment) -> usize {
            points.iter().map(|&p| f(black_box(p)) as usize).sum()
        }
        match self {
            Subject::Polar(g, q) => tally(&q[range], |p| g.query(p)),
            Subject::Logn(poly, q) => tally(&q[range], |p| point_in_polygon_logn(poly, p)),
            Subject::Slab(t, q) => tally(&q[range], |p| t.query(p)),
            Subject::Linear(poly, q) => tally(&q[range], |p| point_in_polygon_linear(poly, p)),
            Subject::Cube(g, q) => tally(&q[range], |p| g.query(p)),
            Subject::Linear3(ph, q) => tally(&q[range], |p| point_in_polyhedron_linear(ph, p)),
        }
    }
}

struct Cell {
    record: BenchRecord,
    subject: Subject,
    round_means: Vec<f64>,
    chunk_means: Vec<f64>,
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, u64) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_nanos() as u64)
}

pub fn run_bench(config: &BenchConfig) -> Result<Vec<BenchRecord>, HarnessError> {
    let mut cells = Vec::new();
    let record = |algorithm: BenchAlgorithm, n: usize, param: u32, build_ns: u64| BenchRecord {
        algorithm: algorithm.as_str().to_string(),
        n,
        param,
        build_ns,
        query_ns_mean: 0.0,
        query_ns_p99: 0.0,
        queries: config.queries,
        seed: config.seed,
    };

    for &n in &config.sizes_2d {
        let spec = CorpusSpec::new(Family::RegularNgon, n).with_seed(config.seed);
        let poly = gen_polygon(&spec, config.tolerance)?;
        let points = gen_queries_2d(&poly, config.queries, config.seed);
        for &alg in config.algorithms.iter().filter(|a| !a.is_3d()) {
            let (subject, param, build_ns) = match alg {
                BenchAlgorithm::Polar => {
                    let (g, ns) = timed(|| PolarGrid::new(&poly, config.m));
                    let m = g.m();
                    (Subject::Polar(g, points.clone()), m, ns)
                }
                BenchAlgorithm::Slab => {
                    let (t, ns) = timed(|| SlabTable::new(&poly, config.slabs));
                    let count = t.slab_count();
                    (Subject::Slab(t, points.clone()), count, ns)
                }
                BenchAlgorithm::Logn => (Subject::Logn(poly.clone(), points.clone()), 0, 0),
                _ => (Subject::Linear(poly.clone(), points.clone()), 0, 0),
            };
            cells.push(Cell {
                record: record(alg, n as usize, param, build_ns),
                subject,
                round_means: Vec::new(),
                chunk_means: Vec::new(),
            });
        }
    }

    for &level in &config.levels_3d {
        let spec = CorpusSpec::new(Family::GeodesicSphere, level).with_seed(config.seed);
        let ph = gen_polyhedron(&spec, config.tolerance)?;
        let points = gen_queries_3d(&ph, config.queries, config.seed);
        for &alg in config.algorithms.iter().filter(|a| a.is_3d()) {
            let (subject, param, build_ns) = match alg {
                BenchAlgorithm::Cube => {
                    let (g, ns) = timed(|| CubeGrid::new(&ph, config.m));
                    let g = g?;
                    let m = g.m();
                    (Subject::Cube(g, points.clone()), m, ns)
                }
                _ => (Subject::Linear3(ph.clone(), points.clone()), 0, 0),
            };
            cells.push(Cell {
                record: record(alg, ph.face_count(), param, build_ns),
                subject,
                round_means: Vec::new(),
                chunk_means: Vec::new(),
            });
        }
    }

    for cell in &cells {
        black_box(cell.subject.run(0..cell.subject.len()));
    }
    for _ in 0..config.repetitions.max(1) {
        for cell in &mut cells {
            let total = cell.subject.len();
            let mut elapsed = 0u64;
            let mut start = 0;
            while start < total {
                let end = (start + CHUNK).min(total);
                let (sum, ns) = timed(|| cell.subject.run(start..end));
                black_box(sum);
                cell.chunk_means.push(ns as f64 / (end - start) as f64);
                elapsed += ns;
                start = end;
            }
            cell.round_means.push(elapsed as f64 / total.max(1) as f64);
        }
    }

    Ok(cells
        .into_iter()
        .map(|mut c| {
            c.record.query_ns_mean = median(&mut c.round_means);
            c.record.query_ns_p99 = percentile(&mut c.chunk_means, 0.99);
            c.record
        })
        .collect())
}

fn median(v: &mut [f64]) -> f64 {
    percentile(v, 0.5)
}

fn percentile(v: &mut [f64], q: f64) -> f64 {
    if v.is_empty() {
        return 0.0;
    }
    v.sort_by(f64::total_cmp);
    let idx = ((v.len() - 1) as f64 * q).round() as usize;
    v[idx]
}

pub fn write_csv(records: &[BenchRecord], mut out: impl Write) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(out, "{}", r.csv_row())?;
    }
    Ok(())
}

/// `mean(largest n) / mean(smallest n)` per algorithm, in first-seen order.
pub fn size_ratios(records: &[BenchRecord]) -> Vec<(String, usize, usize, f64)> {
    let mut names: Vec<&str> = Vec::new();
    for r in records {
        if !names.contains(&r.algorithm.as_str()) {
            names.push(&r.algorithm);
        }
    }
    names
        .into_iter()
        .filter_map(|name| {
            let rows: Vec<&BenchRecord> = records.iter().filter(|r| r.algorithm == name).collect();
            let lo = rows.iter().min_by_key(|r| r.n)?;
            let hi = rows.iter().max_by_key(|r| r.n)?;
            (lo.n != hi.n).then(|| (name.to_string(), hi.n, lo.n, hi.query_ns_mean / lo.query_ns_mean))
        })
        .collect()
}

pub fn ratio_summary(records: &[BenchRecord]) -> Vec<String> {
    size_ratios(records)
        .into_iter()
        .map(|(name, hi, lo, r)| format!("ratio {name} n={hi}/n={lo} = {r:.2}"))
        .collect()
}
