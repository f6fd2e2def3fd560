use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use convex_locate::io::{write_off, write_polygon};
use convex_locate::{CubeGrid, PolarGrid, SlabTable, Tolerance};
use convex_locate_harness::bench::{ratio_summary, run_bench, write_csv, BenchAlgorithm, BenchConfig};
use convex_locate_harness::corpus::{default_corpus_2d, default_corpus_3d, gen_polygon, gen_polyhedron, CorpusSpec};
use convex_locate_harness::svg::{render_polar, render_slabs, write_svg};
use convex_locate_harness::verify::{run_verify, VerifyConfig};
use convex_locate_harness::HarnessError;

#[derive(Parser)]
#[command(name = "convex-locate", version, about = "Constant-time point containment: corpus, verification, timing, diagrams")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Base seed for generated shapes and query points.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    /// Polar or cube grid resolution (default: automatic).
    #[arg(long, global = true)]
    m: Option<u32>,

    /// Slab count (default: from the shortest vertical edge extent).
    #[arg(long, global = true)]
    slabs: Option<u32>,

    /// Relative tolerance; the absolute band is eps times the shape diameter.
    #[arg(long, global = true, default_value_t = Tolerance::DEFAULT_EPS_REL)]
    eps: f64,

    /// One shape, e.g. "needle-2d:n=16,k=6,rot=1.047" (default: the built-in corpus).
    #[arg(long, global = true)]
    corpus: Option<String>,

    /// Output directory (gen) or file (bench, render, verify).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Write polygon files and OFF polyhedra, with one build report per shape.
    Gen,
    /// Compare every accelerated test with the linear oracle.
    Verify {
        /// Comma-separated subset of polar,logn,slab,cube.
        #[arg(long, value_delimiter = ',', default_value = "polar,logn,slab,cube")]
        algorithms: Vec<String>,
        /// Points per shape (default 10000 for polygons, 100000 for polyhedra).
        #[arg(long)]
        queries: Option<usize>,
        /// Also print the build report of every structure.
        #[arg(long)]
        verbose: bool,
    },
    /// Time queries on regular polygons and geodesic spheres; CSV output.
    Bench {
        #[arg(long, default_value_t = 100_000)]
        queries: usize,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        /// Polygon vertex counts.
        #[arg(long, value_delimiter = ',', default_value = "8,16,32,64,128,256,512,1024")]
        sizes: Vec<u32>,
        /// Geodesic sphere levels.
        #[arg(long, value_delimiter = ',', default_value = "0,1,2,3")]
        levels: Vec<u32>,
    },
    /// Draw a polygon with its polar grid or slab table as SVG.
    Render {
        #[arg(long, value_enum, default_value_t = Grid::Polar)]
        grid: Grid,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Grid {
    Polar,
    Slab,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(HarnessError::Mismatch(m)) => {
            println!("first mismatch: {m}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<(), HarnessError> {
    let tol = Tolerance::new(cli.eps)?;
    let single = cli.corpus.as_deref().map(|c| CorpusSpec::parse(c, cli.seed)).transpose()?;
    match &cli.command {
        Command::Gen => generate(cli, tol, single),
        Command::Verify { algorithms, queries, verbose } => {
            let mut config = VerifyConfig::default_with_seed(cli.seed);
            config.algorithms = algorithms.iter().map(|a| a.parse()).collect::<Result<_, _>>()?;
            config.m = cli.m;
            config.slabs = cli.slabs;
            config.tolerance = tol;
            if let Some(spec) = single {
                config.corpus_2d = vec![spec].into_iter().filter(|s| !s.family.is_3d()).collect();
                config.corpus_3d = vec![spec].into_iter().filter(|s| s.family.is_3d()).collect();
            }
            if let Some(q) = queries {
                config.queries_2d = *q;
                config.queries_3d = *q;
            }
            let report = run_verify(&config)?;
            let mut text = String::new();
            if *verbose {
                for line in &report.builds {
                    text.push_str(line);
                    text.push('\n');
                }
            }
            text.push_str(&report.to_string());
            text.push('\n');
            emit(cli.out.as_deref(), &text)
        }
        Command::Bench { queries, reps, sizes, levels } => {
            let mut config = BenchConfig::default_with_seed(cli.seed);
            config.queries = *queries;
            config.repetitions = *reps;
            config.sizes_2d = sizes.clone();
            config.levels_3d = levels.clone();
            config.algorithms = BenchAlgorithm::ALL.to_vec();
            config.m = cli.m;
            config.slabs = cli.slabs;
            config.tolerance = tol;
            let records = run_bench(&config)?;
            let mut buf = Vec::new();
            write_csv(&records, &mut buf).expect("writing to memory");
            emit(cli.out.as_deref(), &String::from_utf8_lossy(&buf))?;
            for line in ratio_summary(&records) {
                eprintln!("{line}");
            }
            Ok(())
        }
        Command::Render { grid } => {
            let spec = single.ok_or_else(|| HarnessError::Corpus("render needs --corpus".into()))?;
            let out = cli.out.as_deref().ok_or_else(|| HarnessError::Corpus("render needs --out".into()))?;
            let poly = gen_polygon(&spec, tol)?;
            let (svg, report) = match grid {
                Grid::Polar => {
                    let g = PolarGrid::new(&poly, cli.m);
                    (render_polar(&poly, &g, &spec.to_string()), g.report())
                }
                Grid::Slab => {
                    let t = SlabTable::new(&poly, cli.slabs);
                    (render_slabs(&poly, &t, &spec.to_string()), t.report())
                }
            };
            write_svg(out, &svg)?;
            println!("{report}");
            Ok(())
        }
    }
}

fn generate(cli: &Cli, tol: Tolerance, single: Option<CorpusSpec>) -> Result<(), HarnessError> {
    let dir = cli.out.as_deref().ok_or_else(|| HarnessError::Corpus("gen needs --out <dir>".into()))?;
    fs::create_dir_all(dir).map_err(|source| HarnessError::FileWrite { path: dir.to_path_buf(), source })?;
    let specs = match single {
        Some(s) => vec![s],
        None => default_corpus_2d(cli.seed).into_iter().chain(default_corpus_3d(cli.seed)).collect(),
    };
    for (i, spec) in specs.iter().enumerate() {
        // the index prefix keeps directory listings in corpus order
        let stem = format!("{i:03}-{}", spec.file_stem());
        if spec.family.is_3d() {
            let ph = gen_polyhedron(spec, tol)?;
            let name = format!("{stem}.off");
            write_file(&dir.join(&name), &write_off(&ph))?;
            println!("{name} {}", CubeGrid::new(&ph, cli.m)?.report());
        } else {
            let poly = gen_polygon(spec, tol)?;
            let name = format!("{stem}.poly");
            write_file(&dir.join(&name), &write_polygon(&poly))?;
            println!(
                "{name} {} {}",
                PolarGrid::new(&poly, cli.m).report(),
                SlabTable::new(&poly, cli.slabs).report()
            );
        }
    }
    Ok(())
}

fn write_file(path: &Path, text: &str) -> Result<(), HarnessError> {
    fs::write(path, text).map_err(|source| HarnessError::FileWrite { path: path.to_path_buf(), source })
}

/// Writes to `path`, or to stdout when no path is given.
fn emit(path: Option<&Path>, text: &str) -> Result<(), HarnessError> {
    match path {
        Some(p) => write_file(p, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|source| HarnessError::FileWrite { path: PathBuf::from("<stdout>"), source })
        }
    }
}
