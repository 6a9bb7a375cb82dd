//! The `polarhull` command line: `gen`, `hull`, `verify`, `bench`, `render`.
//!
//! Exit codes: 0 success, 1 verification or computation failure, 2 usage or
//! configuration error, 3 input/output error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::binning::BinConfig;
use crate::datasets::{generate, DatasetSpec, Family};
use crate::error::{HullError, Result};
use crate::geometry::{Hull, Point};
use crate::hulls::{brute_force_hull, graham_scan, jarvis_march};
use crate::io::{load_points, save_points, Format};
use crate::pipeline::{
    divide_and_conquer, horizon_reduced_fence, hull_via_contour_scanning, hull_via_horizon_reduction, FinalAlgorithm,
    PipelineReport, Scheme, DEFAULT_LEAF_SIZE,
};
use crate::render::render_svg;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Largest input `verify` accepts; the oracle is cubic.
pub const VERIFY_LIMIT: usize = 5000;

#[derive(Debug, Parser)]
#[command(name = "polarhull", version, about = "Planar convex hulls by polar binning and input reduction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a seeded synthetic dataset.
    Gen(GenArgs),
    /// Compute a hull and print the pipeline report.
    Hull(HullArgs),
    /// Run every algorithm against the brute-force oracle.
    Verify(VerifyArgs),
    /// Time an algorithm x interval matrix over generated datasets.
    Bench(BenchArgs),
    /// Draw points, hull and optionally fence and bins as SVG.
    Render(RenderArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Graham,
    Jarvis,
    Horizon,
    Contour,
    DncOrdered,
    DncUnordered,
}

impl Algo {
    /// The spelling used on the command line.
    pub fn name(self) -> String {
        self.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FinalArg {
    Graham,
    Jarvis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Xy,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Xy => Format::XyWhitespace,
            FormatArg::Csv => Format::Csv,
        }
    }
}

fn input_format(flag: Option<FormatArg>, path: &Path) -> Format {
    flag.map_or_else(|| Format::from_path(path), Format::from)
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    #[arg(long = "algo", value_enum, default_value = "contour")]
    pub algorithm: Algo,
    #[arg(long, default_value_t = 2.0)]
    pub bin_interval_deg: f64,
    #[arg(long, default_value_t = 1.0)]
    pub initial_interval_deg: f64,
    #[arg(long, default_value_t = 20)]
    pub max_halvings: usize,
    #[arg(long, default_value_t = DEFAULT_LEAF_SIZE)]
    pub leaf_size: usize,
    /// Classical algorithm run on the horizon-reduced set.
    #[arg(long = "final", value_enum, default_value = "graham")]
    final_algorithm: FinalArg,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            algorithm: Algo::Contour,
            bin_interval_deg: 2.0,
            initial_interval_deg: 1.0,
            max_halvings: 20,
            leaf_size: DEFAULT_LEAF_SIZE,
            final_algorithm: FinalArg::Graham,
        }
    }
}

impl RunConfig {
    fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("bin interval", self.bin_interval_deg),
            ("initial interval", self.initial_interval_deg),
        ] {
            if !(v > 0.0 && v <= 90.0) {
                return Err(HullError::Config(format!("{name} {v} deg outside (0, 90]")));
            }
        }
        Ok(())
    }
}

/// Runs one algorithm with the settings in `config`. The classical
/// algorithms report only their total time, under `final_hull`.
pub fn run_algorithm(points: &[Point], algorithm: Algo, config: &RunConfig) -> Result<(Hull, PipelineReport)> {
    config.validate()?;
    let classical = |f: fn(&[Point]) -> Hull| -> Result<(Hull, PipelineReport)> {
        if points.is_empty() {
            return Err(HullError::EmptyInput);
        }
        let start = Instant::now();
        let hull = f(points);
        let mut report = PipelineReport {
            input_size: points.len(),
            reduced_size: points.len(),
            hull_size: hull.len(),
            ..Default::default()
        };
        report.elapsed.final_hull = start.elapsed();
        Ok((hull, report))
    };
    let fin = match config.final_algorithm {
        FinalArg::Graham => FinalAlgorithm::Graham,
        FinalArg::Jarvis => FinalAlgorithm::Jarvis,
    };
    match algorithm {
        Algo::Graham => classical(graham_scan),
        Algo::Jarvis => classical(jarvis_march),
        Algo::Horizon => hull_via_horizon_reduction(points, config.bin_interval_deg.to_radians(), fin),
        Algo::Contour => hull_via_contour_scanning(points, config.initial_interval_deg.to_radians(), config.max_halvings),
        Algo::DncOrdered => divide_and_conquer(points, Scheme::OrderedPolar, config.leaf_size),
        Algo::DncUnordered => divide_and_conquer(points, Scheme::Unordered, config.leaf_size),
    }
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, default_value = "disk_uniform")]
    family: String,
    #[arg(long, short)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    blobs: Option<usize>,
    #[arg(long)]
    spread: Option<f64>,
    #[arg(long)]
    jitter: Option<f64>,
    #[arg(long)]
    amplitude: Option<f64>,
    #[arg(long)]
    frequency: Option<f64>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    #[arg(long, short)]
    out: PathBuf,
}

impl GenArgs {
    fn spec(&self) -> Result<DatasetSpec> {
        let mut spec = DatasetSpec::new(self.family.parse::<Family>()?, self.n, self.seed);
        spec.blob_count = self.blobs.unwrap_or(spec.blob_count);
        spec.cluster_spread = self.spread.unwrap_or(spec.cluster_spread);
        spec.ring_jitter = self.jitter.unwrap_or(spec.ring_jitter);
        spec.amplitude = self.amplitude.unwrap_or(spec.amplitude);
        spec.frequency = self.frequency.unwrap_or(spec.frequency);
        Ok(spec)
    }
}

#[derive(Debug, Args)]
struct HullArgs {
    input: PathBuf,
    #[command(flatten)]
    run: RunConfig,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Hull vertex file: one `index x y` line per vertex.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    input: PathBuf,
    #[command(flatten)]
    run: RunConfig,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Drop a vertex from the named algorithm's hull (negative control).
    #[arg(long, value_enum, hide = true)]
    inject_fault: Option<Algo>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "disk_uniform")]
    family: Vec<String>,
    #[arg(long, short, value_delimiter = ',', default_value = "10000")]
    n: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long = "algo", value_enum, value_delimiter = ',', default_value = "horizon,contour")]
    algorithms: Vec<Algo>,
    /// Bin interval for horizon and initial interval for contour, degrees.
    #[arg(long = "interval-deg", value_delimiter = ',', default_value = "2")]
    intervals: Vec<f64>,
    #[arg(long, default_value_t = 3)]
    repeats: usize,
    #[arg(long = "final", value_enum, default_value = "graham")]
    final_algorithm: FinalArg,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct RenderArgs {
    input: PathBuf,
    /// Hull vertex file written by `hull --out`.
    #[arg(long)]
    hull: PathBuf,
    #[arg(long, short)]
    out: PathBuf,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Draw the horizon-reduced fence computed at this bin interval.
    #[arg(long)]
    fence_interval_deg: Option<f64>,
    /// Draw bin rays at this interval.
    #[arg(long)]
    bins_deg: Option<f64>,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    if let Err(e) = configure_threads() {
        let _ = writeln!(err, "error: {e}");
        return EXIT_USAGE;
    }
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(&a, out),
        Command::Hull(a) => cmd_hull(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Bench(a) => cmd_bench(&a, out),
        Command::Render(a) => cmd_render(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &HullError) -> i32 {
    match e {
        HullError::Io { .. } | HullError::Parse { .. } => EXIT_IO,
        HullError::Config(_) => EXIT_USAGE,
        _ => EXIT_VERIFY,
    }
}

/// `POLARHULL_THREADS` sizes the global rayon pool; 0 means one thread.
fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var("POLARHULL_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| HullError::Config(format!("POLARHULL_THREADS={raw:?} is not a count")))?;
    // a second call in the same process finds the pool already built
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    Ok(())
}

fn cmd_gen(a: &GenArgs, out: &mut dyn Write) -> Result<i32> {
    let spec = a.spec()?;
    let points = generate(&spec)?;
    save_points(&a.out, &points, input_format(a.format, &a.out))?;
    let _ = writeln!(out, "n={}\nfamily={}", points.len(), spec.family);
    Ok(EXIT_OK)
}

pub fn format_hull(hull: &Hull, points: &[Point]) -> String {
    let mut s = String::from("# index x y\n");
    for &v in &hull.vertices {
        if let Some(p) = points.iter().find(|p| p.index == v) {
            let _ = writeln!(s, "{v} {:.16e} {:.16e}", p.x, p.y);
        }
    }
    s
}

pub fn parse_hull(text: &str) -> Result<Hull> {
    let mut vertices = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let body = line.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let first = body.split_whitespace().next().unwrap_or_default();
        vertices.push(first.parse().map_err(|_| HullError::Parse {
            line: i + 1,
            message: format!("bad vertex index {first:?}"),
        })?);
    }
    Ok(Hull { vertices })
}

fn cmd_hull(a: &HullArgs, out: &mut dyn Write) -> Result<i32> {
    let points = load_points(&a.input, input_format(a.format, &a.input))?;
    let (hull, report) = run_algorithm(&points, a.run.algorithm, &a.run)?;
    if let Some(path) = &a.out {
        fs::write(path, format_hull(&hull, &points)).map_err(|e| HullError::io(path, e))?;
    }
    let _ = writeln!(out, "algorithm={}", a.run.algorithm.name());
    let _ = writeln!(out, "{report}");
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let points = load_points(&a.input, input_format(a.format, &a.input))?;
    if points.len() > VERIFY_LIMIT {
        return Err(HullError::Config(format!(
            "verify takes at most {VERIFY_LIMIT} points, got {}",
            points.len()
        )));
    }
    let oracle = brute_force_hull(&points);
    let _ = writeln!(out, "oracle_hull_size={}", oracle.len());
    let mut failed = false;
    for algo in Algo::value_variants() {
        let name = algo.name();
        let mut hull = match run_algorithm(&points, *algo, &a.run) {
            Ok((hull, _)) => hull,
            Err(e) => {
                failed = true;
                let _ = writeln!(out, "{name}=ERROR {e}");
                continue;
            }
        };
        if a.inject_fault == Some(*algo) {
            hull.vertices.pop();
        }
        if hull == oracle {
            let _ = writeln!(out, "{name}=agree");
        } else {
            failed = true;
            let at = hull
                .vertices
                .iter()
                .zip(&oracle.vertices)
                .position(|(x, y)| x != y)
                .unwrap_or(hull.len().min(oracle.len()));
            let _ = writeln!(
                out,
                "{name}=DISAGREE first_difference_at={at} got={:?} expected={:?}",
                hull.vertices.get(at),
                oracle.vertices.get(at)
            );
        }
    }
    Ok(if failed { EXIT_VERIFY } else { EXIT_OK })
}

pub const BENCH_HEADER: &str = "dataset\tn\talgorithm\tinterval_deg\treduced_size\treduction_percent\thull_size\titerations\tcenter_ms\tbinning_ms\tboundary_ms\tfencing_ms\thorizon_ms\tfinal_ms\tcombine_ms\ttotal_ms";

fn cmd_bench(a: &BenchArgs, out: &mut dyn Write) -> Result<i32> {
    if a.repeats == 0 {
        return Err(HullError::Config("repeats must be at least 1".into()));
    }
    let mut tsv = format!("{BENCH_HEADER}\n");
    for family in &a.family {
        let family: Family = family.parse()?;
        for &n in &a.n {
            let points = generate(&DatasetSpec::new(family, n, a.seed))?;
            for &algo in &a.algorithms {
                let intervals: &[f64] = match algo {
                    Algo::Horizon | Algo::Contour => &a.intervals,
                    _ => &[f64::NAN],
                };
                for &deg in intervals {
                    let config = RunConfig {
                        algorithm: algo,
                        bin_interval_deg: if deg.is_nan() { 2.0 } else { deg },
                        initial_interval_deg: if deg.is_nan() { 1.0 } else { deg },
                        final_algorithm: a.final_algorithm,
                        ..Default::default()
                    };
                    let mut runs = (0..a.repeats)
                        .map(|_| run_algorithm(&points, algo, &config).map(|(_, r)| r))
                        .collect::<Result<Vec<_>>>()?;
                    runs.sort_by_key(|r| r.elapsed.total());
                    let r = &runs[runs.len() / 2];
                    let ms = |d: std::time::Duration| d.as_secs_f64() * 1e3;
                    let t = &r.elapsed;
                    let name = algo.name();
                    let _ = writeln!(
                        tsv,
                        "{family}\t{n}\t{name}\t{}\t{}\t{:.4}\t{}\t{}\t{:.3}\t{:.3}\t{:.3}\t{:.3}\t{:.3}\t{:.3}\t{:.3}\t{:.3}",
                        if deg.is_nan() { "-".to_string() } else { deg.to_string() },
                        r.reduced_size,
                        r.reduction_percent,
                        r.hull_size,
                        r.iterations,
                        ms(t.center),
                        ms(t.binning),
                        ms(t.boundary),
                        ms(t.fencing),
                        ms(t.horizon),
                        ms(t.final_hull),
                        ms(t.combine),
                        ms(t.total()),
                    );
                }
            }
        }
    }
    match &a.out {
        Some(path) => fs::write(path, &tsv).map_err(|e| HullError::io(path, e))?,
        None => {
            let _ = out.write_all(tsv.as_bytes());
        }
    }
    Ok(EXIT_OK)
}

fn cmd_render(a: &RenderArgs, out: &mut dyn Write) -> Result<i32> {
    let points = load_points(&a.input, input_format(a.format, &a.input))?;
    let text = fs::read_to_string(&a.hull).map_err(|e| HullError::io(&a.hull, e))?;
    let hull = parse_hull(&text)?;
    if let Some(v) = hull.vertices.iter().find(|&&v| !points.iter().any(|p| p.index == v)) {
        return Err(HullError::Config(format!("hull vertex {v} not in {}", a.input.display())));
    }
    let fence = a
        .fence_interval_deg
        .map(|d| horizon_reduced_fence(&points, d.to_radians()))
        .transpose()?;
    let bins = a.bins_deg.map(BinConfig::from_degrees).transpose()?;
    render_svg(&points, &hull, fence.as_ref(), bins.as_ref(), &a.out)?;
    let _ = writeln!(out, "wrote {}", a.out.display());
    Ok(EXIT_OK)
}

/// Entry point for the binary.
pub fn main() -> ! {
    let code = run(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code)
}
