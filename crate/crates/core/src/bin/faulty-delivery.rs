use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use faulty_delivery::candidates::cr_at;
use faulty_delivery::hybrid::{
    bangbang_trace, outer_bangbang_y, outer_curve_is_separating, region_map, write_grid_csv, write_polyline_csv,
    Bounds, CurvePair,
};
use faulty_delivery::model::{normalize, FailTime, Point};
use faulty_delivery::oracle::{self, RegionSampler, VerificationReport};
use faulty_delivery::simulator::SupConfig;
use faulty_delivery::{select, svg, Error};

/// Competitive analysis of two-drone delivery with a faulty starter drone.
#[derive(Parser, Debug)]
#[command(name = "faulty-delivery", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hybrid selection and per-strategy ratios at one start point (JSON).
    #[command(allow_negative_numbers = true)]
    Analyze(AnalyzeArgs),
    /// Region map over a lattice (CSV, JSON or SVG).
    #[command(allow_negative_numbers = true)]
    Regions(RegionsArgs),
    /// Curve separating two regions, as a CSV or JSON polyline.
    #[command(allow_negative_numbers = true)]
    Curve(CurveArgs),
    /// Start point maximizing the hybrid ratio (JSON).
    #[command(allow_negative_numbers = true)]
    Worstcase(WorstcaseArgs),
    /// Brute-force verification suites (JSON report list).
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    #[arg(long)]
    x: f64,
    #[arg(long)]
    y: f64,
    /// Also report each strategy's ratio at this fail time.
    #[arg(long)]
    t: Option<f64>,
}

#[derive(Args, Debug, Clone, Copy)]
struct BoundsArgs {
    #[arg(long)]
    xmin: Option<f64>,
    #[arg(long)]
    xmax: Option<f64>,
    #[arg(long)]
    ymin: Option<f64>,
    #[arg(long)]
    ymax: Option<f64>,
}

impl BoundsArgs {
    fn resolve(self, default: [f64; 4]) -> faulty_delivery::Result<Bounds> {
        Bounds::new(
            self.xmin.unwrap_or(default[0]),
            self.xmax.unwrap_or(default[1]),
            self.ymin.unwrap_or(default[2]),
            self.ymax.unwrap_or(default[3]),
        )
    }
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Output file; stdout when absent.
    #[arg(long, env = "FD_OUT")]
    out: Option<PathBuf>,
    #[arg(long, value_enum, env = "FD_FORMAT")]
    format: Option<Format>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Args, Debug)]
struct RegionsArgs {
    #[command(flatten)]
    bounds: BoundsArgs,
    #[arg(long, env = "FD_STEP", default_value_t = 0.01)]
    step: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Which {
    A0a1,
    A0ad,
    AdBoundary,
}

#[derive(Args, Debug)]
struct CurveArgs {
    #[arg(long, value_enum, default_value = "a0a1")]
    which: Which,
    /// x range of the trace; y bounds limit the scan window.
    #[command(flatten)]
    bounds: BoundsArgs,
    #[arg(long, env = "FD_STEP", default_value_t = 0.01)]
    step: f64,
    /// Emit the closed-form A0/A1 curve instead of tracing it.
    #[arg(long)]
    closed_form: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct WorstcaseArgs {
    #[command(flatten)]
    bounds: BoundsArgs,
    #[arg(long, env = "FD_STEP", default_value_t = 0.01)]
    step: f64,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Suite {
    CrA0,
    CrA1,
    CrAd,
    ClosedForms,
    AdVsA1,
    HybridOpt,
    Simulator,
    TriplePoint,
    CrBound,
    All,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: Suite,
    #[arg(long, env = "FD_SAMPLES", default_value_t = 1000)]
    samples: usize,
    #[arg(long, env = "FD_SEED", default_value_t = oracle::DEFAULT_SEED)]
    seed: u64,
    /// Fail-time grid spacing of the brute-force supremum.
    #[arg(long, env = "FD_T_STEP", default_value_t = 1e-4)]
    t_step: f64,
    /// Turn-point grid spacing of the single-turn family.
    #[arg(long, env = "FD_A_STEP", default_value_t = 1e-3)]
    a_step: f64,
    /// Fail-time grid spacing used for single-turn family members.
    #[arg(long, env = "FD_FAMILY_T_STEP", default_value_t = 1e-3)]
    family_t_step: f64,
    /// Grid spacing of the lattice scans.
    #[arg(long, env = "FD_STEP", default_value_t = 0.01)]
    step: f64,
    #[arg(long, env = "FD_OUT")]
    out: Option<PathBuf>,
}

/// Single-turn checks are the slowest; `--suite all` runs at most this many.
const ALL_HYBRID_OPT_CAP: usize = 200;
/// Simulator pairs per strategy under `--suite all`.
const ALL_SIMULATOR_CAP: usize = 100;

enum Failure {
    Usage(String),
    Runtime(String),
    Unverified,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NoDelivery(_) => Failure::Runtime(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

fn open_out(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_json<T: Serialize>(value: &T, out: &mut dyn Write) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    out.write_all(b"\n")
}

fn positive(name: &str, v: f64) -> Result<(), Failure> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Failure::Usage(format!("--{name} must be positive, got {v}")))
    }
}

fn run_analyze(a: AnalyzeArgs) -> Result<(), Failure> {
    let norm = normalize(Point::new(a.x, a.y))?;
    let inst = norm.instance;
    let report = select(&inst);
    let mut candidates = Vec::new();
    for c in &report.per_candidate {
        let mut entry = json!({ "kind": c.kind.name(), "ratio": c.ratio, "worst_t": c.worst_t });
        if let Some(t) = a.t {
            entry["cr_at_t"] = json!(cr_at(&inst, c.kind, FailTime::new(t)?)?);
        }
        candidates.push(entry);
    }
    let value = json!({
        "x": a.x,
        "y": a.y,
        "folded": norm.folded,
        "label": report.label,
        "cr": report.chosen_cr,
        "worst_t": report.chosen_worst_t,
        "d": report.d,
        "t": a.t,
        "candidates": candidates,
    });
    write_json(&value, &mut *open_out(&None)?)?;
    Ok(())
}

fn run_regions(a: RegionsArgs) -> Result<(), Failure> {
    positive("step", a.step)?;
    let bounds = a.bounds.resolve([-1.0, 3.0, 0.0, 2.0])?;
    let grid = region_map(bounds, a.step)?;
    let mut out = open_out(&a.output.out)?;
    match a.output.format.unwrap_or(Format::Csv) {
        Format::Csv => write_grid_csv(&grid, &mut out)?,
        Format::Json => write_json(&grid, &mut *out)?,
        Format::Svg => {
            let x_range = (bounds.xmin, bounds.xmax);
            let y_range = (bounds.ymin, bounds.ymax);
            let overlays = [CurvePair::A0A1, CurvePair::A0Ad, CurvePair::AdBoundary]
                .into_iter()
                .map(|pair| bangbang_trace(pair, x_range, y_range, a.step))
                .collect::<faulty_delivery::Result<Vec<_>>>()?;
            svg::write_region_svg(&grid, &overlays, &mut out)?;
        }
    }
    out.flush()?;
    Ok(())
}

fn run_curve(a: CurveArgs) -> Result<(), Failure> {
    positive("step", a.step)?;
    let bounds = a.bounds.resolve([0.0, 1.0, 0.0, 2.0])?;
    let points = if a.closed_form {
        if a.which != Which::A0a1 {
            return Err(Failure::Usage("--closed-form is only available for --which a0a1".into()));
        }
        faulty_delivery::hybrid::lattice(bounds.xmin, bounds.xmax, a.step)
            .into_iter()
            .filter(|&x| x > 0.0)
            .filter_map(|x| outer_bangbang_y(x).ok().flatten().map(|y| Point::new(x, y)))
            .filter(|p| bounds.contains(p.x, p.y) && outer_curve_is_separating(p.x, p.y))
            .collect()
    } else {
        let pair = match a.which {
            Which::A0a1 => CurvePair::A0A1,
            Which::A0ad => CurvePair::A0Ad,
            Which::AdBoundary => CurvePair::AdBoundary,
        };
        bangbang_trace(pair, (bounds.xmin, bounds.xmax), (bounds.ymin, bounds.ymax), a.step)?
    };
    let mut out = open_out(&a.output.out)?;
    match a.output.format.unwrap_or(Format::Csv) {
        Format::Csv => write_polyline_csv(&points, &mut out)?,
        Format::Json => write_json(&points, &mut *out)?,
        Format::Svg => return Err(Failure::Usage("curve supports csv and json".into())),
    }
    out.flush()?;
    Ok(())
}

fn run_worstcase(a: WorstcaseArgs) -> Result<(), Failure> {
    positive("step", a.step)?;
    let bounds = a.bounds.resolve([0.0, 1.0, 0.0, 1.0])?;
    let wc = oracle::global_worst_case(bounds, a.step)?;
    write_json(&wc, &mut *open_out(&None)?)?;
    Ok(())
}

fn run_verify(a: VerifyArgs) -> Result<(), Failure> {
    positive("t-step", a.t_step)?;
    positive("a-step", a.a_step)?;
    positive("family-t-step", a.family_t_step)?;
    positive("step", a.step)?;
    if a.samples == 0 {
        return Err(Failure::Usage("--samples must be at least 1".into()));
    }
    let sup = SupConfig { t_step: a.t_step, ..SupConfig::default() };
    let family_sup = SupConfig { t_step: a.family_t_step, ..SupConfig::default() };
    let all = a.suite == Suite::All;
    let wants = |s: Suite| all || a.suite == s;
    let closed = wants(Suite::ClosedForms);

    let mut reports: Vec<VerificationReport> = Vec::new();
    for (suite, region) in [
        (Suite::CrA0, RegionSampler::A0Plane),
        (Suite::CrA1, RegionSampler::A1Outside),
        (Suite::CrAd, RegionSampler::AdInside),
    ] {
        if closed || a.suite == suite {
            reports.push(oracle::verify_candidate_cr(region, a.samples, a.seed, &sup)?);
        }
    }
    if wants(Suite::AdVsA1) {
        reports.push(oracle::check_ad_vs_a1(a.samples, a.seed, &sup)?);
    }
    if wants(Suite::HybridOpt) {
        let n = if all { a.samples.min(ALL_HYBRID_OPT_CAP) } else { a.samples };
        reports.push(oracle::check_hybrid_optimality(n, a.seed, a.a_step, &family_sup)?);
    }
    if wants(Suite::Simulator) {
        let n = if all { a.samples.min(ALL_SIMULATOR_CAP) } else { a.samples };
        reports.push(oracle::check_simulator(n, a.seed)?);
    }
    if wants(Suite::TriplePoint) {
        reports.push(oracle::check_triple_point(a.step)?);
    }
    if wants(Suite::CrBound) {
        reports.push(oracle::check_cr_bound(Bounds::new(-3.0, 3.0, 0.0, 3.0)?, a.step)?);
    }

    for r in &reports {
        eprintln!("{}", r.summary());
    }
    let mut out = open_out(&a.out)?;
    write_json(&reports, &mut *out)?;
    out.flush()?;
    if reports.iter().all(|r| r.passed) {
        Ok(())
    } else {
        Err(Failure::Unverified)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze(a) => run_analyze(a),
        Command::Regions(a) => run_regions(a),
        Command::Curve(a) => run_curve(a),
        Command::Worstcase(a) => run_worstcase(a),
        Command::Verify(a) => run_verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Unverified) => ExitCode::from(1),
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
