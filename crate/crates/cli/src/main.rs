//! `frechet`: command-line front end for the curve and law distances.
//!
//! Exit status: 0 success, 1 computation error, 2 usage or input error,
//! 3 for metrics that are recognised but deliberately not implemented.

mod output;
mod registry;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use frechet_core::curve;
use frechet_core::law::PointMetric;
use rayon::prelude::*;

use output::Format;
use registry::{Family, Options};

#[derive(Parser)]
#[command(
    name = "frechet",
    version,
    about = "Fréchet-type distances between curves and between probability laws"
)]
struct Cli {
    /// Output format for single values.
    #[arg(long, value_enum, global = true, default_value_t = Format::Plain)]
    format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Distance between two polylines read from CSV files.
    CurveDist(PairArgs),
    /// Distance between two laws on the real line (JSON or sample list).
    LawDist(PairArgs),
    /// Gaussian transport: w2, fid (CSV batches) or gelbrich (moments).
    Gauss(PairArgs),
    /// Divergence between two discrete laws (JSON).
    Div(PairArgs),
    /// Free-space decision at a fixed epsilon, optionally rendered as SVG.
    Freespace(FreespaceArgs),
    /// Pairwise distance matrix over every file of a directory.
    Matrix(MatrixArgs),
}

#[derive(Args)]
struct PairArgs {
    metric: String,
    a: PathBuf,
    b: PathBuf,
    #[command(flatten)]
    opts: NumericArgs,
}

#[derive(Args)]
struct FreespaceArgs {
    a: PathBuf,
    b: PathBuf,
    #[arg(long)]
    eps: f64,
    /// Write the SVG to this file; with no value, to the output stream.
    #[arg(long, num_args = 0..=1, default_missing_value = "-")]
    svg: Option<String>,
}

#[derive(Args)]
struct MatrixArgs {
    #[arg(long)]
    metric: String,
    dir: PathBuf,
    #[command(flatten)]
    opts: NumericArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum PointMetricArg {
    Euclidean,
    Taxicab,
}

#[derive(Args)]
struct NumericArgs {
    /// Relative bracket width for Fréchet searches.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Wasserstein order.
    #[arg(long, default_value_t = 1.0)]
    p: f64,
    /// Gini index exponent.
    #[arg(long, default_value_t = 2.0)]
    alpha: f64,
    /// Sample spacing for Hausdorff, shortest and maxmin.
    #[arg(long, default_value_t = 1e-3)]
    resolution: f64,
    /// Interior re-rooting points per edge for closed curves.
    #[arg(long, default_value_t = 4)]
    shifts: usize,
    /// Gaussian kernel bandwidth for mmd.
    #[arg(long)]
    sigma: Option<f64>,
    /// Entropic regularisation for sinkhorn.
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long, default_value_t = 100_000)]
    max_iters: usize,
    #[arg(long, default_value_t = 1e-9)]
    stop_tol: f64,
    /// Point metric for levy2.
    #[arg(long, value_enum, default_value_t = PointMetricArg::Euclidean)]
    point_metric: PointMetricArg,
}

impl NumericArgs {
    fn options(&self) -> Options {
        Options {
            tol: self.tol,
            p: self.p,
            alpha: self.alpha,
            resolution: self.resolution,
            shifts: self.shifts,
            sigma: self.sigma,
            eps: self.eps,
            max_iters: self.max_iters,
            stop_tol: self.stop_tol,
            point_metric: match self.point_metric {
                PointMetricArg::Euclidean => PointMetric::Euclidean,
                PointMetricArg::Taxicab => PointMetric::Taxicab,
            },
        }
    }
}

/// Why a run stopped early.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Compute(frechet_core::Error),
    Refused(&'static str, &'static str),
}

impl From<frechet_core::Error> for Failure {
    fn from(e: frechet_core::Error) -> Self {
        Failure::Compute(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Compute(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Refused(..) => 3,
        }
    }

    fn report(&self) {
        match self {
            Failure::Usage(msg) => eprintln!("error: {msg}"),
            Failure::Compute(e) => eprintln!("error: {}: {e}", e.kind()),
            Failure::Refused(name, why) => eprintln!("error: `{name}` is unimplemented: {why}"),
        }
    }
}

/// Checks that `metric` is registered under `family` (any family when `None`).
fn check_metric(metric: &str, family: Option<Family>) -> Result<Family, Failure> {
    if let Some((name, why)) = registry::refusal(metric) {
        return Err(Failure::Refused(name, why));
    }
    match (registry::family_of(metric), family) {
        (Some(f), None) => Ok(f),
        (Some(f), Some(want)) if f == want => Ok(f),
        (Some(f), Some(want)) => Err(Failure::Usage(format!(
            "metric `{metric}` belongs to `{}`, not `{}`",
            f.command(),
            want.command()
        ))),
        (None, _) => {
            let names: Vec<&str> = registry::METRICS
                .iter()
                .filter(|(_, f)| family.is_none_or(|want| *f == want))
                .map(|(n, _)| *n)
                .collect();
            Err(Failure::Usage(format!(
                "unknown metric `{metric}`; expected one of: {}",
                names.join(", ")
            )))
        }
    }
}

fn pair(family: Family, args: &PairArgs, format: Format) -> Result<String, Failure> {
    check_metric(&args.metric, Some(family))?;
    let a = registry::load(&args.metric, &args.a)?;
    let b = registry::load(&args.metric, &args.b)?;
    let outcome = registry::compute(&args.metric, &a, &b, &args.opts.options())?;
    Ok(output::single(&args.metric, &outcome, format))
}

fn load_curve(path: &Path) -> Result<curve::Polyline, Failure> {
    match registry::load("frechet", path)? {
        registry::Input::Curve(p) => Ok(p),
        _ => unreachable!("curve metric loads curves"),
    }
}

fn freespace(args: &FreespaceArgs) -> Result<String, Failure> {
    let p = load_curve(&args.a)?;
    let q = load_curve(&args.b)?;
    let reachable = curve::frechet_decision(&p, &q, args.eps)?;
    match args.svg.as_deref() {
        None => Ok(format!("{reachable}\n")),
        Some("-") => Ok(curve::free_space_svg(&p, &q, args.eps)?),
        Some(file) => {
            let svg = curve::free_space_svg(&p, &q, args.eps)?;
            fs::write(file, svg).map_err(|e| Failure::Usage(format!("cannot write {file}: {e}")))?;
            Ok(format!("{reachable}\n"))
        }
    }
}

/// Worker count from `FRECHET_THREADS`, defaulting to rayon's choice.
fn thread_count() -> Result<Option<usize>, Failure> {
    match std::env::var("FRECHET_THREADS") {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(Failure::Usage(format!(
                "FRECHET_THREADS must be an integer >= 1, got {v:?}"
            ))),
        },
    }
}

fn matrix(args: &MatrixArgs, format: Format) -> Result<String, Failure> {
    check_metric(&args.metric, None)?;
    let mut paths: Vec<PathBuf> = fs::read_dir(&args.dir)
        .map_err(|e| Failure::Usage(format!("cannot read directory {}: {e}", args.dir.display())))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(Failure::Usage(format!("no input files in {}", args.dir.display())));
    }
    let inputs = paths
        .iter()
        .map(|p| registry::load(&args.metric, p))
        .collect::<Result<Vec<_>, _>>()?;
    let opts = args.opts.options();
    let n = inputs.len();
    let job = || {
        (0..n * n)
            .into_par_iter()
            .map(|k| registry::compute(&args.metric, &inputs[k / n], &inputs[k % n], &opts).map(|o| o.value))
            .collect::<Result<Vec<f64>, Failure>>()
    };
    let values = match thread_count()? {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Failure::Usage(format!("cannot start worker pool: {e}")))?
            .install(job)?,
        None => job()?,
    };
    let names: Vec<String> = paths
        .iter()
        .map(|p| {
            p.file_name()
                .map_or_else(String::new, |s| s.to_string_lossy().into_owned())
        })
        .collect();
    Ok(output::matrix(&args.metric, &names, &values, format))
}

fn run(cli: &Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::CurveDist(a) => pair(Family::Curve, a, cli.format),
        Command::LawDist(a) => pair(Family::Law, a, cli.format),
        Command::Gauss(a) => pair(Family::Gauss, a, cli.format),
        Command::Div(a) => pair(Family::Div, a, cli.format),
        Command::Freespace(a) => freespace(a),
        Command::Matrix(a) => matrix(a, cli.format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|text| match &cli.output {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not worth an error exit
            let _ = stdout.write_all(text.as_bytes());
            Ok(())
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            f.report();
            ExitCode::from(f.exit_code())
        }
    }
}
