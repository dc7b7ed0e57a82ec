use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use acuta::bounds::{bounds_table, render_table, verify_cardinality_bounds};
use acuta::construct::{construct_full, random_baseline, ConstructionConfig, Schedule};
use acuta::io::{read_point_set, to_csv, to_json, write_text, AnyPointSet};
use acuta::verify::{
    verify_acute, verify_acute_with, verify_antipodal_witness_with, verify_nonobtuse_with, Mode,
};
use acuta::{Error, Float, PointSet, Rational, Scalar, Tolerance};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

const EXIT_PREDICATE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INPUT: u8 = 3;
const EXIT_CONSTRUCTION: u8 = 4;

#[derive(Parser)]
#[command(name = "acuta", version, about = "Build and certify acute point sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct the 2^(d-1)+1 point acute set in dimension d and certify it.
    Generate(GenerateArgs),
    /// Check a point-set file.
    Verify(VerifyArgs),
    /// Greedy random subset of cube vertices.
    Baseline(BaselineArgs),
    /// Print known lower and upper bounds for a range of dimensions.
    Table {
        #[arg(value_parser = clap::value_parser!(u32).range(2..))]
        dmin: u32,
        dmax: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Arith {
    Exact,
    Float,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScheduleArg {
    Geometric,
    Adaptive,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyMode {
    Margin,
    Verdict,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckArg {
    Acute,
    Nonobtuse,
    Antipodal,
}

#[derive(clap::Args)]
struct GenerateArgs {
    #[arg(value_parser = clap::value_parser!(u32).range(2..=acuta::construct::MAX_DIM as i64))]
    dim: u32,
    #[arg(long, value_enum, default_value = "exact")]
    mode: Arith,
    #[arg(long, value_enum, default_value = "geometric")]
    schedule: ScheduleArg,
    /// Apex height c (default d/2); must exceed sqrt(d-1)/2.
    #[arg(long)]
    apex_height: Option<String>,
    /// First step size of the geometric schedule.
    #[arg(long)]
    s1: Option<String>,
    /// Ratio of the geometric schedule (default 1/(2(d-1))).
    #[arg(long)]
    gamma: Option<String>,
    /// lambda in b^2 = lambda (d-1) a.
    #[arg(long)]
    coupling: Option<String>,
    #[arg(long)]
    max_retries: Option<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(clap::Args)]
struct VerifyArgs {
    path: PathBuf,
    #[arg(long, value_enum, default_value = "margin")]
    mode: VerifyMode,
    #[arg(long, value_enum, default_value = "acute")]
    check: CheckArg,
}

#[derive(clap::Args)]
struct BaselineArgs {
    #[arg(value_parser = clap::value_parser!(u32).range(2..=acuta::construct::MAX_DIM as i64))]
    dim: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

type CliResult = Result<u8, Failure>;

fn input_error(e: Error) -> Failure {
    Failure::new(EXIT_INPUT, e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_USAGE);
    }
    let outcome = match cli.command {
        Command::Generate(args) => match args.mode {
            Arith::Exact => generate::<Rational>(&args),
            Arith::Float => generate::<Float>(&args),
        },
        Command::Verify(args) => verify(&args),
        Command::Baseline(args) => baseline(&args),
        Command::Table { dmin, dmax } => table(dmin as usize, dmax as usize),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("ACUTA_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("ACUTA_THREADS must be a positive integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn parse_opt<S: Scalar>(name: &str, text: &Option<String>) -> Result<Option<S>, Failure> {
    text.as_deref()
        .map(|t| S::parse(t).map_err(|e| Failure::new(EXIT_USAGE, format!("--{name}: {e}"))))
        .transpose()
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => write_text(path, text).map_err(input_error),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::new(EXIT_INPUT, e.to_string()))
        }
    }
}

/// Summary lines go to stdout when the data went to a file, stderr otherwise.
fn summary(out: &Option<PathBuf>, line: String) {
    if out.is_some() {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
}

fn render_set<S: Scalar>(ps: &PointSet<S>, format: Format) -> Result<String, Failure> {
    match format {
        Format::Json => to_json(ps).map_err(input_error),
        Format::Csv => Ok(to_csv(ps)),
    }
}

fn generate<S: Scalar>(args: &GenerateArgs) -> CliResult {
    let started = Instant::now();
    let d = args.dim as usize;
    let mut cfg = ConstructionConfig::<S>::new(d);
    if let ScheduleArg::Adaptive = args.schedule {
        cfg.schedule = Schedule::Adaptive;
    }
    if let Schedule::Geometric { s1, gamma } = &mut cfg.schedule {
        if let Some(v) = parse_opt::<S>("s1", &args.s1)? {
            *s1 = v;
        }
        if let Some(v) = parse_opt::<S>("gamma", &args.gamma)? {
            *gamma = v;
        }
    }
    if let Some(c) = parse_opt::<S>("apex-height", &args.apex_height)? {
        cfg.apex_height = c;
    }
    if let Some(l) = parse_opt::<S>("coupling", &args.coupling)? {
        cfg.coupling = l;
    }
    if let Some(r) = args.max_retries {
        cfg.max_retries = r;
    }
    cfg.validate()
        .map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;

    let (ps, _) = construct_full(&cfg).map_err(|e| match e {
        Error::ConstructionFailed(_) => Failure::new(EXIT_CONSTRUCTION, e.to_string()),
        other => Failure::new(EXIT_USAGE, other.to_string()),
    })?;
    let tol = Tolerance::for_set(&ps).map_err(input_error)?;
    let report = verify_acute(&ps, &tol).map_err(input_error)?;
    if !report.passed {
        return Err(Failure::new(
            EXIT_PREDICATE,
            format!("constructed set failed verification, margin {}", report.margin),
        ));
    }
    emit(&args.out, &render_set(&ps, args.format)?)?;
    summary(&args.out, format!("points: {}", ps.len()));
    summary(&args.out, format!("margin: {}", report.margin));
    summary(
        &args.out,
        format!("elapsed: {:.3}s", started.elapsed().as_secs_f64()),
    );
    Ok(0)
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::new(EXIT_INPUT, e.to_string()))?;
    println!("{text}");
    Ok(())
}

fn check_set<S: Scalar>(ps: &PointSet<S>, args: &VerifyArgs) -> CliResult {
    let tol = Tolerance::for_set(ps).map_err(input_error)?;
    let mode = match args.mode {
        VerifyMode::Margin => Mode::Margin,
        VerifyMode::Verdict => Mode::Verdict,
    };
    let passed = match args.check {
        CheckArg::Acute => {
            let r = verify_acute_with(ps, &tol, mode).map_err(input_error)?;
            print_json(&r)?;
            r.passed
        }
        CheckArg::Nonobtuse => {
            let r = verify_nonobtuse_with(ps, &tol, mode).map_err(input_error)?;
            print_json(&r)?;
            r.passed
        }
        CheckArg::Antipodal => {
            let r = verify_antipodal_witness_with(ps, &tol, mode).map_err(input_error)?;
            print_json(&r)?;
            r.passed
        }
    };
    Ok(if passed { 0 } else { EXIT_PREDICATE })
}

fn verify(args: &VerifyArgs) -> CliResult {
    match read_point_set(&args.path).map_err(input_error)? {
        AnyPointSet::Rational(ps) => check_set(&ps, args),
        AnyPointSet::Float(ps) => check_set(&ps, args),
    }
}

fn baseline(args: &BaselineArgs) -> CliResult {
    let started = Instant::now();
    let d = args.dim as usize;
    let ps = random_baseline(d, args.trials, args.seed).map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
    // Fewer than three points is vacuously acute.
    if ps.len() >= 3 {
        let tol = Tolerance::for_set(&ps).map_err(input_error)?;
        let report = verify_acute(&ps, &tol).map_err(input_error)?;
        if !report.passed {
            return Err(Failure::new(EXIT_PREDICATE, "baseline set failed verification"));
        }
    }
    emit(&args.out, &render_set(&ps, args.format)?)?;
    let card = verify_cardinality_bounds(d, ps.len() as u64).map_err(input_error)?;
    summary(&args.out, format!("points: {}", ps.len()));
    summary(&args.out, format!("bounds: {}", card.note));
    summary(
        &args.out,
        format!("elapsed: {:.3}s", started.elapsed().as_secs_f64()),
    );
    Ok(0)
}

fn table(dmin: usize, dmax: usize) -> CliResult {
    let rows = bounds_table(dmin, dmax).map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
    print!("{}", render_table(&rows));
    Ok(0)
}
