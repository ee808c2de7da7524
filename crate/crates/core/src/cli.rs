//! Command-line front end: `solve`, `gen`, and `bench`.
//!
//! Exit codes: 0 success, 2 usage or parse error, 3 empty input or invalid
//! geometry.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::bench::{
    run_convergence, run_scaling, KPolicy, ScalingConfig, REPORT_VERSION,
};
use crate::datagen::{generate, CloudKind, GenParams};
use crate::error::Error;
use crate::geom::Tolerance;
use crate::io::{read_points, write_points, Format};
use crate::projection::{select_k_with, KMode, KSelection};
use crate::solve::{solve_with, SolveReport, Strategy};

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_GEOMETRY: u8 = 3;

/// Environment variable consulted when `--seed` is absent.
pub const SEED_ENV: &str = "MINISPHERE_SEED";

#[derive(Debug, Parser)]
#[command(name = "minisphere", version, about = "Smallest enclosing sphere of 3D point clouds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve for the smallest enclosing sphere of a point file.
    Solve(SolveArgs),
    /// Generate a seeded point cloud.
    Gen(GenArgs),
    /// Run scaling or convergence experiments.
    #[command(subcommand)]
    Bench(BenchCommand),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KArg {
    Auto,
    Symmetric,
    Value(usize),
}

fn parse_k(s: &str) -> Result<KArg, String> {
    match s {
        "auto" => Ok(KArg::Auto),
        "symmetric" => Ok(KArg::Symmetric),
        _ => match s.parse::<usize>() {
            Ok(0) => Err("k must be at least 1".into()),
            Ok(k) => Ok(KArg::Value(k)),
            Err(_) => Err(format!("`{s}` is not a positive integer, `auto` or `symmetric`")),
        },
    }
}

/// Accepts plain integers and exponent forms such as `1e5` or `3e4`.
fn parse_count(s: &str) -> Result<usize, String> {
    if let Ok(n) = s.parse::<usize>() {
        return Ok(n);
    }
    match s.parse::<f64>() {
        Ok(v) if v >= 0.0 && v.fract() == 0.0 && v <= 1e15 => Ok(v as usize),
        _ => Err(format!("`{s}` is not a non-negative integer")),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountList(pub Vec<usize>);

fn parse_count_list(s: &str) -> Result<CountList, String> {
    let items: Result<Vec<usize>, String> = s.split(',').map(|t| parse_count(t.trim())).collect();
    let items = items?;
    if items.is_empty() {
        return Err("empty list".into());
    }
    Ok(CountList(items))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedList(pub Vec<u64>);

/// Comma-separated seeds; `a..b` expands to the inclusive range.
fn parse_seed_list(s: &str) -> Result<SeedList, String> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim) {
        if let Some((a, b)) = item.split_once("..") {
            let a: u64 = a.parse().map_err(|_| format!("bad range start in `{item}`"))?;
            let b: u64 = b.parse().map_err(|_| format!("bad range end in `{item}`"))?;
            if a > b {
                return Err(format!("empty range `{item}`"));
            }
            out.extend(a..=b);
        } else {
            out.push(item.parse().map_err(|_| format!("`{item}` is not a seed"))?);
        }
    }
    Ok(SeedList(out))
}

fn parse_kind(s: &str) -> Result<CloudKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub input: PathBuf,
    /// csv, xyz or json; defaults to the file extension.
    #[arg(long, value_parser = parse_format)]
    pub format: Option<Format>,
    /// projection, welzl or auto.
    #[arg(long, default_value = "auto", value_parser = parse_strategy)]
    pub strategy: Strategy,
    /// Number of projection planes: an integer, `auto` or `symmetric`.
    #[arg(long, default_value = "auto", value_parser = parse_k)]
    pub k: KArg,
    #[arg(long, default_value_t = KSelection::DEFAULT_C1)]
    pub c1: f64,
    #[arg(long, default_value_t = KSelection::DEFAULT_C2)]
    pub c2: f64,
    #[arg(long, env = SEED_ENV, default_value_t = 0)]
    pub seed: u64,
    /// Relative tolerance.
    #[arg(long, default_value_t = Tolerance::DEFAULT_EPS_REL)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(value_parser = parse_kind)]
    pub kind: CloudKind,
    #[arg(value_parser = parse_count)]
    pub n: usize,
    #[arg(long, env = SEED_ENV, default_value_t = 0)]
    pub seed: u64,
    /// Output file; standard output when absent.
    #[arg(short, long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_parser = parse_format)]
    pub format: Option<Format>,
    #[arg(long, default_value_t = GenParams::default().radius)]
    pub radius: f64,
    #[arg(long, default_value_t = GenParams::default().sigma)]
    pub sigma: f64,
    #[arg(long, default_value_t = GenParams::default().clusters)]
    pub clusters: usize,
}

#[derive(Debug, Subcommand)]
pub enum BenchCommand {
    /// Time a strategy over increasing sizes and fit the log-log slope.
    Scaling(ScalingArgs),
    /// Hull coverage and repair rounds as the plane count grows.
    Convergence(ConvergenceArgs),
}

#[derive(Debug, Args)]
pub struct ScalingArgs {
    #[arg(long, value_parser = parse_count_list, default_value = "1e4,3e4,1e5,3e5,1e6")]
    pub sizes: CountList,
    #[arg(long, default_value = "24", value_parser = parse_k)]
    pub k: KArg,
    #[arg(long, value_parser = parse_seed_list, default_value = "1,2,3")]
    pub seeds: SeedList,
    #[arg(long, default_value = "projection", value_parser = parse_strategy)]
    pub strategy: Strategy,
    #[arg(long, default_value = "uniform-ball", value_parser = parse_kind)]
    pub kind: CloudKind,
    #[arg(long, default_value_t = ScalingConfig::default().min_sample_ms)]
    pub min_sample_ms: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConvergenceArgs {
    #[arg(long, default_value_t = 30)]
    pub n: usize,
    #[arg(long, value_parser = parse_count_list, default_value = "6,12,24,48")]
    pub ks: CountList,
    #[arg(long, value_parser = parse_seed_list, default_value = "1..20")]
    pub seeds: SeedList,
    #[arg(long, default_value = "uniform-ball", value_parser = parse_kind)]
    pub kind: CloudKind,
    /// Evaluate seeds in parallel.
    #[arg(long)]
    pub parallel: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
struct VersionedSolveReport<'a> {
    report_version: u32,
    #[serde(flatten)]
    report: &'a SolveReport,
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::EmptyInput | Error::NonFinite { .. } => EXIT_GEOMETRY,
        _ => EXIT_USAGE,
    }
}

fn write_json<T: Serialize>(value: &T, out: Option<&Path>) -> Result<(), Error> {
    match out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            serde_json::to_writer_pretty(&mut w, value)?;
            writeln!(w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            serde_json::to_writer_pretty(&mut w, value)?;
            writeln!(w)?;
        }
    }
    Ok(())
}

fn cmd_solve(args: &SolveArgs) -> Result<SolveReport, Error> {
    let points = read_points(&args.input, args.format)?;
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    if !(args.tol.is_finite() && args.tol > 0.0) {
        return Err(Error::InvalidParams("--tol must be positive".into()));
    }
    let sel = match args.k {
        KArg::Auto => select_k_with(points.len(), KMode::General, args.c1, args.c2),
        KArg::Symmetric => KSelection::symmetric(),
        KArg::Value(k) => KSelection::fixed(k)?,
    };
    let tol = Tolerance::for_points(&points, args.tol);
    let report = solve_with(&points, args.strategy, &sel, args.seed, &tol)?;
    write_json(
        &VersionedSolveReport {
            report_version: REPORT_VERSION,
            report: &report,
        },
        None,
    )?;
    Ok(report)
}

fn cmd_gen(args: &GenArgs) -> Result<(), Error> {
    let params = GenParams {
        radius: args.radius,
        sigma: args.sigma,
        clusters: args.clusters,
        ..GenParams::default()
    };
    let points = generate(args.kind, args.n, args.seed, &params)?;
    match &args.out {
        Some(path) => {
            let format = args
                .format
                .or_else(|| Format::from_path(path))
                .unwrap_or(Format::Csv);
            let mut w = BufWriter::new(File::create(path)?);
            write_points(&mut w, &points, format)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            write_points(stdout.lock(), &points, args.format.unwrap_or(Format::Csv))?;
        }
    }
    Ok(())
}

fn cmd_bench(cmd: &BenchCommand) -> Result<(), Error> {
    match cmd {
        BenchCommand::Scaling(a) => {
            let k = match a.k {
                KArg::Auto => KPolicy::Auto,
                KArg::Symmetric => KPolicy::Symmetric,
                KArg::Value(k) => KPolicy::Fixed(k),
            };
            let cfg = ScalingConfig {
                sizes: a.sizes.0.clone(),
                seeds: a.seeds.0.clone(),
                strategy: a.strategy,
                k,
                kind: a.kind,
                min_sample_ms: a.min_sample_ms,
                ..ScalingConfig::default()
            };
            let report = run_scaling(&cfg)?;
            write_json(&report, a.out.as_deref())
        }
        BenchCommand::Convergence(a) => {
            let report = run_convergence(a.kind, a.n, &a.ks.0, &a.seeds.0, a.parallel)?;
            write_json(&report, a.out.as_deref())
        }
    }
}

/// Runs the CLI on explicit arguments (the first is the program name).
pub fn run_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Solve(a) => cmd_solve(a).map(|_| ()),
        Command::Gen(a) => cmd_gen(a),
        Command::Bench(b) => cmd_bench(b),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

pub fn main() -> ExitCode {
    run_with_args(std::env::args_os())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_lists() {
        assert_eq!(parse_seed_list("1,2,3").unwrap().0, vec![1, 2, 3]);
        assert_eq!(parse_seed_list("1..4").unwrap().0, vec![1, 2, 3, 4]);
        assert_eq!(parse_seed_list("7, 1..2").unwrap().0, vec![7, 1, 2]);
        assert!(parse_seed_list("1,x").is_err());
        assert!(parse_seed_list("5..1").is_err());
    }

    #[test]
    fn counts_accept_exponents() {
        assert_eq!(parse_count("1e4").unwrap(), 10_000);
        assert_eq!(parse_count("300000").unwrap(), 300_000);
        assert!(parse_count("1.5").is_err());
        assert!(parse_count("-3").is_err());
        assert_eq!(parse_count_list("1e4,3e4").unwrap().0, vec![10_000, 30_000]);
        assert!(parse_count_list("1e4,,3").is_err());
    }

    #[test]
    fn k_values() {
        assert_eq!(parse_k("auto").unwrap(), KArg::Auto);
        assert_eq!(parse_k("12").unwrap(), KArg::Value(12));
        assert!(parse_k("0").is_err());
        assert!(parse_k("many").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code_for(&Error::EmptyInput), EXIT_GEOMETRY);
        assert_eq!(
            exit_code_for(&Error::Parse {
                line: 3,
                message: "x".into()
            }),
            EXIT_USAGE
        );
        assert_eq!(exit_code_for(&Error::UnknownKind("b".into())), EXIT_USAGE);
    }
}
