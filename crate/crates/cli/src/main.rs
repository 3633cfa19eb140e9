//! `quartic`: runs the verification commands and prints reports.

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context as _, Result};
use clap::{Parser, Subcommand, ValueEnum};
use quartic_core::census;
use quartic_core::{Command, Context, Golden, Mode, Report};

/// Overrides `--cache` when set.
const CACHE_ENV: &str = "QP_CACHE";

#[derive(Parser)]
#[command(name = "quartic", version, about = "Divisor-class verification on X^4 + Y^4 = Z^4")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a verification command and print its report.
    Verify(VerifyArgs),
    /// Print the quadratic-point census as a JSON array.
    Census,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser)]
struct VerifyArgs {
    /// f73, exact or two_phase.
    #[arg(long, default_value = "f73")]
    mode: Mode,
    #[arg(long, value_enum, default_value = "text")]
    report: Format,
    /// Cache directory (one file per field). QP_CACHE takes precedence.
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long, default_value_t = default_jobs())]
    jobs: usize,
    /// Golden data file; the built-in copy is used when absent.
    #[arg(long)]
    golden: Option<PathBuf>,
    /// verify-rohrlich, key-identity, basis, galois-matrices, weil-matrix,
    /// gsp-check, automorphisms, mordell-weil [field], zeta-check,
    /// effective-count, quadratic-points, faddeev-maps or all.
    command: String,
    /// Field tag for mordell-weil: Q, Q_i, Q_sqrt2, Q_sqrtm2 or Q_zeta8.
    field: Option<String>,
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

/// Configuration problems exit with 2, failed checks with 1.
fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let outcome = match cli.cmd {
        Cmd::Verify(args) => verify(args),
        Cmd::Census => census_json(),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn verify(args: VerifyArgs) -> Result<bool> {
    let cmd = Command::parse(&args.command, args.field.as_deref())?;
    if args.field.is_some() && !matches!(cmd, Command::MordellWeil(_)) {
        anyhow::bail!("`{}` takes no field argument", args.command);
    }
    let golden = match &args.golden {
        Some(p) => Golden::load(p).with_context(|| format!("loading {}", p.display()))?,
        None => Golden::builtin(),
    };
    let cache = std::env::var_os(CACHE_ENV).map(PathBuf::from).or(args.cache);
    let ctx = Context::new(args.mode, golden, args.jobs.max(1), cache.as_deref())?;
    let reports = ctx.run(cmd);
    quiet_pipe(print_reports(&reports, args.report))?;
    let failed = reports.iter().find_map(|r| r.first_failure().map(|c| (r, c)));
    if let Some((r, c)) = failed {
        eprintln!("first failing check: {}: {}", r.command, c.name);
    }
    Ok(failed.is_none())
}

/// A closed stdout (`quartic ... | head`) is not an error.
fn quiet_pipe(r: io::Result<()>) -> io::Result<()> {
    match r {
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        r => r,
    }
}

fn print_reports(reports: &[Report], format: Format) -> io::Result<()> {
    let mut out = io::stdout().lock();
    match format {
        Format::Json => {
            let v: Vec<_> = reports.iter().map(Report::to_json).collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("reports serialize"))
        }
        Format::Text => {
            for r in reports {
                write!(out, "{}", r.to_text())?;
            }
            let passed = reports.iter().filter(|r| r.pass).count();
            writeln!(out, "{passed}/{} reports passed", reports.len())
        }
    }
}

fn census_json() -> Result<bool> {
    let c = census::quadratic_points_census()?;
    quiet_pipe(writeln!(io::stdout().lock(), "{}", serde_json::to_string_pretty(&c.records_json())?))?;
    Ok(true)
}
