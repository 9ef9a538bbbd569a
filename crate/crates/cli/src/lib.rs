//! `hdrc`: DMT curves, variant comparisons, outage simulation and self-checks
//! for the half-duplex MIMO relay channel.

mod grid;
mod output;
mod verify;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use dmt_core::channel::{db_to_linear, diversity_fit, outage_sweep, OutageEstimate, SlopeFit};
use dmt_core::solvers::{dmt_curve, solve_two_var, uniform_grid, DmtCurve, Variant};
use dmt_core::{AntennaConfig, DmtError};
use serde::Serialize;

pub use grid::parse_grid;
pub use output::Format;
pub use verify::{run_battery, CheckResult, Fault};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    /// A verify check failed, or an I/O error occurred.
    pub const FAILURE: i32 = 1;
    pub const INVALID_CONFIG: i32 = 2;
    pub const SOLVER_REFUSED: i32 = 3;
    pub const INSUFFICIENT_DATA: i32 = 4;
}

#[derive(Debug, Parser)]
#[command(name = "hdrc", version, about = "Diversity-multiplexing tradeoff of the half-duplex MIMO relay channel")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate one or more DMT variants over a rate grid.
    Curve(CurveArgs),
    /// Tabulate several variants side by side with pairwise gaps.
    Compare(CurveArgs),
    /// Monte Carlo outage probabilities and the fitted diversity slope.
    Simulate(SimulateArgs),
    /// Run the internal consistency checks.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct ConfigArgs {
    /// Source antennas.
    #[arg(long, default_value_t = 1)]
    pub m: usize,
    /// Relay antennas.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Destination antennas.
    #[arg(long, default_value_t = 1)]
    pub n: usize,
}

impl ConfigArgs {
    fn config(&self) -> Result<AntennaConfig, DmtError> {
        AntennaConfig::new(self.m, self.k, self.n)
    }
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Comma-separated variants (hd-dynamic, fd, ptp, hd-static-n1n, closed-1k1, closed-n1n,
    /// symmetric-upper, ddf-1k1, static-1k1, grid-oracle). Defaults to hd-dynamic for
    /// `curve` and hd-dynamic,fd for `compare`.
    #[arg(long)]
    pub variants: Option<String>,
    /// Rates as start:stop:step or a comma list; 21 points over the full range by default.
    #[arg(long)]
    pub r: Option<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Multiplexing gain, strictly between 0 and min(m, n).
    #[arg(long, allow_hyphen_values = true)]
    pub r: f64,
    /// SNR values in dB as start:stop:step or a comma list.
    #[arg(long, default_value = "15:35:5")]
    pub snr_db: String,
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Also report the soft conjecture checks.
    #[arg(long)]
    pub conjectures: bool,
    /// Write the report to a file in the chosen format.
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long, hide = true)]
    pub inject_fault: Option<Fault>,
}

fn error_code(e: &DmtError) -> i32 {
    match e {
        DmtError::Refused(_) => exit::SOLVER_REFUSED,
        DmtError::InsufficientData { .. } => exit::INSUFFICIENT_DATA,
        DmtError::Internal(_) => exit::FAILURE,
        _ => exit::INVALID_CONFIG,
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl From<DmtError> for Failure {
    fn from(e: DmtError) -> Self {
        Failure { code: error_code(&e), message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: exit::FAILURE, message: format!("I/O error: {e}") }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure { code: exit::INVALID_CONFIG, message: message.into() }
}

fn parse_variants(spec: &str) -> Result<Vec<Variant>, Failure> {
    let vs = spec
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.parse::<Variant>())
        .collect::<Result<Vec<_>, _>>()?;
    if vs.is_empty() {
        return Err(invalid("no variants given"));
    }
    Ok(vs)
}

fn rate_grid(spec: Option<&str>, config: &AntennaConfig) -> Result<Vec<f64>, Failure> {
    match spec {
        None => Ok(uniform_grid(0.0, config.max_rate(), 21)),
        Some(s) => parse_grid(s).map_err(|e| invalid(format!("--r: {e}"))),
    }
}

fn curves(args: &CurveArgs, default_variants: &str) -> Result<(AntennaConfig, Vec<f64>, Vec<DmtCurve>), Failure> {
    let config = args.config.config()?;
    let variants = parse_variants(args.variants.as_deref().unwrap_or(default_variants))?;
    let rs = rate_grid(args.r.as_deref(), &config)?;
    for v in &variants {
        v.check_config(&config)?;
    }
    let curves = variants.iter().map(|&v| dmt_curve(&config, v, &rs)).collect::<Result<Vec<_>, _>>()?;
    Ok((config, rs, curves))
}

fn cmd_curve(args: &CurveArgs) -> Result<(), Failure> {
    let (_, _, curves) = curves(args, "hd-dynamic")?;
    let bytes = match args.output.format {
        Format::Json => output::json_bytes(&curves)?,
        Format::Csv => output::curves_csv(&curves)?,
    };
    output::emit(args.output.out.as_deref(), &bytes)?;
    Ok(())
}

#[derive(Debug, Serialize)]
struct Gap {
    a: Variant,
    b: Variant,
    max_gap: f64,
    r_at_max: f64,
}

#[derive(Serialize)]
struct Comparison<'a> {
    config: AntennaConfig,
    curves: &'a [DmtCurve],
    gaps: Vec<Gap>,
}

fn pairwise_gaps(rs: &[f64], curves: &[DmtCurve]) -> Vec<Gap> {
    let mut gaps = Vec::new();
    for (i, a) in curves.iter().enumerate() {
        for b in &curves[i + 1..] {
            let (max_gap, r_at_max) = a
                .points
                .iter()
                .zip(&b.points)
                .zip(rs)
                .map(|((p, q), &r)| ((p.d - q.d).abs(), r))
                .fold((0.0, rs[0]), |acc, x| if x.0 > acc.0 { x } else { acc });
            gaps.push(Gap { a: a.variant, b: b.variant, max_gap, r_at_max });
        }
    }
    gaps
}

fn cmd_compare(args: &CurveArgs) -> Result<(), Failure> {
    let (config, rs, curves) = curves(args, "hd-dynamic,fd")?;
    if curves.len() < 2 {
        return Err(invalid("compare needs at least two variants"));
    }
    let gaps = pairwise_gaps(&rs, &curves);
    let bytes = match args.output.format {
        Format::Json => output::json_bytes(&Comparison { config, curves: &curves, gaps })?,
        Format::Csv => {
            for g in &gaps {
                eprintln!("max gap {} vs {}: {:.6} at r = {}", g.a, g.b, g.max_gap, g.r_at_max);
            }
            output::curves_csv(&curves)?
        }
    };
    output::emit(args.output.out.as_deref(), &bytes)?;
    Ok(())
}

#[derive(Serialize)]
struct SimulationReport<'a> {
    config: AntennaConfig,
    r: f64,
    samples: usize,
    seed: u64,
    analytic_d: f64,
    estimates: &'a [SnrEstimate],
    fit: SlopeFit,
}

#[derive(Debug, Clone, Serialize)]
struct SnrEstimate {
    snr_db: f64,
    #[serde(flatten)]
    estimate: OutageEstimate,
}

fn cmd_simulate(args: &SimulateArgs) -> Result<(), Failure> {
    let config = args.config.config()?;
    let snr_db = parse_grid(&args.snr_db).map_err(|e| invalid(format!("--snr-db: {e}")))?;
    let rhos: Vec<f64> = snr_db.iter().map(|&db| db_to_linear(db)).collect();
    let estimates = outage_sweep(&config, &rhos, args.r, args.samples, args.seed, args.workers)?;
    let rows: Vec<SnrEstimate> =
        snr_db.iter().zip(&estimates).map(|(&snr_db, &estimate)| SnrEstimate { snr_db, estimate }).collect();
    let fit = diversity_fit(&estimates).inspect_err(|_| {
        for e in &rows {
            eprintln!("snr {} dB: {} outages of {}", e.snr_db, e.estimate.outages, e.estimate.n_samples);
        }
    })?;
    let analytic_d = solve_two_var(&config, args.r)?.d;
    let bytes = match args.output.format {
        Format::Json => output::json_bytes(&SimulationReport {
            config,
            r: args.r,
            samples: args.samples,
            seed: args.seed,
            analytic_d,
            estimates: &rows,
            fit,
        })?,
        Format::Csv => {
            eprintln!("fitted slope {:.4} ± {:.4}, analytic {:.4}", fit.slope, fit.stderr, analytic_d);
            output::csv_bytes(&rows)?
        }
    };
    output::emit(args.output.out.as_deref(), &bytes)?;
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> Result<i32, Failure> {
    let results = run_battery(args.conjectures, args.inject_fault);
    for c in &results {
        let status = match (c.passed, c.hard) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "SOFT-FAIL",
        };
        let kind = if c.hard { "" } else { " (soft)" };
        println!("{status} {}{kind}: {}", c.name, c.detail);
    }
    if let Some(path) = &args.output.out {
        let bytes = match args.output.format {
            Format::Json => output::json_bytes(&results)?,
            Format::Csv => output::csv_bytes(&results)?,
        };
        output::emit(Some(path), &bytes)?;
    }
    let failed: Vec<&str> = results.iter().filter(|c| c.hard && !c.passed).map(|c| c.name.as_str()).collect();
    if failed.is_empty() {
        Ok(exit::OK)
    } else {
        eprintln!("failed checks: {}", failed.join(", "));
        Ok(exit::FAILURE)
    }
}

/// Parses `args` (including the program name) and runs the command, returning the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let result = match &cli.command {
        Command::Curve(a) => cmd_curve(a).map(|_| exit::OK),
        Command::Compare(a) => cmd_compare(a).map(|_| exit::OK),
        Command::Simulate(a) => cmd_simulate(a).map(|_| exit::OK),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}
