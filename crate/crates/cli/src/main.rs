//! `fracsolve`: single solves, convergence sweeps and CQ weight tables.
//!
//! Every option may also come from the `key = value` file named by
//! `FRACSOLVE_CONFIG`; flags win over the file, the file wins over defaults.

use std::fmt::Display;
use std::io::{self, Write};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{error::ErrorKind, Args, Parser, Subcommand};

use fracsolve_core::cqtime::{cq_weights, UniformTimeGrid};
use fracsolve_core::femcore::UniformMesh1D;
use fracsolve_core::harness::{run_convergence, run_single, write_csv, Axis, ConfigFile, ConvergenceReport};
use fracsolve_core::manufactured::{CaseId, ManufacturedCase, DEFAULT_DEGREE};
use fracsolve_core::stepper::SolverConfig;

#[derive(Parser)]
#[command(name = "fracsolve", version, about = "Space-time fractional diffusion solver (P1 FEM + convolution quadrature)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one manufactured problem and report the L2 error at t-end
    Run(RunArgs),
    /// Sweep tau (time axis) or m (space axis) and fit the convergence rate
    Converge(ConvergeArgs),
    /// Print the convolution quadrature weights w_0..w_n
    Weights(WeightsArgs),
}

#[derive(Args)]
struct ProblemArgs {
    /// Manufactured solution: a = Mittag-Leffler decay, b = sine
    #[arg(long)]
    case: Option<String>,
    /// Order of the Caputo derivative, in (0, 2]
    #[arg(long)]
    alpha: Option<f64>,
    /// Order of the fractional Laplacian, in (0, 1)
    #[arg(long)]
    s: Option<f64>,
    #[arg(long)]
    t_end: Option<f64>,
    /// Gegenbauer degree of the manufactured solution
    #[arg(long)]
    degree: Option<usize>,
    /// Use F^n = P_h f(t_n) even when alpha > 1
    #[arg(long)]
    no_corrected_source: bool,
    /// Output CSV path; `-` writes to stdout
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// Number of mesh subintervals of (-1, 1)
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    tau: Option<f64>,
}

#[derive(Args)]
struct ConvergeArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// time or space
    #[arg(long)]
    axis: Option<String>,
    /// m for a time sweep, tau for a space sweep
    #[arg(long)]
    fixed: Option<f64>,
    /// Comma-separated tau values (time axis) or m values (space axis)
    #[arg(long)]
    sweep: Option<String>,
}

#[derive(Args)]
struct WeightsArgs {
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    tau: Option<f64>,
    /// Largest weight index
    #[arg(long)]
    n: Option<usize>,
}

type CliResult<T> = Result<T, String>;

/// Flag, then config file, then `default`.
fn resolve<T>(flag: Option<T>, file: &ConfigFile, key: &str, default: Option<T>) -> CliResult<T>
where
    T: FromStr,
{
    if let Some(v) = flag {
        return Ok(v);
    }
    if let Some(v) = file.get::<T>(key).map_err(|e| e.to_string())? {
        return Ok(v);
    }
    default.ok_or_else(|| format!("missing --{key} (flag or config file)"))
}

fn parse<T: FromStr>(raw: &str, what: &str) -> CliResult<T>
where
    T::Err: Display,
{
    raw.trim().parse().map_err(|e| format!("invalid {what} '{}': {e}", raw.trim()))
}

struct Problem {
    case: ManufacturedCase,
    t_end: f64,
    corrected: Option<bool>,
    out: String,
}

fn resolve_problem(p: ProblemArgs, file: &ConfigFile) -> CliResult<Problem> {
    let case_raw = resolve(p.case, file, "case", Some("a".to_string()))?;
    let id: CaseId = parse(&case_raw, "case")?;
    let alpha = resolve(p.alpha, file, "alpha", Some(0.5))?;
    let s = resolve(p.s, file, "s", Some(0.75))?;
    let t_end = resolve(p.t_end, file, "t-end", Some(0.1))?;
    let degree = resolve(p.degree, file, "degree", Some(DEFAULT_DEGREE))?;
    let corrected = if p.no_corrected_source {
        Some(false)
    } else {
        file.get::<bool>("corrected-source").map_err(|e| e.to_string())?
    };
    let out = resolve(p.out, file, "out", Some("-".to_string()))?;
    let case = ManufacturedCase::new(id, alpha, s, degree).map_err(|e| e.to_string())?;
    Ok(Problem { case, t_end, corrected, out })
}

fn emit(report: &ConvergenceReport, out: &str) -> CliResult<()> {
    if out == "-" {
        let stdout = io::stdout();
        write_csv(report, stdout.lock()).map_err(|e| e.to_string())
    } else {
        fracsolve_core::harness::emit_csv(report, out).map_err(|e| format!("{out}: {e}"))
    }
}

fn cmd_run(args: RunArgs, file: &ConfigFile) -> CliResult<()> {
    let problem = resolve_problem(args.problem, file)?;
    let m = resolve(args.m, file, "m", Some(256))?;
    let tau = resolve(args.tau, file, "tau", Some(0.01))?;
    let grid = UniformTimeGrid::from_t_end(tau, problem.t_end).map_err(|e| e.to_string())?;
    let mesh = UniformMesh1D::new(-1.0, 1.0, m).map_err(|e| e.to_string())?;
    let case = problem.case;
    let mut cfg = SolverConfig::new(case.alpha, case.s, grid, mesh).map_err(|e| e.to_string())?;
    if let Some(c) = problem.corrected {
        cfg.use_corrected_source = c;
    }
    let outcome = run_single(&case, &cfg).map_err(|e| e.to_string())?;
    // a single time-axis row; a rate needs at least two points
    let report = ConvergenceReport {
        axis: Axis::Time,
        case: case.id,
        alpha: case.alpha,
        s: case.s,
        fixed: m as f64,
        t_end: outcome.t_end,
        corrected_source: outcome.corrected_source,
        rows: vec![(outcome.tau, outcome.error)],
        fitted_rate: f64::NAN,
    };
    emit(&report, &problem.out)
}

fn cmd_converge(args: ConvergeArgs, file: &ConfigFile) -> CliResult<()> {
    let problem = resolve_problem(args.problem, file)?;
    let axis_raw = resolve(args.axis, file, "axis", Some("time".to_string()))?;
    let axis: Axis = parse(&axis_raw, "axis")?;
    let (fixed_default, sweep_default) = match axis {
        Axis::Time => (256.0, "0.02,0.01,0.005,0.0025"),
        Axis::Space => (0.001, "64,128,256,512"),
    };
    let fixed = resolve(args.fixed, file, "fixed", Some(fixed_default))?;
    let sweep_raw = resolve(args.sweep, file, "sweep", Some(sweep_default.to_string()))?;
    let sweep = sweep_raw
        .split(',')
        .filter(|v| !v.trim().is_empty())
        .map(|v| parse::<f64>(v, "sweep value"))
        .collect::<CliResult<Vec<f64>>>()?;
    let report = run_convergence(&problem.case, axis, fixed, &sweep, problem.t_end, problem.corrected)
        .map_err(|e| e.to_string())?;
    emit(&report, &problem.out)
}

fn cmd_weights(args: WeightsArgs, file: &ConfigFile) -> CliResult<()> {
    let alpha = resolve(args.alpha, file, "alpha", None)?;
    let tau = resolve(args.tau, file, "tau", None)?;
    let n = resolve(args.n, file, "n", Some(10))?;
    let table = cq_weights(alpha, tau, n).map_err(|e| e.to_string())?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut write = || -> io::Result<()> {
        writeln!(out, "j,weight")?;
        for (j, w) in table.weights().iter().enumerate() {
            writeln!(out, "{j},{w:e}")?;
        }
        out.flush()
    };
    write().map_err(|e| e.to_string())
}

fn one_line(msg: &str) -> String {
    msg.lines().map(str::trim).filter(|l| !l.is_empty()).collect::<Vec<_>>().join(" ")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.render().to_string();
            let first = rendered.lines().next().unwrap_or("invalid arguments");
            eprintln!("{}", one_line(first));
            return ExitCode::from(2);
        }
    };
    let result = ConfigFile::from_env().map_err(|e| e.to_string()).and_then(|file| match cli.command {
        Command::Run(a) => cmd_run(a, &file),
        Command::Converge(a) => cmd_converge(a, &file),
        Command::Weights(a) => cmd_weights(a, &file),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {}", one_line(&msg));
            ExitCode::FAILURE
        }
    }
}
