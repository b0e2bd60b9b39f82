//! Single runs, convergence sweeps and CSV reports for the manufactured
//! solutions.
//!
//! Conventions for sweeps: on the time axis the fixed value is the number of
//! mesh subintervals `m` and the sweep lists time steps `tau`; on the space
//! axis the fixed value is `tau` and the sweep lists subinterval counts `m`.
//! Reported resolutions are always step sizes (`tau` or `h = 2/m`).

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use crate::cqtime::UniformTimeGrid;
use crate::error::{Error, Result};
use crate::femcore::{assemble_mass, assemble_stiffness, l2_error, l2_project, UniformMesh1D};
use crate::manufactured::{CaseId, ManufacturedCase, SeparableField};
use crate::stepper::{solve_diffusion, solve_wave, Forcing, SolverConfig, Trajectory};

/// Quadrature order used when projecting data onto the mesh.
pub const PROJECTION_QUAD_ORDER: usize = 8;

/// Environment variable naming the optional config file.
pub const CONFIG_ENV: &str = "FRACSOLVE_CONFIG";

pub const CSV_HEADER: &str = "axis,alpha,s,case,resolution,error,fitted_rate";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    Time,
    Space,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::Time => "time",
            Axis::Space => "space",
        })
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "time" => Ok(Axis::Time),
            "space" => Ok(Axis::Space),
            other => Err(Error::Config(format!("unknown axis '{other}' (expected time or space)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    /// `||u_h(T) - u(T)||_{L2}`
    pub error: f64,
    pub t_end: f64,
    pub tau: f64,
    pub h: f64,
    pub steps: usize,
    pub dofs: usize,
    pub corrected_source: bool,
}

/// Projects every spatial factor of `field` once.
fn project_field(case: &ManufacturedCase, field: &SeparableField, mesh: &UniformMesh1D) -> Result<Vec<Vec<f64>>> {
    field
        .terms
        .iter()
        .map(|&(_, sf)| l2_project(|x| case.space(sf, x), mesh, PROJECTION_QUAD_ORDER))
        .collect()
}

fn combine(case: &ManufacturedCase, field: &SeparableField, parts: &[Vec<f64>], t: f64) -> Result<Vec<f64>> {
    let mut out = vec![0.0; parts.first().map_or(0, Vec::len)];
    for (&(tf, _), p) in field.terms.iter().zip(parts) {
        let c = tf.eval(case.alpha, t)?;
        for (o, pi) in out.iter_mut().zip(p) {
            *o += c * pi;
        }
    }
    Ok(out)
}

/// Solves the manufactured problem and returns the trajectory.
pub fn solve_case(case: &ManufacturedCase, cfg: &SolverConfig) -> Result<Trajectory> {
    cfg.validate()?;
    if cfg.alpha != case.alpha || cfg.s != case.s {
        return Err(Error::Config(format!(
            "solver (alpha = {}, s = {}) does not match case (alpha = {}, s = {})",
            cfg.alpha, cfg.s, case.alpha, case.s
        )));
    }
    let mesh = &cfg.mesh;
    let k = assemble_stiffness(mesh, cfg.s)?;
    let m = assemble_mass(mesh);
    let v_h = l2_project(|x| case.initial_value(x), mesh, PROJECTION_QUAD_ORDER)?;

    let field = if cfg.use_corrected_source {
        case.source_antiderivative_field()
    } else {
        case.source_field()
    };
    let parts = project_field(case, &field, mesh)?;
    let eval = |t: f64| combine(case, &field, &parts, t);
    let forcing = if cfg.use_corrected_source {
        Forcing::averaged(eval)
    } else {
        Forcing::pointwise(eval)
    };

    if cfg.alpha <= 1.0 {
        solve_diffusion(cfg, &k, &m, &v_h, &forcing)
    } else {
        let b_h = l2_project(|x| case.initial_velocity(x).unwrap_or(0.0), mesh, PROJECTION_QUAD_ORDER)?;
        solve_wave(cfg, &k, &m, &v_h, &b_h, &forcing)
    }
}

/// L2 error at the final time of a single solve.
pub fn run_single(case: &ManufacturedCase, cfg: &SolverConfig) -> Result<RunOutcome> {
    let traj = solve_case(case, cfg)?;
    let t_end = cfg.grid.t_end();
    let ht = case.time_value(t_end)?;
    let error = l2_error(traj.last(), |x| ht * case.profile(x), &cfg.mesh);
    Ok(RunOutcome {
        error,
        t_end,
        tau: cfg.grid.tau,
        h: cfg.mesh.h(),
        steps: cfg.grid.n_steps,
        dofs: cfg.mesh.dofs(),
        corrected_source: cfg.use_corrected_source,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub axis: Axis,
    pub case: CaseId,
    pub alpha: f64,
    pub s: f64,
    /// `m` on the time axis, `tau` on the space axis.
    pub fixed: f64,
    pub t_end: f64,
    pub corrected_source: bool,
    /// `(resolution, error)`, resolution decreasing.
    pub rows: Vec<(f64, f64)>,
    pub fitted_rate: f64,
}

/// Least-squares slope of `log(error)` against `log(resolution)`.
pub fn fit_rate(rows: &[(f64, f64)]) -> Result<f64> {
    if rows.len() < 2 {
        return Err(Error::Config(format!("rate fit needs at least 2 points, got {}", rows.len())));
    }
    if rows.iter().any(|&(r, e)| !(r > 0.0 && e > 0.0 && r.is_finite() && e.is_finite())) {
        return Err(Error::Domain("rate fit needs positive finite resolutions and errors".into()));
    }
    let n = rows.len() as f64;
    let (mx, my) = rows
        .iter()
        .fold((0.0, 0.0), |(a, b), &(r, e)| (a + r.ln() / n, b + e.ln() / n));
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for &(r, e) in rows {
        let dx = r.ln() - mx;
        sxy += dx * (e.ln() - my);
        sxx += dx * dx;
    }
    if sxx == 0.0 {
        return Err(Error::Domain("all resolutions coincide".into()));
    }
    Ok(sxy / sxx)
}

fn subintervals(value: f64) -> Result<usize> {
    if !(value >= 2.0) || value.fract() != 0.0 || value > 1e7 {
        return Err(Error::Config(format!("mesh size m = {value} must be an integer >= 2")));
    }
    Ok(value as usize)
}

/// Sweep over `tau` (time axis) or `m` (space axis); see the module docs.
/// `corrected_source = None` keeps the default of [`SolverConfig::new`].
pub fn run_convergence(
    case: &ManufacturedCase,
    axis: Axis,
    fixed: f64,
    sweep: &[f64],
    t_end: f64,
    corrected_source: Option<bool>,
) -> Result<ConvergenceReport> {
    if sweep.len() < 3 {
        return Err(Error::Config(format!("a sweep needs at least 3 entries, got {}", sweep.len())));
    }
    let mut rows = Vec::with_capacity(sweep.len());
    let mut used_corrected = false;
    for &value in sweep {
        let (tau, m) = match axis {
            Axis::Time => (value, subintervals(fixed)?),
            Axis::Space => (fixed, subintervals(value)?),
        };
        let grid = UniformTimeGrid::from_t_end(tau, t_end)?;
        let mesh = UniformMesh1D::new(-1.0, 1.0, m)?;
        let mut cfg = SolverConfig::new(case.alpha, case.s, grid, mesh)?;
        if let Some(c) = corrected_source {
            cfg.use_corrected_source = c;
        }
        used_corrected = cfg.use_corrected_source;
        let out = run_single(case, &cfg)?;
        let resolution = match axis {
            Axis::Time => out.tau,
            Axis::Space => out.h,
        };
        rows.push((resolution, out.error));
    }
    rows.sort_by(|a, b| b.0.total_cmp(&a.0));
    let fitted_rate = fit_rate(&rows)?;
    Ok(ConvergenceReport {
        axis,
        case: case.id,
        alpha: case.alpha,
        s: case.s,
        fixed,
        t_end,
        corrected_source: used_corrected,
        rows,
        fitted_rate,
    })
}

/// Six significant digits in scientific notation.
pub fn format_sig6(x: f64) -> String {
    format!("{x:.5e}")
}

pub fn write_csv<W: Write>(report: &ConvergenceReport, mut out: W) -> Result<()> {
    if report.rows.is_empty() {
        return Err(Error::Config("report has no rows".into()));
    }
    writeln!(out, "{CSV_HEADER}")?;
    for &(r, e) in &report.rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            report.axis,
            format_sig6(report.alpha),
            format_sig6(report.s),
            report.case,
            format_sig6(r),
            format_sig6(e),
            format_sig6(report.fitted_rate)
        )?;
    }
    Ok(())
}

pub fn emit_csv(report: &ConvergenceReport, path: impl AsRef<Path>) -> Result<()> {
    let mut buf = Vec::new();
    write_csv(report, &mut buf)?;
    fs::write(path, buf)?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub axis: Axis,
    pub alpha: f64,
    pub s: f64,
    pub case: CaseId,
    pub resolution: f64,
    pub error: f64,
    pub fitted_rate: f64,
}

pub fn parse_csv(text: &str) -> Result<Vec<CsvRow>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim() == CSV_HEADER => {}
        other => return Err(Error::Config(format!("unexpected CSV header {other:?}"))),
    }
    let num = |f: &str| -> Result<f64> {
        f.trim()
            .parse()
            .map_err(|_| Error::Config(format!("bad number '{f}' in CSV")))
    };
    lines
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 7 {
                return Err(Error::Config(format!("expected 7 CSV fields, got {}", f.len())));
            }
            Ok(CsvRow {
                axis: f[0].parse()?,
                alpha: num(f[1])?,
                s: num(f[2])?,
                case: f[3].parse()?,
                resolution: num(f[4])?,
                error: num(f[5])?,
                fitted_rate: num(f[6])?,
            })
        })
        .collect()
}

/// Flat `key = value` settings. `#` starts a comment; keys may use `-` or `_`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(Error::Config(format!("line {}: expected 'key = value'", i + 1)));
            };
            let key = k.trim().replace('_', "-");
            if key.is_empty() {
                return Err(Error::Config(format!("line {}: empty key", i + 1)));
            }
            entries.insert(key, v.trim().to_string());
        }
        Ok(Self { entries })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// The file named by `FRACSOLVE_CONFIG`, or an empty config.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(CONFIG_ENV) {
            Some(p) if !p.is_empty() => Self::load(p),
            _ => Ok(Self::default()),
        }
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.entries.get(&key.replace('_', "-")).map(String::as_str)
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        self.raw(key)
            .map(|v| {
                v.parse()
                    .map_err(|_| Error::Config(format!("config key '{key}': cannot parse '{v}'")))
            })
            .transpose()
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }
}
