//! Command-line surface for the SU(2) minimum-time library: single-target
//! solves, N-system synchronization, curve emission, bound sweeps, and plan
//! verification.
//!
//! Exit codes: 0 success, 2 invalid input, 3 numerical/solver failure.

mod output;
mod problem;

use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use su2_mintime::su2::LieCoeffs;
use su2_mintime::sync::{SyncPlan, SyncProblem};
use su2_mintime::{
    critical_trajectory, disk_point, drift_disk_traj, exp_lie, frontline, min_time_sweep,
    separatrix, verify_plan, Error as CoreError, MinTimeResult, Su2,
};

use output::CurveData;

#[derive(Debug)]
pub struct CliError {
    pub message: String,
    pub code: u8,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            code: 2,
        }
    }

    fn numerical(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            code: 3,
        }
    }

    fn from_core_input(e: CoreError) -> Self {
        Self::input(e.to_string())
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::InvalidInput(_) | CoreError::OutOfValidity { .. } => {
                Self::input(e.to_string())
            }
            _ => Self::numerical(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "su2-mintime",
    version,
    about = "Time-optimal controls for two-level quantum systems on SU(2)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Control-norm bound.
    #[arg(long, global = true)]
    gamma: Option<f64>,

    /// Emit machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,

    /// Directory for generated files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Oracle integration step, t-units (default 1e-4; a problem file may
    /// set its own).
    #[arg(long, global = true)]
    dt: Option<f64>,

    /// Verification distance tolerance (default 1e-6).
    #[arg(long, global = true)]
    tol: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum-time control for a single target.
    ///
    /// Target spec: `identity`, `swap[:PHASE]`, `boundary:PSI`, or four
    /// comma-separated floats `aRe,aIm,bRe,bIm` (first row of the target).
    Solve {
        #[arg(long)]
        target: String,
    },
    /// Simultaneous minimum-time control of the systems in a problem file.
    Sync {
        #[arg(long)]
        problem: PathBuf,
    },
    /// Emit sampled curves as CSV (optionally SVG).
    Curves {
        #[arg(long)]
        kind: CurveKind,
        /// Frontline times (comma separated), for `--kind frontline`.
        #[arg(long, value_delimiter = ',')]
        t_list: Vec<f64>,
        /// Trajectory frequencies (comma separated), for `--kind synthesis`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        omega_list: Vec<f64>,
        /// Samples per curve.
        #[arg(long, default_value_t = 512)]
        n: usize,
        /// Also write an SVG rendering next to each CSV.
        #[arg(long)]
        svg: bool,
    },
    /// Sweep the control bound and tabulate minimum times / jump flags.
    Sweep {
        #[arg(long)]
        target: String,
        /// Ascending range `LO:HI`.
        #[arg(long)]
        gamma_range: String,
        /// Number of grid points (>= 2).
        #[arg(long)]
        n: usize,
    },
    /// Re-verify an exported synchronization plan against the ODE oracle.
    Verify {
        #[arg(long)]
        plan: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CurveKind {
    Frontline,
    Critical,
    Separatrix,
    Synthesis,
}

fn fmt9(x: f64) -> String {
    format!("{x:.9}")
}

fn parse_target(spec: &str) -> Result<Su2, CliError> {
    let bad = |msg: &str| CliError::input(format!("target '{spec}': {msg}"));
    if spec == "identity" {
        return Ok(Su2::IDENTITY);
    }
    if let Some(rest) = spec.strip_prefix("swap") {
        let phase = match rest.strip_prefix(':') {
            None if rest.is_empty() => 0.0,
            Some(p) => p
                .parse::<f64>()
                .map_err(|_| bad("swap phase must be a number"))?,
            _ => return Err(bad("expected swap or swap:PHASE")),
        };
        return Su2::new(Complex64::new(0.0, 0.0), Complex64::from_polar(1.0, phase))
            .map_err(CliError::from_core_input);
    }
    if let Some(psi) = spec.strip_prefix("boundary:") {
        let psi = psi
            .parse::<f64>()
            .map_err(|_| bad("boundary phase must be a number"))?;
        return Ok(exp_lie(LieCoeffs::new(0.0, 0.0, 2.0 * psi)));
    }
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 4 {
        return Err(bad(
            "expected identity | swap[:PHASE] | boundary:PSI | aRe,aIm,bRe,bIm",
        ));
    }
    let mut vals = [0.0f64; 4];
    for (v, p) in vals.iter_mut().zip(&parts) {
        *v = p
            .trim()
            .parse::<f64>()
            .map_err(|_| bad("components must be numbers"))?;
    }
    Su2::new(
        Complex64::new(vals[0], vals[1]),
        Complex64::new(vals[2], vals[3]),
    )
    .map_err(CliError::from_core_input)
}

fn require_gamma(cli: &Cli) -> Result<f64, CliError> {
    match cli.gamma {
        Some(g) if g > 0.0 && g.is_finite() => Ok(g),
        Some(g) => Err(CliError::input(format!("--gamma must be positive (got {g})"))),
        None => Err(CliError::input("--gamma is required")),
    }
}

fn out_dir(cli: &Cli) -> Result<PathBuf, CliError> {
    let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir)
        .map_err(|e| CliError::input(format!("{}: {e}", dir.display())))?;
    Ok(dir)
}

#[derive(Serialize)]
struct SolveExport {
    gamma: f64,
    t_star: f64,
    omega_drift: f64,
    omega_free: f64,
    phi: f64,
    residual: f64,
    law: su2_mintime::SynthesizedLaw,
}

fn cmd_solve(cli: &Cli, target: &str) -> Result<(), CliError> {
    let gamma = require_gamma(cli)?;
    let target = parse_target(target)?;
    let res: MinTimeResult = su2_mintime::min_time_drift(&target, gamma)?;
    let export = SolveExport {
        gamma,
        t_star: res.t_star,
        omega_drift: res.omega_drift(),
        omega_free: res.omega_free(),
        phi: res.phi(),
        residual: res.residual,
        law: res.law.clone(),
    };
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&export).unwrap());
    } else {
        println!("t_star       {}", fmt9(export.t_star));
        println!("omega_drift  {}", fmt9(export.omega_drift));
        println!("omega_free   {}", fmt9(export.omega_free));
        println!("phi          {}", fmt9(export.phi));
        println!("residual     {:.3e}", export.residual);
    }
    if cli.out.is_some() {
        let dir = out_dir(cli)?;
        let path = dir.join("solve.json");
        std::fs::write(&path, serde_json::to_string_pretty(&export).unwrap())
            .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

/// The machine-readable plan document shared by `sync --json` and `verify`.
#[derive(Serialize, Deserialize)]
struct PlanExport {
    dt: f64,
    tol: f64,
    problem: SyncProblem,
    plan: SyncPlan,
    verification: Verification,
}

#[derive(Serialize, Deserialize)]
struct Verification {
    distances: Vec<f64>,
    tol: f64,
    pass: bool,
}

fn print_plan(export: &PlanExport) {
    println!("T_common     {}", fmt9(export.plan.t_common));
    for (j, law) in export.plan.laws.iter().enumerate() {
        println!(
            "system {}: gamma_eff {}  omega_drift {}  phi {}  residual {:.3e}  oracle {:.3e}",
            j + 1,
            fmt9(law.gamma),
            fmt9(law.omega),
            fmt9(law.phi),
            export.plan.residuals[j],
            export.verification.distances[j],
        );
    }
    println!(
        "verification: {} (tol {:.1e}, dt {:.1e})",
        if export.verification.pass { "PASS" } else { "FAIL" },
        export.verification.tol,
        export.dt
    );
}

fn cmd_sync(cli: &Cli, path: &Path) -> Result<(), CliError> {
    let source = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    let (problem, file_dt) = problem::parse_problem(&source)?;
    let dt = cli.dt.or(file_dt).unwrap_or(1e-4);
    let tol = cli.tol.unwrap_or(1e-6);
    let plan = su2_mintime::synchronize(&problem)?;
    let check = verify_plan(&problem, &plan, dt)?;
    let pass = check.distances.iter().all(|d| *d <= tol);
    let export = PlanExport {
        dt,
        tol,
        problem,
        plan,
        verification: Verification {
            distances: check.distances,
            tol,
            pass,
        },
    };
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&export).unwrap());
    } else {
        print_plan(&export);
    }
    if cli.out.is_some() {
        let dir = out_dir(cli)?;
        let file = dir.join("sync_plan.json");
        std::fs::write(&file, serde_json::to_string_pretty(&export).unwrap())
            .map_err(|e| CliError::input(format!("{}: {e}", file.display())))?;
        eprintln!("wrote {}", file.display());
    }
    if pass {
        Ok(())
    } else {
        Err(CliError::numerical(
            "plan verification exceeded tolerance",
        ))
    }
}

fn cmd_verify(cli: &Cli, path: &Path) -> Result<(), CliError> {
    let source = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    let mut export: PlanExport = serde_json::from_str(&source)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    let dt = cli.dt.unwrap_or(export.dt);
    let tol = cli.tol.unwrap_or(export.tol);
    let check = verify_plan(&export.problem, &export.plan, dt)?;
    let pass = check.distances.iter().all(|d| *d <= tol);
    export.dt = dt;
    export.tol = tol;
    export.verification = Verification {
        distances: check.distances,
        tol,
        pass,
    };
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&export).unwrap());
    } else {
        print_plan(&export);
    }
    if pass {
        Ok(())
    } else {
        Err(CliError::numerical("plan verification failed"))
    }
}

fn frontline_curve(t: f64, gamma: f64, n: usize) -> Result<CurveData, CliError> {
    let fl = frontline(t, gamma, n.max(3))?;
    Ok(CurveData {
        name: format!("frontline_T{t:.6}"),
        meta: vec![format!(
            "kind=frontline gamma={gamma} T={t} omega_max={} degenerate={}",
            fl.omega_max, fl.degenerate
        )],
        rows: fl.samples.iter().map(|(w, p)| (*w, t, *p)).collect(),
    })
}

fn drift_traj_curve(omega: f64, gamma: f64, n: usize, name: String) -> CurveData {
    // sampled until the trajectory returns to the unit circle at t = pi/a
    let b = 1.0 - omega;
    let a = (gamma * gamma + b * b).sqrt();
    let t_end = PI / a;
    let rows = (0..n.max(2))
        .map(|i| {
            let t = t_end * i as f64 / (n.max(2) - 1) as f64;
            (omega, t, drift_disk_traj(t, omega, gamma))
        })
        .collect();
    CurveData {
        name,
        meta: vec![format!("kind=trajectory gamma={gamma} omega={omega} t_end={t_end}")],
        rows,
    }
}

fn critical_curve(gamma: f64, n: usize) -> CurveData {
    let crit = critical_trajectory(gamma, n.max(2));
    CurveData {
        name: "critical".into(),
        meta: vec![format!(
            "kind=critical gamma={gamma} omega_c={} t_c={}",
            crit.omega_c, crit.t_c
        )],
        rows: crit
            .samples
            .iter()
            .map(|(t, p)| (crit.omega_c, *t, *p))
            .collect(),
    }
}

fn separatrix_curve(gamma: f64, n: usize) -> CurveData {
    let sep = separatrix(gamma);
    let period = 2.0 * PI / sep.omega_star;
    let rows = (0..n.max(2))
        .map(|i| {
            let t = period * i as f64 / (n.max(2) - 1) as f64;
            (sep.omega_star, t, drift_disk_traj(t, sep.omega_star, gamma))
        })
        .collect();
    CurveData {
        name: "separatrix".into(),
        meta: vec![format!(
            "kind=separatrix gamma={gamma} omega_star={} center=({},{}) radius={}",
            sep.omega_star, sep.center.x, sep.center.y, sep.radius
        )],
        rows,
    }
}

fn cmd_curves(
    cli: &Cli,
    kind: CurveKind,
    t_list: &[f64],
    omega_list: &[f64],
    n: usize,
    svg: bool,
) -> Result<(), CliError> {
    let gamma = require_gamma(cli)?;
    if n < 3 {
        return Err(CliError::input(format!("--n must be at least 3 (got {n})")));
    }
    let mut curves: Vec<CurveData> = Vec::new();
    match kind {
        CurveKind::Frontline => {
            if t_list.is_empty() {
                return Err(CliError::input("--kind frontline needs --t-list"));
            }
            for t in t_list {
                if !(*t > 0.0) {
                    return Err(CliError::input(format!(
                        "frontline times must be positive (got {t})"
                    )));
                }
                curves.push(frontline_curve(*t, gamma, n)?);
            }
        }
        CurveKind::Critical => curves.push(critical_curve(gamma, n)),
        CurveKind::Separatrix => curves.push(separatrix_curve(gamma, n)),
        CurveKind::Synthesis => {
            if omega_list.is_empty() {
                return Err(CliError::input("--kind synthesis needs --omega-list"));
            }
            for omega in omega_list {
                curves.push(drift_traj_curve(
                    *omega,
                    gamma,
                    n,
                    format!("traj_w{omega:+.4}"),
                ));
            }
            curves.push(separatrix_curve(gamma, n));
            curves.push(critical_curve(gamma, n));
        }
    }
    let dir = out_dir(cli)?;
    for curve in &curves {
        let path = output::write_curve_csv(&dir, curve)?;
        println!("{}", path.display());
        if svg {
            let path = output::write_curve_svg(&dir, curve)?;
            println!("{}", path.display());
        }
    }
    Ok(())
}

fn cmd_sweep(cli: &Cli, target: &str, gamma_range: &str, n: usize) -> Result<(), CliError> {
    let target = parse_target(target)?;
    if n < 2 {
        return Err(CliError::input(format!("--n must be at least 2 (got {n})")));
    }
    let (lo, hi) = gamma_range
        .split_once(':')
        .ok_or_else(|| CliError::input("--gamma-range must look like LO:HI"))?;
    let lo: f64 = lo
        .trim()
        .parse()
        .map_err(|_| CliError::input("--gamma-range endpoints must be numbers"))?;
    let hi: f64 = hi
        .trim()
        .parse()
        .map_err(|_| CliError::input("--gamma-range endpoints must be numbers"))?;
    if !(lo > 0.0) || !(hi > lo) {
        return Err(CliError::input(format!(
            "--gamma-range must be ascending and positive (got {lo}:{hi})"
        )));
    }
    let grid: Vec<f64> = (0..n)
        .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
        .collect();
    let points = min_time_sweep(disk_point(&target), &grid)?;
    if cli.out.is_some() {
        let dir = out_dir(cli)?;
        let path = output::write_sweep_csv(&dir, &points)?;
        println!("{}", path.display());
    } else {
        print!("{}", output::sweep_csv_string(&points));
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Solve { target } => cmd_solve(cli, target),
        Command::Sync { problem } => cmd_sync(cli, problem),
        Command::Curves {
            kind,
            t_list,
            omega_list,
            n,
            svg,
        } => cmd_curves(cli, *kind, t_list, omega_list, *n, *svg),
        Command::Sweep {
            target,
            gamma_range,
            n,
        } => cmd_sweep(cli, target, gamma_range, *n),
        Command::Verify { plan } => cmd_verify(cli, plan),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
