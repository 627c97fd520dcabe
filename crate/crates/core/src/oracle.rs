//! Independent numerical integration of the controlled dynamics.
//!
//! This is the ground-truth route against which every closed form and every
//! synthesized plan is checked: a classical fixed-step fourth-order
//! Runge-Kutta scheme on the first row `(alpha, beta)` of the evolution
//! operator, in physical time `tau = 2 t`, renormalizing after every step.
//! It deliberately shares no code with the closed-form propagators.

use num_complex::Complex64;

use crate::error::Error;
use crate::extremal::DriftControlLaw;
use crate::mintime::{MinTimeResult, SynthesizedLaw};
use crate::su2::{distance, Su2};
use crate::sync::{SyncPlan, SyncProblem};
use crate::Result;

/// Default integration step for verification, in t-units. Gives closed-form
/// agreement around 1e-9 on the longest trajectories in use.
pub const DEFAULT_DT: f64 = 1e-4;

/// Distance threshold for plan verification.
pub const VERIFY_TOL: f64 = 1e-6;

/// A control waveform in physical time `tau`, with its declared norm bound.
/// The callable must be side-effect free; integrations may run concurrently.
pub struct Waveform<'a> {
    eval: Box<dyn Fn(f64) -> (f64, f64) + Send + Sync + 'a>,
    gamma: f64,
}

impl<'a> Waveform<'a> {
    pub fn new(gamma: f64, f: impl Fn(f64) -> (f64, f64) + Send + Sync + 'a) -> Self {
        Self {
            eval: Box::new(f),
            gamma,
        }
    }

    pub fn eval(&self, tau: f64) -> (f64, f64) {
        (self.eval)(tau)
    }

    pub fn bound(&self) -> f64 {
        self.gamma
    }
}

#[derive(Clone, Copy)]
struct Row {
    alpha: Complex64,
    beta: Complex64,
}

/// Right-hand side of the row ODE at time `tau`:
/// `d alpha = h11 alpha - h12 conj(beta)`, `d beta = h11 beta + h12 conj(alpha)`
/// with `h11 = i/2` (drift) or `0` (free) and `h12 = (i u_x - u_y)/2`.
fn rhs(w: &Waveform, drift: bool, tau: f64, s: Row) -> Result<Row> {
    let (ux, uy) = w.eval(tau);
    let norm = (ux * ux + uy * uy).sqrt();
    if norm > w.gamma + 1e-12 {
        return Err(Error::NormViolation {
            tau,
            norm,
            bound: w.gamma,
        });
    }
    let h11 = if drift {
        Complex64::new(0.0, 0.5)
    } else {
        Complex64::new(0.0, 0.0)
    };
    let h12 = Complex64::new(-0.5 * uy, 0.5 * ux);
    Ok(Row {
        alpha: h11 * s.alpha - h12 * s.beta.conj(),
        beta: h11 * s.beta + h12 * s.alpha.conj(),
    })
}

fn integrate(w: &Waveform, t_final: f64, dt: f64, drift: bool) -> Result<Su2> {
    if !(dt > 0.0) {
        return Err(Error::InvalidInput(format!("dt must be positive (got {dt})")));
    }
    if !(t_final >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "t_final must be non-negative (got {t_final})"
        )));
    }
    if t_final == 0.0 {
        return Ok(Su2::IDENTITY);
    }
    let n = ((t_final / dt).ceil() as usize).max(1);
    let h = 2.0 * t_final / n as f64; // step in tau
    let mut s = Row {
        alpha: Complex64::new(1.0, 0.0),
        beta: Complex64::new(0.0, 0.0),
    };
    for k in 0..n {
        let tau = k as f64 * h;
        let k1 = rhs(w, drift, tau, s)?;
        let k2 = rhs(
            w,
            drift,
            tau + 0.5 * h,
            Row {
                alpha: s.alpha + 0.5 * h * k1.alpha,
                beta: s.beta + 0.5 * h * k1.beta,
            },
        )?;
        let k3 = rhs(
            w,
            drift,
            tau + 0.5 * h,
            Row {
                alpha: s.alpha + 0.5 * h * k2.alpha,
                beta: s.beta + 0.5 * h * k2.beta,
            },
        )?;
        let k4 = rhs(
            w,
            drift,
            tau + h,
            Row {
                alpha: s.alpha + h * k3.alpha,
                beta: s.beta + h * k3.beta,
            },
        )?;
        s.alpha += (h / 6.0) * (k1.alpha + 2.0 * (k2.alpha + k3.alpha) + k4.alpha);
        s.beta += (h / 6.0) * (k1.beta + 2.0 * (k2.beta + k3.beta) + k4.beta);
        let norm = (s.alpha.norm_sqr() + s.beta.norm_sqr()).sqrt();
        s.alpha /= norm;
        s.beta /= norm;
    }
    Ok(Su2::renormalized(s.alpha, s.beta))
}

/// Integrate the drift dynamics under `w` up to `t_final` (t-units) with
/// step `dt` (t-units); global error O(dt^4).
pub fn integrate_drift(w: &Waveform, t_final: f64, dt: f64) -> Result<Su2> {
    integrate(w, t_final, dt, true)
}

/// Integrate the driftless dynamics; same contract as [`integrate_drift`].
pub fn integrate_free(w: &Waveform, t_final: f64, dt: f64) -> Result<Su2> {
    integrate(w, t_final, dt, false)
}

/// Simulate `law` and measure the trace-norm distance to `target`.
pub fn verify_law(law: &DriftControlLaw, target: &Su2, dt: f64) -> Result<f64> {
    let x = integrate_drift(&law.waveform(), law.t_final, dt)?;
    Ok(distance(&x, target))
}

/// Simulate a single-target result (drift law against an SU(2) target, free
/// law against the corresponding driftless target).
pub fn verify_min_time(res: &MinTimeResult, target: &Su2, dt: f64) -> Result<f64> {
    match &res.law {
        SynthesizedLaw::Drift(law) => verify_law(law, target, dt),
        SynthesizedLaw::Free(law) => {
            let u = integrate_free(&law.waveform(), law.t_final, dt)?;
            Ok(distance(&u, target))
        }
    }
}

/// Per-system verification report for a synchronization plan.
#[derive(Debug, Clone)]
pub struct PlanCheck {
    pub distances: Vec<f64>,
    pub tol: f64,
    pub pass: bool,
}

/// Simulate every law of `plan` against the targets of `problem`; passes iff
/// all distances are at most [`VERIFY_TOL`]. An empty plan passes vacuously.
pub fn verify_plan(problem: &SyncProblem, plan: &SyncPlan, dt: f64) -> Result<PlanCheck> {
    if problem.systems.len() != plan.laws.len() {
        return Err(Error::InvalidInput(format!(
            "plan has {} laws for {} systems",
            plan.laws.len(),
            problem.systems.len()
        )));
    }
    let mut distances = Vec::with_capacity(plan.laws.len());
    for (sys, law) in problem.systems.iter().zip(&plan.laws) {
        distances.push(verify_law(law, &sys.target, dt)?);
    }
    let pass = distances.iter().all(|d| *d <= VERIFY_TOL);
    Ok(PlanCheck {
        distances,
        tol: VERIFY_TOL,
        pass,
    })
}
