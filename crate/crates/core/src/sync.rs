//! Simultaneous minimum-time steering of N independent qubits.
//!
//! Each system has its own bound and target. The common time starts at the
//! largest individual minimum time and is advanced past infeasible systems
//! until every target is reachable at exactly that time; the loop terminates
//! because every reachable set is all of SU(2) once `T >= pi / gamma_min`.
//! Systems left with slack are slowed down by shrinking their effective
//! bound until the reachable-region boundary passes through the rotated
//! target, which keeps every synthesized control a bound-saturating
//! extremal.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::Error;
use crate::extremal::{free_disk_traj, DriftControlLaw};
use crate::mintime::{first_feasible, min_time_drift, phase_for};
use crate::reachable::{contains_drift, golden_min, region_at, Resolution};
use crate::su2::{disk_point, distance, DiskPoint, Su2};
use crate::{Result, GEOMETRY_TOL};

const GAMMA_BISECT_WIDTH: f64 = 1e-10;
const RESIDUAL_TOL: f64 = 1e-6;

/// One controlled qubit: desired final operator and control-norm bound.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SyncSystem {
    pub target: Su2,
    pub gamma_max: f64,
}

/// The N-system simultaneous steering problem.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SyncProblem {
    pub systems: Vec<SyncSystem>,
}

impl SyncProblem {
    pub fn new(systems: Vec<SyncSystem>) -> Result<Self> {
        for (j, sys) in systems.iter().enumerate() {
            if !(sys.gamma_max > 0.0) || !sys.gamma_max.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "system {j}: gamma_max must be positive (got {})",
                    sys.gamma_max
                )));
            }
            if !sys.target.is_unitary(1e-6) {
                return Err(Error::InvalidInput(format!(
                    "system {j}: target is not a valid SU(2) element"
                )));
            }
        }
        Ok(Self { systems })
    }
}

/// Common final time plus one law per system; every law's duration equals
/// `t_common` and every effective bound is at most the system's maximum.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SyncPlan {
    pub t_common: f64,
    pub laws: Vec<DriftControlLaw>,
    /// Closed-form final-state distances, one per system.
    pub residuals: Vec<f64>,
}

/// Is `target` reachable by the drift system at exactly time `t` under
/// bound `gamma`?
pub fn feasible_at(target: &Su2, gamma: f64, t: f64) -> Result<bool> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::InvalidInput(format!(
            "time must be non-negative (got {t})"
        )));
    }
    contains_drift(disk_point(target), t, gamma)
}

/// Smallest `T > t0` at which `target` becomes reachable. Requires the
/// target to be infeasible at `t0`; always terminates because the region is
/// everything for `T >= pi/gamma`.
pub fn next_feasible_time(target: &Su2, gamma: f64, t0: f64) -> Result<f64> {
    if feasible_at(target, gamma, t0)? {
        return Err(Error::InvalidInput(format!(
            "target already feasible at t0 = {t0}"
        )));
    }
    let (_, hi) = first_feasible(disk_point(target), gamma, t0)?;
    Ok(hi)
}

/// Effective bound and frontline parameter placing the rotated target on the
/// reachable-region boundary at fixed time `t`.
fn slowdown(target: &Su2, gamma_max: f64, t: f64) -> Result<(f64, f64)> {
    if !(gamma_max > 0.0) || !gamma_max.is_finite() {
        return Err(Error::InvalidInput(format!(
            "gamma_max must be positive (got {gamma_max})"
        )));
    }
    if !feasible_at(target, gamma_max, t)? {
        return Err(Error::Infeasible(format!(
            "target not reachable at t = {t} even at gamma_max = {gamma_max}"
        )));
    }
    let z = disk_point(target).rotate(-t);

    if z.dist(DiskPoint::new(1.0, 0.0)) <= GEOMETRY_TOL {
        // Degenerate corner: the rotated target is the driftless identity,
        // which is interior for every positive bound. The smallest
        // bound-saturating extremal that closes a full loop at time t has
        // a t = 2 pi with omega = 0.
        let gamma = (2.0 * PI / t).min(gamma_max);
        return Ok((gamma, 0.0));
    }

    if z.norm() >= 1.0 - 1e-12 {
        // Probe on the unit circle: it is reached at a frontline endpoint,
        // and shrinking gamma closes the circular arc until its endpoint
        // sits at the probe's phase: sqrt(pi^2 - gamma^2 t^2) = pi - |theta|.
        let theta = z.y.atan2(z.x);
        let ta = theta.abs();
        let gamma_eff = ((ta * (2.0 * PI - ta)).sqrt() / t).min(gamma_max);
        let omega = -theta.signum() * (PI - ta) / t;
        return Ok((gamma_eff, omega));
    }

    // Already on the boundary at gamma_max?
    let full = region_at(t, gamma_max, Resolution::Full)?;
    let gamma_eff = if full.boundary_distance(z) <= GEOMETRY_TOL {
        gamma_max
    } else {
        // Regions are nested increasing in gamma, so bisection finds the
        // smallest feasible bound; at that bound z sits on the boundary.
        let mut lo = 0.0f64;
        let mut hi = gamma_max;
        while hi - lo > GAMMA_BISECT_WIDTH {
            let mid = 0.5 * (lo + hi);
            if crate::reachable::contains(z, t, mid)? {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    };

    // Frontline parameter nearest to z at (t, gamma_eff), then a joint
    // (omega, gamma) Newton polish onto the curve.
    let region = region_at(t, gamma_eff, Resolution::Full)?;
    let fl = region.frontline();
    if fl.degenerate {
        return Ok((gamma_eff, 0.0));
    }
    let mut best = (f64::INFINITY, 0usize);
    for (i, (_, p)) in fl.samples.iter().enumerate() {
        let d = z.dist(*p);
        if d < best.0 {
            best = (d, i);
        }
    }
    let i = best.1;
    let lo_w = fl.samples[i.saturating_sub(1)].0;
    let hi_w = fl.samples[(i + 1).min(fl.samples.len() - 1)].0;
    let omega0 = golden_min(|w| z.dist(free_disk_traj(t, w, gamma_eff)), lo_w, hi_w, 1e-13);
    let (omega, gamma) = newton_omega_gamma(z, t, omega0, gamma_eff, gamma_max)
        .unwrap_or((omega0, gamma_eff));
    Ok((gamma.min(gamma_max), omega))
}

/// Damped Newton on `free_disk_traj(t, omega; gamma) = z` in the unknowns
/// `(omega, gamma)` at fixed `t`.
fn newton_omega_gamma(
    z: DiskPoint,
    t: f64,
    omega0: f64,
    gamma0: f64,
    gamma_max: f64,
) -> Option<(f64, f64)> {
    use crate::extremal::{free_traj_d_gamma, free_traj_d_omega};
    let g = |w: f64, gm: f64| {
        let c = free_disk_traj(t, w, gm);
        (c.x - z.x, c.y - z.y)
    };
    let (mut w, mut gm) = (omega0, gamma0);
    let (mut gx, mut gy) = g(w, gm);
    let mut n2 = gx * gx + gy * gy;
    for _ in 0..40 {
        if n2 < 1e-26 {
            break;
        }
        let (dxw, dyw) = free_traj_d_omega(t, w, gm);
        let (dxg, dyg) = free_traj_d_gamma(t, w, gm);
        let det = dxw * dyg - dxg * dyw;
        if det.abs() < 1e-14 {
            return None;
        }
        let dw = (gx * dyg - gy * dxg) / det;
        let dg = (gy * dxw - gx * dyw) / det;
        let mut improved = false;
        let mut lambda = 1.0;
        for _ in 0..8 {
            let w2 = w - lambda * dw;
            let gm2 = (gm - lambda * dg).clamp(1e-12, gamma_max + 1e-9);
            let (gx2, gy2) = g(w2, gm2);
            let n2b = gx2 * gx2 + gy2 * gy2;
            if n2b < n2 {
                w = w2;
                gm = gm2;
                gx = gx2;
                gy = gy2;
                n2 = n2b;
                improved = true;
                break;
            }
            lambda *= 0.5;
        }
        if !improved {
            break;
        }
    }
    if n2.sqrt() < 1e-11 {
        Some((w, gm))
    } else {
        None
    }
}

/// Largest effective bound `gamma_eff <= gamma_max` for which the target is
/// exactly on the reachable-region boundary at time `t`. Requires
/// feasibility at `gamma_max`.
pub fn slowdown_gamma(target: &Su2, gamma_max: f64, t: f64) -> Result<f64> {
    slowdown(target, gamma_max, t).map(|(g, _)| g)
}

/// Build the drift law steering `target` in exactly time `t` with bound at
/// most `gamma_max` (slowing the system down if it has slack).
fn synthesize_at(target: &Su2, gamma_max: f64, t: f64) -> Result<(DriftControlLaw, f64)> {
    if t == 0.0 {
        let law = DriftControlLaw::new(gamma_max, 1.0, 0.0, 0.0)?;
        return Ok((law, distance(target, &Su2::IDENTITY)));
    }
    let (gamma_eff, omega_f) = slowdown(target, gamma_max, t)?;
    let omega_d = omega_f + 1.0;
    let phi = phase_for(target, t, omega_d, gamma_eff)?;
    let law = DriftControlLaw::new(gamma_eff, omega_d, phi, t)?;
    let residual = distance(&law.final_state(), target);
    Ok((law, residual))
}

/// The full synchronization algorithm: per-system minimum times, common-time
/// advancement past infeasible systems, then per-system slowdown and law
/// synthesis at the common time.
pub fn synchronize(problem: &SyncProblem) -> Result<SyncPlan> {
    let checked = SyncProblem::new(problem.systems.clone())?;
    let systems = &checked.systems;
    if systems.is_empty() {
        return Ok(SyncPlan {
            t_common: 0.0,
            laws: vec![],
            residuals: vec![],
        });
    }

    // Step 1: individual minimum times.
    let mut t_curr = 0.0f64;
    let mut k_curr = 0usize;
    for (j, sys) in systems.iter().enumerate() {
        let res = min_time_drift(&sys.target, sys.gamma_max)?;
        if res.t_star > t_curr {
            t_curr = res.t_star;
            k_curr = j;
        }
    }

    // Steps 2-6: advance T past infeasible systems. Terminates since every
    // advancement strictly increases T and all regions are full once
    // T >= pi / gamma_min.
    let gamma_min = systems
        .iter()
        .map(|s| s.gamma_max)
        .fold(f64::INFINITY, f64::min);
    let max_iters = ((PI / gamma_min - t_curr) / 0.01).ceil().max(0.0) as usize
        + systems.len()
        + 8;
    for _ in 0..=max_iters {
        let mut worst: Option<(usize, f64)> = None;
        for (j, sys) in systems.iter().enumerate() {
            if j == k_curr {
                continue;
            }
            if !feasible_at(&sys.target, sys.gamma_max, t_curr)? {
                let t_next = next_feasible_time(&sys.target, sys.gamma_max, t_curr)?;
                // pick the system with the largest gap; ties to lowest index
                if worst.map_or(true, |(_, t)| t_next > t) {
                    worst = Some((j, t_next));
                }
            }
        }
        match worst {
            None => break,
            Some((j, t_next)) => {
                t_curr = t_next;
                k_curr = j;
            }
        }
    }

    // Slow every system with slack down to the common time and synthesize.
    let mut laws = Vec::with_capacity(systems.len());
    let mut residuals = Vec::with_capacity(systems.len());
    for sys in systems {
        let (law, residual) = synthesize_at(&sys.target, sys.gamma_max, t_curr)?;
        if residual > RESIDUAL_TOL {
            return Err(Error::SolverFailure(format!(
                "synchronized law misses its target by {residual}"
            )));
        }
        laws.push(law);
        residuals.push(residual);
    }
    Ok(SyncPlan {
        t_common: t_curr,
        laws,
        residuals,
    })
}
