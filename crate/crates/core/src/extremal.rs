//! Closed-form extremal controls and propagators.
//!
//! Extremals saturate the control bound and rotate at a fixed frequency:
//! `u_x = gamma sin(omega tau + phi)`, `u_y = -gamma cos(omega tau + phi)`.
//! Both the drift system and the driftless (interaction-picture) system are
//! integrated in closed form by such controls, but with different frequency
//! conventions:
//!
//! * drift:     `b = 1 - omega`, `a = sqrt(gamma^2 + b^2)`;
//! * driftless: `a = sqrt(omega^2 + gamma^2)`.
//!
//! The two conventions collide in the literature's notation, so they are kept
//! in distinct types ([`DriftControlLaw`] vs [`FreeControlLaw`]) and never
//! mixed. Rotating a driftless extremal back through the interaction picture
//! shifts its frequency by exactly the drift rate: `omega_drift =
//! omega_free + 1` (see [`FreeControlLaw::to_drift`]).
//!
//! Durations are in `t`-units (`t = tau/2`); control evaluation multiplies by
//! two internally and nowhere else.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::Error;
use crate::oracle::Waveform;
use crate::su2::{DiskPoint, Su2};
use crate::{Result, GEOMETRY_TOL};

/// Extremal control for the drift system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DriftControlLaw {
    /// Control-norm bound; the realized control satisfies
    /// `u_x^2 + u_y^2 = gamma^2` exactly.
    pub gamma: f64,
    /// Extremal frequency, drift convention.
    pub omega: f64,
    /// Off-diagonal phase, radians.
    pub phi: f64,
    /// Duration in t-units (physical duration is `2 t_final`).
    pub t_final: f64,
}

/// Extremal control for the driftless system; same fields as
/// [`DriftControlLaw`] with `omega` in the driftless convention.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FreeControlLaw {
    pub gamma: f64,
    pub omega: f64,
    pub phi: f64,
    pub t_final: f64,
}

fn check_law(gamma: f64, t_final: f64) -> Result<()> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::InvalidInput(format!(
            "control bound must be positive (got {gamma})"
        )));
    }
    if !(t_final >= 0.0) || !t_final.is_finite() {
        return Err(Error::InvalidInput(format!(
            "duration must be non-negative (got {t_final})"
        )));
    }
    Ok(())
}

impl DriftControlLaw {
    pub fn new(gamma: f64, omega: f64, phi: f64, t_final: f64) -> Result<Self> {
        check_law(gamma, t_final)?;
        Ok(Self {
            gamma,
            omega,
            phi,
            t_final,
        })
    }

    /// Control vector at physical time `tau`.
    pub fn control(&self, tau: f64) -> (f64, f64) {
        let (s, c) = (self.omega * tau + self.phi).sin_cos();
        (self.gamma * s, -self.gamma * c)
    }

    /// Closed-form state at `t` (t-units) under this law.
    pub fn propagator(&self, t: f64) -> Su2 {
        drift_propagator(t, self.omega, self.phi, self.gamma)
    }

    pub fn final_state(&self) -> Su2 {
        self.propagator(self.t_final)
    }

    pub fn waveform(&self) -> Waveform<'static> {
        let law = *self;
        Waveform::new(self.gamma, move |tau| law.control(tau))
    }
}

impl FreeControlLaw {
    pub fn new(gamma: f64, omega: f64, phi: f64, t_final: f64) -> Result<Self> {
        check_law(gamma, t_final)?;
        Ok(Self {
            gamma,
            omega,
            phi,
            t_final,
        })
    }

    pub fn control(&self, tau: f64) -> (f64, f64) {
        let (s, c) = (self.omega * tau + self.phi).sin_cos();
        (self.gamma * s, -self.gamma * c)
    }

    pub fn propagator(&self, t: f64) -> Su2 {
        free_propagator(t, self.omega, self.phi, self.gamma)
    }

    pub fn final_state(&self) -> Su2 {
        self.propagator(self.t_final)
    }

    pub fn waveform(&self) -> Waveform<'static> {
        let law = *self;
        Waveform::new(self.gamma, move |tau| law.control(tau))
    }

    /// The drift-system law realized by rotating this control back out of
    /// the interaction picture: same bound, same phase, frequency shifted by
    /// the drift rate. Driving the drift system with it gives
    /// `X(t) = e^{2 sz t} U(t)` exactly, `U` being this law's propagator.
    pub fn to_drift(&self) -> DriftControlLaw {
        DriftControlLaw {
            gamma: self.gamma,
            omega: self.omega + 1.0,
            phi: self.phi,
            t_final: self.t_final,
        }
    }
}

/// State of the drift system at time `t` under the extremal
/// `(omega, phi, gamma)`:
/// `alpha = e^{i omega t} (cos(a t) + i (b/a) sin(a t))`,
/// `beta  = e^{i (omega t + phi)} (gamma/a) sin(a t)`,
/// with `b = 1 - omega`, `a = sqrt(gamma^2 + b^2)`.
pub fn drift_propagator(t: f64, omega: f64, phi: f64, gamma: f64) -> Su2 {
    debug_assert!(gamma > 0.0 && t >= 0.0);
    let b = 1.0 - omega;
    let a = (gamma * gamma + b * b).sqrt();
    let (sin_at, cos_at) = (a * t).sin_cos();
    let alpha = Complex64::from_polar(1.0, omega * t) * Complex64::new(cos_at, (b / a) * sin_at);
    let beta = Complex64::from_polar(1.0, omega * t + phi) * ((gamma / a) * sin_at);
    Su2::renormalized(alpha, beta)
}

/// State of the driftless system at time `t`:
/// `alpha = e^{i omega t} (cos(a t) - i (omega/a) sin(a t))`,
/// `beta  = e^{i (omega t + phi)} (gamma/a) sin(a t)`,
/// with `a = sqrt(omega^2 + gamma^2)`. Note the sign of the imaginary part
/// of `alpha` differs from the drift case.
pub fn free_propagator(t: f64, omega: f64, phi: f64, gamma: f64) -> Su2 {
    debug_assert!(gamma > 0.0 && t >= 0.0);
    let a = (omega * omega + gamma * gamma).sqrt();
    let (sin_at, cos_at) = (a * t).sin_cos();
    let alpha =
        Complex64::from_polar(1.0, omega * t) * Complex64::new(cos_at, -(omega / a) * sin_at);
    let beta = Complex64::from_polar(1.0, omega * t + phi) * ((gamma / a) * sin_at);
    Su2::renormalized(alpha, beta)
}

/// Unit-disk trajectory of the drift system:
/// `x = cos(wt) cos(at) - (b/a) sin(wt) sin(at)`,
/// `y = sin(wt) cos(at) + (b/a) cos(wt) sin(at)`.
pub fn drift_disk_traj(t: f64, omega: f64, gamma: f64) -> DiskPoint {
    let b = 1.0 - omega;
    let a = (gamma * gamma + b * b).sqrt();
    let (sin_wt, cos_wt) = (omega * t).sin_cos();
    let (sin_at, cos_at) = (a * t).sin_cos();
    let r = (b / a) * sin_at;
    DiskPoint::new(cos_wt * cos_at - sin_wt * r, sin_wt * cos_at + cos_wt * r)
}

/// Unit-disk trajectory of the driftless system; for fixed `t` and varying
/// `omega` this is the frontline curve:
/// `x = cos(wt) cos(at) + (w/a) sin(wt) sin(at)`,
/// `y = sin(wt) cos(at) - (w/a) cos(wt) sin(at)`.
pub fn free_disk_traj(t: f64, omega: f64, gamma: f64) -> DiskPoint {
    let a = (omega * omega + gamma * gamma).sqrt();
    let (sin_wt, cos_wt) = (omega * t).sin_cos();
    let (sin_at, cos_at) = (a * t).sin_cos();
    let r = (omega / a) * sin_at;
    DiskPoint::new(cos_wt * cos_at + sin_wt * r, sin_wt * cos_at - cos_wt * r)
}

/// d/d(omega) of [`free_disk_traj`] at fixed `t`.
pub(crate) fn free_traj_d_omega(t: f64, omega: f64, gamma: f64) -> (f64, f64) {
    let a = (omega * omega + gamma * gamma).sqrt();
    let (sin_wt, cos_wt) = (omega * t).sin_cos();
    let (sin_at, cos_at) = (a * t).sin_cos();
    let f = (gamma * gamma / (a * a * a)) * (sin_at - a * t * cos_at);
    (sin_wt * f, -cos_wt * f)
}

/// d/dt of [`free_disk_traj`] at fixed `omega`.
pub(crate) fn free_traj_d_t(t: f64, omega: f64, gamma: f64) -> (f64, f64) {
    let a = (omega * omega + gamma * gamma).sqrt();
    let (sin_wt, cos_wt) = (omega * t).sin_cos();
    let sin_at = (a * t).sin();
    let f = -(gamma * gamma / a) * sin_at;
    (cos_wt * f, sin_wt * f)
}

/// d/d(gamma) of [`free_disk_traj`] at fixed `t`, `omega`.
pub(crate) fn free_traj_d_gamma(t: f64, omega: f64, gamma: f64) -> (f64, f64) {
    let a2 = omega * omega + gamma * gamma;
    let a = a2.sqrt();
    let (sin_wt, cos_wt) = (omega * t).sin_cos();
    let (sin_at, cos_at) = (a * t).sin_cos();
    let gt_a = gamma * t / a;
    let wg_a3 = omega * gamma / (a * a2);
    let wgt_a2 = omega * gamma * t / a2;
    (
        -gt_a * cos_wt * sin_at - wg_a3 * sin_wt * sin_at + wgt_a2 * sin_wt * cos_at,
        -gt_a * sin_wt * sin_at + wg_a3 * cos_wt * sin_at - wgt_a2 * cos_wt * cos_at,
    )
}

/// Inverse interaction-picture rotation applied to the driftless control at
/// `tau = 2t`: returns the drift-system control `u = R(tau)^T v(tau)`. Norm
/// is preserved, `|u| = |v| = gamma`.
pub fn control_transform(law: &FreeControlLaw, t: f64) -> (f64, f64) {
    let tau = 2.0 * t;
    let (vx, vy) = law.control(tau);
    let (s, c) = tau.sin_cos();
    (c * vx - s * vy, s * vx + c * vy)
}

/// Reduce to the principal branch [-pi, pi).
pub(crate) fn principal(x: f64) -> f64 {
    let mut y = x.rem_euclid(2.0 * PI);
    if y >= PI {
        y -= 2.0 * PI;
    }
    y
}

/// Phase `phi` such that the drift propagator at `(t, omega, gamma)` has
/// off-diagonal entry equal to `target.beta`.
///
/// When the target's off-diagonal magnitude is below [`GEOMETRY_TOL`] the
/// phase is immaterial and 0 is returned by convention. A magnitude the
/// propagator cannot produce at `(t, omega)` is a caller bug and reported as
/// [`Error::MagnitudeMismatch`].
pub fn match_phase(target: &Su2, t: f64, omega: f64, gamma: f64) -> Result<f64> {
    let b = 1.0 - omega;
    let a = (gamma * gamma + b * b).sqrt();
    let m = (gamma / a) * (a * t).sin(); // signed off-diagonal magnitude
    let wanted = target.beta.norm();
    if wanted < GEOMETRY_TOL && m.abs() < GEOMETRY_TOL {
        return Ok(0.0);
    }
    if (m.abs() - wanted).abs() > GEOMETRY_TOL {
        return Err(Error::MagnitudeMismatch {
            produced: m.abs(),
            wanted,
        });
    }
    if wanted < GEOMETRY_TOL {
        return Ok(0.0);
    }
    let branch = if m < 0.0 { PI } else { 0.0 };
    Ok(principal(target.beta.arg() - omega * t - branch))
}
