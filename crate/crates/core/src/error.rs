//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Malformed argument (bad range, reversed interval, point outside the
    /// closed unit disk, degenerate target).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The target lies on (or numerically at) the unit circle, where the
    /// frequency bound diverges. Boundary targets have their own closed form.
    #[error("target is on the unit circle (|P|^2 = {rho_sq}); frequency bounds diverge")]
    BoundaryPoint { rho_sq: f64 },

    /// The boundary minimum-time formula only holds for gamma <= 1.
    #[error("boundary formula is valid only for 0 < gamma <= 1 (got {gamma})")]
    OutOfValidity { gamma: f64 },

    /// Phase matching was asked to hit an off-diagonal magnitude the
    /// propagator cannot produce at the given (t, omega); caller bug.
    #[error("off-diagonal magnitude mismatch: propagator gives {produced}, target wants {wanted}")]
    MagnitudeMismatch { produced: f64, wanted: f64 },

    /// A synchronization step was asked to act on an unreachable target.
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// A control waveform exceeded its declared norm bound.
    #[error("control norm {norm} exceeds bound {bound} at tau = {tau}")]
    NormViolation { tau: f64, norm: f64, bound: f64 },

    /// An iterative solver failed to converge.
    #[error("solver failure: {0}")]
    SolverFailure(String),
}
