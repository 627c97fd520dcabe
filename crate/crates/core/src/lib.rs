//! Time-optimal control of two-level quantum systems on SU(2).
//!
//! The model is a right-invariant bilinear system with a normalized drift
//! about the z axis and a norm-bounded transverse control. Everything here
//! runs in the unit disk picture: the (1,1) entry of the evolution operator
//! determines the minimum time, and the reachable set of the associated
//! driftless system at time `T` is the region of the disk bounded by an
//! explicit parametric frontline. The crate provides
//!
//! * exact-structure SU(2) arithmetic ([`su2`]),
//! * closed-form extremal propagators for the drift and driftless systems
//!   ([`extremal`]),
//! * frontline construction and robust containment tests ([`reachable`]),
//! * minimum-time solvers for single targets ([`mintime`]),
//! * simultaneous steering of N independent qubits ([`sync`]),
//! * an independent Runge-Kutta verifier for every synthesized control
//!   ([`oracle`]).
//!
//! All public durations are in `t`-units, where `t = tau/2` and `tau` is
//! physical time. The conversion happens exactly once, at the control
//! evaluation boundary.

pub mod error;
pub mod extremal;
pub mod mintime;
pub mod oracle;
pub mod reachable;
pub mod su2;
pub mod sync;

pub use error::Error;
pub use extremal::{
    control_transform, drift_disk_traj, drift_propagator, free_disk_traj, free_propagator,
    match_phase, DriftControlLaw, FreeControlLaw,
};
pub use mintime::{
    boundary_min_time, min_time_drift, min_time_free, min_time_sweep, omega_bounds, MinTimeResult,
    SweepPoint, SynthesizedLaw,
};
pub use oracle::{
    integrate_drift, integrate_free, verify_law, verify_min_time, verify_plan, PlanCheck, Waveform,
};
pub use reachable::{
    contains, contains_drift, critical_trajectory, frontline, jacobian_det,
    point_polyline_distance, point_segment_distance, polyline_self_intersects, polylines_cross,
    separatrix, CriticalTrajectory, Frontline, Region, Separatrix,
};
pub use su2::{compose, disk_point, distance, exp_lie, trace_inner, DiskPoint, LieCoeffs, Su2};
pub use sync::{
    feasible_at, next_feasible_time, slowdown_gamma, synchronize, SyncPlan, SyncProblem,
};

/// Tolerance for algebraic identities on SU(2): unitarity defects, group
/// relations, exact trigonometric identities.
pub const UNITARITY_TOL: f64 = 1e-12;

/// Tolerance for geometric comparisons: curve containment, boundary
/// membership, root finding on parametric curves.
pub const GEOMETRY_TOL: f64 = 1e-9;

pub type Result<T> = std::result::Result<T, Error>;
