//! Frontline curves, reachable-set containment, and the critical-trajectory
//! and separatrix geometry.
//!
//! The driftless reachable set at time `T` is the region of the unit disk to
//! the right of the parametric frontline `F_T` (the curve
//! [`crate::extremal::free_disk_traj`] over `omega` in `[-Omega, Omega]`,
//! `Omega = sqrt(pi^2/T^2 - gamma^2)`), closed off by the unit-circle arc
//! through (1, 0) that joins the frontline's two endpoints. Containment is
//! decided by a crossing-parity test on the sampled frontline plus an
//! analytic treatment of the arc; points within [`GEOMETRY_TOL`] of the
//! boundary count as contained, since minimum-time solvers bisect onto the
//! boundary.
//!
//! The drift reachable set is the same region probed at the rotated point
//! `e^{-iT} P`.

use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::f64::consts::PI;

use crate::error::Error;
use crate::extremal::{drift_disk_traj, free_disk_traj};
use crate::su2::DiskPoint;
use crate::{Result, GEOMETRY_TOL};

/// Base frontline resolution (intervals); adaptive refinement doubles from
/// here.
const BASE_INTERVALS: usize = 512;
/// Refinement cap (intervals).
const MAX_INTERVALS: usize = 1 << 16;
/// Resolution used while coarsely scanning for feasibility brackets.
pub(crate) const SCAN_INTERVALS: usize = 1024;

/// A sampled frontline `F_T`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Frontline {
    /// Time, t-units.
    pub t: f64,
    pub gamma: f64,
    /// Parameter half-range `Omega`; zero when degenerate.
    pub omega_max: f64,
    /// `(omega, point)` samples ordered from `-Omega` to `+Omega`.
    pub samples: Vec<(f64, DiskPoint)>,
    /// True when `gamma t >= pi` and the curve is the single point (-1, 0).
    pub degenerate: bool,
    /// Midpoint-sagitta estimate achieved by the last refinement; `None`
    /// for fixed-resolution builds.
    pub flatness: Option<f64>,
}

impl Frontline {
    /// Sample `F_T` at `n >= 3` equispaced parameter values.
    pub fn build(t: f64, gamma: f64, n: usize) -> Result<Frontline> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::InvalidInput(format!(
                "frontline time must be positive (got {t})"
            )));
        }
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(Error::InvalidInput(format!(
                "control bound must be positive (got {gamma})"
            )));
        }
        if n < 3 {
            return Err(Error::InvalidInput(format!(
                "need at least 3 frontline samples (got {n})"
            )));
        }
        let omega_max_sq = (PI / t - gamma) * (PI / t + gamma);
        if omega_max_sq <= 0.0 {
            return Ok(Frontline {
                t,
                gamma,
                omega_max: 0.0,
                samples: vec![(0.0, DiskPoint::new(-1.0, 0.0))],
                degenerate: true,
                flatness: Some(0.0),
            });
        }
        let omega_max = omega_max_sq.sqrt();
        let mut samples = vec![(0.0, DiskPoint::new(0.0, 0.0)); n];
        // Evaluate the non-positive half and mirror; keeps the omega -> -omega
        // symmetry bit-exact and halves the trig work.
        let last = n - 1;
        for i in 0..=(last / 2) {
            let omega = omega_max * (2.0 * i as f64 / last as f64 - 1.0);
            let p = free_disk_traj(t, omega, gamma);
            samples[i] = (omega, p);
            samples[last - i] = (-omega, DiskPoint::new(p.x, -p.y));
        }
        if last % 2 == 0 {
            // middle sample sits exactly on the axis
            samples[last / 2].1.y = 0.0;
        }
        Ok(Frontline {
            t,
            gamma,
            omega_max,
            samples,
            degenerate: false,
            flatness: None,
        })
    }

    /// Build with doubling refinement until the midpoint sagitta between
    /// successive levels drops below [`GEOMETRY_TOL`] (or the interval cap
    /// is reached).
    pub fn build_adaptive(t: f64, gamma: f64) -> Result<Frontline> {
        let mut intervals = BASE_INTERVALS;
        loop {
            let mut fl = Frontline::build(t, gamma, intervals + 1)?;
            if fl.degenerate {
                return Ok(fl);
            }
            let flat = fl.midpoint_sagitta();
            fl.flatness = Some(flat);
            if flat < GEOMETRY_TOL || intervals >= MAX_INTERVALS {
                return Ok(fl);
            }
            intervals *= 2;
        }
    }

    /// Largest distance from an odd-index sample to the chord joining its
    /// neighbors, i.e. the deviation of this polyline from the next coarser
    /// one.
    fn midpoint_sagitta(&self) -> f64 {
        let mut worst = 0.0f64;
        let pts = &self.samples;
        let mut j = 1;
        while j + 1 < pts.len() {
            let d = point_segment_distance(pts[j].1, pts[j - 1].1, pts[j + 1].1);
            worst = worst.max(d);
            j += 2;
        }
        worst
    }

    /// Half-opening angle of the unit-circle arc that closes the region:
    /// `pi - Omega T`. The frontline endpoints sit at `+-` this angle.
    pub fn arc_half_span(&self) -> f64 {
        PI - self.omega_max * self.t
    }

    pub fn endpoints(&self) -> (DiskPoint, DiskPoint) {
        (
            self.samples.first().unwrap().1,
            self.samples.last().unwrap().1,
        )
    }
}

/// Sample `F_T`; degenerates to the single point (-1, 0) once
/// `gamma T >= pi`.
pub fn frontline(t: f64, gamma: f64, n: usize) -> Result<Frontline> {
    Frontline::build(t, gamma, n)
}

/// The closed region of the unit disk bounded by a frontline and the
/// unit-circle arc through (1, 0).
#[derive(Debug, Clone)]
pub struct Region {
    frontline: Frontline,
    half_span: f64,
}

impl Region {
    pub fn new(frontline: Frontline) -> Region {
        let half_span = frontline.arc_half_span();
        Region {
            frontline,
            half_span,
        }
    }

    pub fn frontline(&self) -> &Frontline {
        &self.frontline
    }

    /// Distance from `p` to the region boundary (frontline polyline or arc).
    pub fn boundary_distance(&self, p: DiskPoint) -> f64 {
        if self.frontline.degenerate {
            // Boundary is the single point (-1, 0) plus the full circle.
            let to_point = p.dist(DiskPoint::new(-1.0, 0.0));
            return to_point.min((1.0 - p.norm()).abs());
        }
        self.polyline_distance(p).min(self.arc_distance(p))
    }

    fn polyline_distance(&self, p: DiskPoint) -> f64 {
        let pts = &self.frontline.samples;
        let mut best = f64::INFINITY;
        for w in pts.windows(2) {
            let d = point_segment_distance(p, w[0].1, w[1].1);
            if d < best {
                best = d;
            }
        }
        best
    }

    fn arc_distance(&self, p: DiskPoint) -> f64 {
        let theta = p.y.atan2(p.x);
        if theta.abs() <= self.half_span {
            (1.0 - p.norm()).abs()
        } else {
            let (hi, lo) = self.frontline.endpoints();
            p.dist(hi).min(p.dist(lo))
        }
    }

    /// Crossing-parity test against the closed boundary. The frontline part
    /// is the sampled polyline with the usual half-open rule; the arc is
    /// handled analytically: the rightward ray from a point strictly inside
    /// the disk exits the circle at angle `asin(p.y)`, and that exit crosses
    /// the boundary iff it lands on the arc. Exact vertex hits are measure
    /// zero and are absorbed by the boundary-distance rule.
    fn raycast_inside(&self, p: DiskPoint) -> bool {
        let mut inside = false;
        for w in self.frontline.samples.windows(2) {
            let (a, b) = (w[0].1, w[1].1);
            if (a.y <= p.y) != (b.y <= p.y) {
                let xc = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
                if xc > p.x {
                    inside = !inside;
                }
            }
        }
        if p.norm_sq() < 1.0 && p.y.asin().abs() < self.half_span {
            inside = !inside;
        }
        inside
    }

    /// Boundary-inclusive containment of `p` together with its distance to
    /// the region boundary.
    pub fn classify(&self, p: DiskPoint) -> Result<(bool, f64)> {
        if !p.in_closed_disk(GEOMETRY_TOL) {
            return Err(Error::InvalidInput(format!(
                "point ({}, {}) lies outside the closed unit disk",
                p.x, p.y
            )));
        }
        if self.frontline.degenerate {
            return Ok((true, self.boundary_distance(p)));
        }
        let d = self.boundary_distance(p);
        if p.norm() >= 1.0 - 1e-12 {
            // On the unit circle the region's only presence is the arc.
            // The frontline is tangent to the circle at its endpoints, so
            // the distance-inclusion rule below would smear the arc-opening
            // crossing over an O(sqrt(tol)) angular window.
            let inside = p.y.atan2(p.x).abs() <= self.half_span + GEOMETRY_TOL;
            return Ok((inside, d));
        }
        if d <= GEOMETRY_TOL {
            return Ok((true, d));
        }
        Ok((self.raycast_inside(p), d))
    }

    /// Boundary-inclusive containment of `p` in the region.
    pub fn contains(&self, p: DiskPoint) -> Result<bool> {
        self.classify(p).map(|(inside, _)| inside)
    }
}

pub(crate) enum Resolution {
    /// Fixed moderate sampling for bracket scans.
    Coarse,
    /// Adaptive refinement to [`GEOMETRY_TOL`].
    Full,
}

pub(crate) fn region_at(t: f64, gamma: f64, res: Resolution) -> Result<Region> {
    let fl = match res {
        Resolution::Coarse => Frontline::build(t, gamma, SCAN_INTERVALS + 1)?,
        Resolution::Full => Frontline::build_adaptive(t, gamma)?,
    };
    Ok(Region::new(fl))
}

pub(crate) fn contains_res(p: DiskPoint, t: f64, gamma: f64, res: Resolution) -> Result<bool> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::InvalidInput(format!(
            "control bound must be positive (got {gamma})"
        )));
    }
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::InvalidInput(format!(
            "time must be non-negative (got {t})"
        )));
    }
    if !p.in_closed_disk(GEOMETRY_TOL) {
        return Err(Error::InvalidInput(format!(
            "point ({}, {}) lies outside the closed unit disk",
            p.x, p.y
        )));
    }
    if t == 0.0 {
        // R_U(0) projects to the single point (1, 0).
        return Ok(p.dist(DiskPoint::new(1.0, 0.0)) <= GEOMETRY_TOL);
    }
    region_at(t, gamma, res)?.contains(p)
}

/// Is `p` in the driftless reachable region at time `t` (boundary
/// inclusive)?
pub fn contains(p: DiskPoint, t: f64, gamma: f64) -> Result<bool> {
    contains_res(p, t, gamma, Resolution::Full)
}

/// Is the drift-system target with (1,1) entry `p_f` reachable at exactly
/// time `t`? Per the rotation relation between the two pictures this is
/// containment of `e^{-it} p_f` in the driftless region.
pub fn contains_drift(p_f: DiskPoint, t: f64, gamma: f64) -> Result<bool> {
    contains(p_f.rotate(-t), t, gamma)
}

pub(crate) fn contains_drift_res(
    p_f: DiskPoint,
    t: f64,
    gamma: f64,
    res: Resolution,
) -> Result<bool> {
    contains_res(p_f.rotate(-t), t, gamma, res)
}

/// Containment plus boundary gap of the rotated probe, in one region build.
/// The gap is unsigned; the flag distinguishes inside from outside.
pub(crate) fn drift_gap(
    p_f: DiskPoint,
    t: f64,
    gamma: f64,
    res: Resolution,
) -> Result<(bool, f64)> {
    let z = p_f.rotate(-t);
    if t == 0.0 {
        let d = z.dist(DiskPoint::new(1.0, 0.0));
        return Ok((d <= GEOMETRY_TOL, d));
    }
    region_at(t, gamma, res)?.classify(z)
}

/// The drift trajectory at the critical frequency `omega_c = 1 + gamma^2`,
/// sampled on `[0, T_c]`, `T_c = pi / (2 gamma sqrt(1 + gamma^2))`. It is
/// the envelope of the frontlines and ends in a cusp at `T_c`.
#[derive(Debug, Clone)]
pub struct CriticalTrajectory {
    pub gamma: f64,
    pub omega_c: f64,
    pub t_c: f64,
    /// `(t, point)` samples on `[0, T_c]`.
    pub samples: Vec<(f64, DiskPoint)>,
}

impl CriticalTrajectory {
    pub fn point_at(&self, t: f64) -> DiskPoint {
        drift_disk_traj(t, self.omega_c, self.gamma)
    }

    /// Minimum distance from `p` to the trajectory (sample scan plus local
    /// golden refinement).
    pub fn distance_to(&self, p: DiskPoint) -> f64 {
        let mut best = (f64::INFINITY, 0.0);
        for (t, q) in &self.samples {
            let d = p.dist(*q);
            if d < best.0 {
                best = (d, *t);
            }
        }
        let dt = self.t_c / (self.samples.len() - 1) as f64;
        let lo = (best.1 - dt).max(0.0);
        let hi = (best.1 + dt).min(self.t_c);
        let t = golden_min(|t| p.dist(self.point_at(t)), lo, hi, 1e-12);
        p.dist(self.point_at(t)).min(best.0)
    }
}

/// Sample the critical trajectory. `gamma` must be positive, `n >= 2`.
pub fn critical_trajectory(gamma: f64, n: usize) -> CriticalTrajectory {
    assert!(gamma > 0.0 && n >= 2);
    let omega_c = 1.0 + gamma * gamma;
    let t_c = PI / (2.0 * gamma * (1.0 + gamma * gamma).sqrt());
    let samples = (0..n)
        .map(|i| {
            let t = t_c * i as f64 / (n - 1) as f64;
            (t, drift_disk_traj(t, omega_c, gamma))
        })
        .collect();
    CriticalTrajectory {
        gamma,
        omega_c,
        t_c,
        samples,
    }
}

/// The circular `omega* = (1 + gamma^2)/2` trajectory separating the two
/// qualitative regimes of the optimal synthesis.
#[derive(Debug, Clone, Copy)]
pub struct Separatrix {
    pub center: DiskPoint,
    pub radius: f64,
    pub omega_star: f64,
}

pub fn separatrix(gamma: f64) -> Separatrix {
    assert!(gamma > 0.0);
    let g2 = gamma * gamma;
    Separatrix {
        center: DiskPoint::new(g2 / (1.0 + g2), 0.0),
        radius: 1.0 / (1.0 + g2),
        omega_star: (1.0 + g2) / 2.0,
    }
}

/// Determinant of the (t, omega) Jacobian of the drift disk trajectory:
/// `gamma^2 (gamma^2 + 1 - omega) / a^4 * sin(at) [sin(at) - at cos(at)]`,
/// drift convention `b = 1 - omega`, `a = sqrt(gamma^2 + b^2)`. Vanishes
/// exactly at `t = 0`, `t = pi/a` and on the critical frequency
/// `omega = 1 + gamma^2`.
pub fn jacobian_det(t: f64, omega: f64, gamma: f64) -> f64 {
    let b = 1.0 - omega;
    let a2 = gamma * gamma + b * b;
    let at = a2.sqrt() * t;
    let (sin_at, cos_at) = at.sin_cos();
    gamma * gamma * (gamma * gamma + 1.0 - omega) / (a2 * a2) * sin_at * (sin_at - at * cos_at)
}

/// Distance from `p` to the segment `ab`.
pub fn point_segment_distance(p: DiskPoint, a: DiskPoint, b: DiskPoint) -> f64 {
    let (ex, ey) = (b.x - a.x, b.y - a.y);
    let len_sq = ex * ex + ey * ey;
    if len_sq == 0.0 {
        return p.dist(a);
    }
    let s = (((p.x - a.x) * ex + (p.y - a.y) * ey) / len_sq).clamp(0.0, 1.0);
    p.dist(DiskPoint::new(a.x + s * ex, a.y + s * ey))
}

/// Minimum distance from `p` to a polyline.
pub fn point_polyline_distance(p: DiskPoint, pts: &[DiskPoint]) -> f64 {
    if pts.len() == 1 {
        return p.dist(pts[0]);
    }
    let mut best = f64::INFINITY;
    for w in pts.windows(2) {
        best = best.min(point_segment_distance(p, w[0], w[1]));
    }
    best
}

fn orient(a: DiskPoint, b: DiskPoint, c: DiskPoint) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

/// Proper crossing test; collinear touching does not count.
fn segments_cross(p1: DiskPoint, p2: DiskPoint, q1: DiskPoint, q2: DiskPoint) -> bool {
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    ((d1 > 0.0) != (d2 > 0.0)) && ((d3 > 0.0) != (d4 > 0.0))
}

/// Uniform grid over segment bounding boxes for near-linear intersection
/// sweeps.
struct SegmentGrid {
    cell: f64,
    buckets: HashMap<(i64, i64), Vec<u32>>,
}

impl SegmentGrid {
    fn build(pts: &[DiskPoint]) -> SegmentGrid {
        let mut max_len = 1e-9f64;
        for w in pts.windows(2) {
            max_len = max_len.max((w[1].x - w[0].x).abs().max((w[1].y - w[0].y).abs()));
        }
        let cell = max_len;
        let mut buckets: HashMap<(i64, i64), Vec<u32>> = HashMap::new();
        for (i, w) in pts.windows(2).enumerate() {
            let (x0, x1) = (w[0].x.min(w[1].x), w[0].x.max(w[1].x));
            let (y0, y1) = (w[0].y.min(w[1].y), w[0].y.max(w[1].y));
            let (cx0, cx1) = ((x0 / cell).floor() as i64, (x1 / cell).floor() as i64);
            let (cy0, cy1) = ((y0 / cell).floor() as i64, (y1 / cell).floor() as i64);
            for cx in cx0..=cx1 {
                for cy in cy0..=cy1 {
                    buckets.entry((cx, cy)).or_default().push(i as u32);
                }
            }
        }
        SegmentGrid { cell, buckets }
    }

    fn candidates(&self, a: DiskPoint, b: DiskPoint, out: &mut Vec<u32>) {
        out.clear();
        let (x0, x1) = (a.x.min(b.x), a.x.max(b.x));
        let (y0, y1) = (a.y.min(b.y), a.y.max(b.y));
        let (cx0, cx1) = (
            (x0 / self.cell).floor() as i64,
            (x1 / self.cell).floor() as i64,
        );
        let (cy0, cy1) = (
            (y0 / self.cell).floor() as i64,
            (y1 / self.cell).floor() as i64,
        );
        for cx in cx0..=cx1 {
            for cy in cy0..=cy1 {
                if let Some(v) = self.buckets.get(&(cx, cy)) {
                    out.extend_from_slice(v);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
    }
}

/// Does the polyline properly intersect itself (adjacent segments excluded)?
pub fn polyline_self_intersects(pts: &[DiskPoint]) -> bool {
    if pts.len() < 4 {
        return false;
    }
    let grid = SegmentGrid::build(pts);
    let mut cand = Vec::new();
    for (i, w) in pts.windows(2).enumerate() {
        grid.candidates(w[0], w[1], &mut cand);
        for &j in &cand {
            let j = j as usize;
            if j <= i + 1 {
                continue; // self and adjacent
            }
            if segments_cross(w[0], w[1], pts[j], pts[j + 1]) {
                return true;
            }
        }
    }
    false
}

/// Do two polylines properly cross?
pub fn polylines_cross(a: &[DiskPoint], b: &[DiskPoint]) -> bool {
    if a.len() < 2 || b.len() < 2 {
        return false;
    }
    let grid = SegmentGrid::build(b);
    let mut cand = Vec::new();
    for w in a.windows(2) {
        grid.candidates(w[0], w[1], &mut cand);
        for &j in &cand {
            let j = j as usize;
            if segments_cross(w[0], w[1], b[j], b[j + 1]) {
                return true;
            }
        }
    }
    false
}

/// Golden-section minimizer on `[lo, hi]`.
pub(crate) fn golden_min(mut f: impl FnMut(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    while hi - lo > tol {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = f(d);
        }
    }
    0.5 * (lo + hi)
}
