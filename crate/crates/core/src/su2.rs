//! SU(2) group elements, the scaled Pauli basis of su(2), and the unit-disk
//! projection.
//!
//! An element is stored as the complex pair `(alpha, beta)` of its first
//! row; the second row is `(-conj(beta), conj(alpha))`, so unitarity is
//! structural up to the normalization `|alpha|^2 + |beta|^2 = 1`. Every
//! constructor and composition renormalizes, which keeps long products from
//! drifting off the group.
//!
//! The su(2) basis used throughout is
//!
//! ```text
//! sx = (1/2) [0 i; i 0],   sy = (1/2) [0 -1; 1 0],   sz = (1/2) [i 0; 0 -i],
//! ```
//!
//! each of which squares to -(1/4) I, so the exponential has the half-angle
//! closed form implemented by [`exp_lie`].

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

/// An SU(2) element `[alpha beta; -conj(beta) conj(alpha)]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Su2 {
    pub alpha: Complex64,
    pub beta: Complex64,
}

/// Real coefficients on the (sx, sy, sz) basis of su(2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LieCoeffs {
    pub cx: f64,
    pub cy: f64,
    pub cz: f64,
}

impl LieCoeffs {
    pub fn new(cx: f64, cy: f64, cz: f64) -> Self {
        Self { cx, cy, cz }
    }

    pub fn norm(&self) -> f64 {
        (self.cx * self.cx + self.cy * self.cy + self.cz * self.cz).sqrt()
    }
}

/// The (1,1) entry of an SU(2) element, a point of the closed unit disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiskPoint {
    pub x: f64,
    pub y: f64,
}

impl DiskPoint {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn norm_sq(&self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn dist(&self, other: DiskPoint) -> f64 {
        ((self.x - other.x).powi(2) + (self.y - other.y).powi(2)).sqrt()
    }

    /// Rotation by `angle` about the origin, i.e. multiplication of
    /// `x + iy` by `e^{i angle}`.
    pub fn rotate(&self, angle: f64) -> DiskPoint {
        let (s, c) = angle.sin_cos();
        DiskPoint::new(c * self.x - s * self.y, c * self.y + s * self.x)
    }

    pub fn in_closed_disk(&self, tol: f64) -> bool {
        self.norm_sq() <= (1.0 + tol) * (1.0 + tol)
    }
}

impl Su2 {
    pub const IDENTITY: Su2 = Su2 {
        alpha: Complex64::new(1.0, 0.0),
        beta: Complex64::new(0.0, 0.0),
    };

    /// Builds an element from its first row, renormalizing. Rejects rows
    /// whose norm is not within 1e-6 of unity (malformed input rather than
    /// numerical drift).
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let n2 = alpha.norm_sqr() + beta.norm_sqr();
        if !n2.is_finite() || (n2 - 1.0).abs() > 1e-6 {
            return Err(Error::InvalidInput(format!(
                "first row of an SU(2) element must have unit norm (|alpha|^2+|beta|^2 = {n2})"
            )));
        }
        Ok(Self::renormalized(alpha, beta))
    }

    /// Normalizes a first row that is already close to the group; used by
    /// the closed-form propagators and the integrator.
    pub(crate) fn renormalized(alpha: Complex64, beta: Complex64) -> Self {
        let n = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
        Su2 {
            alpha: alpha / n,
            beta: beta / n,
        }
    }

    pub fn inverse(&self) -> Su2 {
        Su2 {
            alpha: self.alpha.conj(),
            beta: -self.beta,
        }
    }

    /// Unitarity defect `| |alpha|^2 + |beta|^2 - 1 |`.
    pub fn unitarity_defect(&self) -> f64 {
        (self.alpha.norm_sqr() + self.beta.norm_sqr() - 1.0).abs()
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() <= tol
    }
}

/// Matrix product `A B`, renormalized so the unitarity invariant holds to
/// [`UNITARITY_TOL`].
pub fn compose(a: &Su2, b: &Su2) -> Su2 {
    // Row 1 of A times B, with B = [b.alpha b.beta; -conj(b.beta) conj(b.alpha)].
    let alpha = a.alpha * b.alpha - a.beta * b.beta.conj();
    let beta = a.alpha * b.beta + a.beta * b.alpha.conj();
    Su2::renormalized(alpha, beta)
}

/// Exponential of `cx sx + cy sy + cz sz`.
///
/// With `theta = sqrt(cx^2 + cy^2 + cz^2)` the generators square to
/// -(theta/2)^2 I, giving
/// `exp = cos(theta/2) I + (sin(theta/2)/theta) (cx sx + cy sy + cz sz) * 2`.
pub fn exp_lie(v: LieCoeffs) -> Su2 {
    let theta = v.norm();
    // sin(theta/2)/theta, continuous through theta = 0.
    let s = if theta < 1e-8 {
        0.5 - theta * theta / 48.0
    } else {
        (0.5 * theta).sin() / theta
    };
    let c = (0.5 * theta).cos();
    let alpha = Complex64::new(c, v.cz * s);
    let beta = Complex64::new(-v.cy * s, v.cx * s);
    Su2::renormalized(alpha, beta)
}

/// `Tr(A B^dagger)`. Real (up to rounding) whenever both arguments are in
/// SU(2); returned as a complex number because the trace form is.
pub fn trace_inner(a: &Su2, b: &Su2) -> Complex64 {
    let z = a.alpha * b.alpha.conj() + a.beta * b.beta.conj();
    z + z.conj()
}

/// Trace-norm distance `sqrt(<A-B, A-B>) = sqrt(2 |da|^2 + 2 |db|^2)`.
pub fn distance(a: &Su2, b: &Su2) -> f64 {
    let da = a.alpha - b.alpha;
    let db = a.beta - b.beta;
    (2.0 * (da.norm_sqr() + db.norm_sqr())).sqrt()
}

/// Projection to the unit disk: `(Re alpha, Im alpha)`.
pub fn disk_point(x: &Su2) -> DiskPoint {
    DiskPoint::new(x.alpha.re, x.alpha.im)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::UNITARITY_TOL;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Series-summation oracle for the matrix exponential, independent of
    /// the half-angle closed form: sums M^k / k! on a raw 2x2 complex
    /// matrix.
    fn exp_series(v: LieCoeffs) -> [[Complex64; 2]; 2] {
        let i = Complex64::i();
        let m = [
            [
                0.5 * i * v.cz,
                Complex64::new(-0.5 * v.cy, 0.5 * v.cx),
            ],
            [
                Complex64::new(0.5 * v.cy, 0.5 * v.cx),
                -0.5 * i * v.cz,
            ],
        ];
        let mut acc = [
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        ];
        let mut term = acc;
        for k in 1..60 {
            let mut next = [[Complex64::new(0.0, 0.0); 2]; 2];
            for r in 0..2 {
                for c in 0..2 {
                    next[r][c] = term[r][0] * m[0][c] + term[r][1] * m[1][c];
                }
            }
            for r in 0..2 {
                for c in 0..2 {
                    next[r][c] /= k as f64;
                    acc[r][c] += next[r][c];
                }
            }
            term = next;
        }
        acc
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn compose_identity_and_inverse() {
        let b = exp_lie(LieCoeffs::new(0.3, -0.8, 1.1));
        let ib = compose(&Su2::IDENTITY, &b);
        assert!(close(ib.alpha, b.alpha, 1e-15));
        assert!(close(ib.beta, b.beta, 1e-15));

        let prod = compose(&b, &b.inverse());
        assert!(distance(&prod, &Su2::IDENTITY) < UNITARITY_TOL);
    }

    #[test]
    fn compose_one_parameter_subgroup() {
        // exp(sz t1) exp(sz t2) = exp(sz (t1+t2)), checked against exp_lie.
        let (t1, t2) = (0.7, -2.3);
        let lhs = compose(
            &exp_lie(LieCoeffs::new(0.0, 0.0, t1)),
            &exp_lie(LieCoeffs::new(0.0, 0.0, t2)),
        );
        let rhs = exp_lie(LieCoeffs::new(0.0, 0.0, t1 + t2));
        assert!(distance(&lhs, &rhs) < UNITARITY_TOL);
    }

    #[test]
    fn exp_lie_zero_and_z_axis() {
        let id = exp_lie(LieCoeffs::new(0.0, 0.0, 0.0));
        assert!(distance(&id, &Su2::IDENTITY) < 1e-15);

        // exp(sz tau) = diag(e^{i tau/2}, e^{-i tau/2})
        let tau = 1.9;
        let u = exp_lie(LieCoeffs::new(0.0, 0.0, tau));
        assert!(close(u.alpha, Complex64::from_polar(1.0, tau / 2.0), 1e-15));
        assert!(u.beta.norm() < 1e-15);
    }

    #[test]
    fn exp_lie_matches_series_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let v = LieCoeffs::new(
                rng.gen_range(-6.0..6.0),
                rng.gen_range(-6.0..6.0),
                rng.gen_range(-6.0..6.0),
            );
            let u = exp_lie(v);
            let s = exp_series(v);
            assert!(close(u.alpha, s[0][0], 1e-12), "alpha mismatch for {v:?}");
            assert!(close(u.beta, s[0][1], 1e-12), "beta mismatch for {v:?}");
            // second row is structural
            assert!(close(-u.beta.conj(), s[1][0], 1e-12));
            assert!(u.is_unitary(UNITARITY_TOL));
        }
    }

    #[test]
    fn exp_lie_double_cover() {
        // A 2 pi rotation about any axis is -I.
        let u = exp_lie(LieCoeffs::new(2.0 * std::f64::consts::PI, 0.0, 0.0));
        assert!(close(u.alpha, Complex64::new(-1.0, 0.0), 1e-14));
        assert!(u.beta.norm() < 1e-14);
    }

    #[test]
    fn exp_lie_inverse_property() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let scale = rng.gen_range(0.0..10.0);
            let dir = [
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            ];
            let n = f64::sqrt(dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2])
                .max(1e-12);
            let v = LieCoeffs::new(
                scale * dir[0] / n,
                scale * dir[1] / n,
                scale * dir[2] / n,
            );
            let prod = compose(&exp_lie(v), &exp_lie(LieCoeffs::new(-v.cx, -v.cy, -v.cz)));
            assert!(distance(&prod, &Su2::IDENTITY) < UNITARITY_TOL);
        }
    }

    #[test]
    fn trace_inner_examples() {
        let a = exp_lie(LieCoeffs::new(1.2, 0.4, -0.9));
        let t = trace_inner(&a, &a);
        assert!((t.re - 2.0).abs() < 1e-14 && t.im.abs() < 1e-16);

        // Tr(I diag(i, -i)^dagger) = -i + i = 0
        let z = exp_lie(LieCoeffs::new(0.0, 0.0, std::f64::consts::PI));
        assert!(trace_inner(&Su2::IDENTITY, &z).norm() < 1e-15);

        assert!(distance(&a, &a) < 1e-16);
    }

    #[test]
    fn disk_point_examples() {
        let p = disk_point(&Su2::IDENTITY);
        assert_eq!((p.x, p.y), (1.0, 0.0));

        // SWAP-like element: alpha = 0.
        let swap = Su2::new(Complex64::new(0.0, 0.0), Complex64::new(0.6, 0.8)).unwrap();
        let p = disk_point(&swap);
        assert_eq!((p.x, p.y), (0.0, 0.0));

        // Boundary phase point diag(e^{i psi}, e^{-i psi}).
        let psi = 0.77;
        let u = exp_lie(LieCoeffs::new(0.0, 0.0, 2.0 * psi));
        let p = disk_point(&u);
        assert!((p.x - psi.cos()).abs() < 1e-15 && (p.y - psi.sin()).abs() < 1e-15);
        assert!(p.in_closed_disk(UNITARITY_TOL));
    }

    #[test]
    fn new_rejects_garbage() {
        assert!(Su2::new(Complex64::new(2.0, 0.0), Complex64::new(0.0, 0.0)).is_err());
        assert!(Su2::new(Complex64::new(f64::NAN, 0.0), Complex64::new(0.0, 0.0)).is_err());
    }
}
