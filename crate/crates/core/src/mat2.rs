//! 2×2 complex matrices over a generic coefficient backend.

use crate::scalar::{C64, Scalar};

/// A 2×2 matrix stored row-major: `[m00, m01, m10, m11]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat2<S>(pub [S; 4]);

impl<S: Scalar> Mat2<S> {
    pub fn new(m00: S, m01: S, m10: S, m11: S) -> Self {
        Mat2([m00, m01, m10, m11])
    }

    pub fn zero() -> Self {
        Mat2([S::zero(), S::zero(), S::zero(), S::zero()])
    }

    pub fn identity() -> Self {
        Mat2([S::one(), S::zero(), S::zero(), S::one()])
    }

    pub fn diag(a: S, b: S) -> Self {
        Mat2([a, S::zero(), S::zero(), b])
    }

    #[inline]
    pub fn at(&self, row: usize, col: usize) -> &S {
        &self.0[2 * row + col]
    }

    pub fn add(&self, o: &Self) -> Self {
        Mat2([
            self.0[0].add(&o.0[0]),
            self.0[1].add(&o.0[1]),
            self.0[2].add(&o.0[2]),
            self.0[3].add(&o.0[3]),
        ])
    }

    pub fn sub(&self, o: &Self) -> Self {
        Mat2([
            self.0[0].sub(&o.0[0]),
            self.0[1].sub(&o.0[1]),
            self.0[2].sub(&o.0[2]),
            self.0[3].sub(&o.0[3]),
        ])
    }

    pub fn mul(&self, o: &Self) -> Self {
        let a = &self.0;
        let b = &o.0;
        Mat2([
            a[0].mul(&b[0]).add(&a[1].mul(&b[2])),
            a[0].mul(&b[1]).add(&a[1].mul(&b[3])),
            a[2].mul(&b[0]).add(&a[3].mul(&b[2])),
            a[2].mul(&b[1]).add(&a[3].mul(&b[3])),
        ])
    }

    pub fn scale(&self, s: &S) -> Self {
        Mat2([
            self.0[0].mul(s),
            self.0[1].mul(s),
            self.0[2].mul(s),
            self.0[3].mul(s),
        ])
    }

    pub fn neg(&self) -> Self {
        Mat2([
            self.0[0].neg(),
            self.0[1].neg(),
            self.0[2].neg(),
            self.0[3].neg(),
        ])
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Mat2([
            self.0[0].conj(),
            self.0[2].conj(),
            self.0[1].conj(),
            self.0[3].conj(),
        ])
    }

    /// Entry-wise complex conjugation (no transpose).
    pub fn conj_entries(&self) -> Self {
        Mat2([
            self.0[0].conj(),
            self.0[1].conj(),
            self.0[2].conj(),
            self.0[3].conj(),
        ])
    }

    pub fn trace(&self) -> S {
        self.0[0].add(&self.0[3])
    }

    pub fn det(&self) -> S {
        self.0[0].mul(&self.0[3]).sub(&self.0[1].mul(&self.0[2]))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|e| e.is_zero())
    }

    /// Squared Frobenius norm as a double.
    pub fn frob_sq(&self) -> f64 {
        self.0.iter().map(|e| e.abs_sq()).sum()
    }

    pub fn frob(&self) -> f64 {
        self.frob_sq().sqrt()
    }

    pub fn to_c64(&self) -> Mat2<C64> {
        Mat2([
            self.0[0].to_c64(),
            self.0[1].to_c64(),
            self.0[2].to_c64(),
            self.0[3].to_c64(),
        ])
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Mat2<T> {
        Mat2([f(&self.0[0]), f(&self.0[1]), f(&self.0[2]), f(&self.0[3])])
    }
}

impl Mat2<C64> {
    /// Frobenius distance from the 2×2 identity of `U†U`.
    pub fn unitarity_residual(&self) -> f64 {
        self.adjoint().mul(self).sub(&Mat2::identity()).frob()
    }

    /// |det U − 1|.
    pub fn det_residual(&self) -> f64 {
        (self.det() - C64::new(1.0, 0.0)).norm()
    }

    /// Combined residual for a special-unitary check.
    pub fn su2_residual(&self) -> f64 {
        self.unitarity_residual().max(self.det_residual())
    }

    /// Residual of the rank-one orthogonal projector conditions
    /// (idempotent, self-adjoint, unit trace).
    pub fn projector_residual(&self) -> f64 {
        let idem = self.mul(self).sub(self).frob();
        let herm = self.sub(&self.adjoint()).frob();
        let tr = (self.trace() - C64::new(1.0, 0.0)).norm();
        idem.max(herm).max(tr)
    }

    /// Apply the matrix to a column vector.
    pub fn apply(&self, v: [C64; 2]) -> [C64; 2] {
        [
            self.0[0] * v[0] + self.0[1] * v[1],
            self.0[2] * v[0] + self.0[3] * v[1],
        ]
    }

    /// Outer product |u⟩⟨v|.
    pub fn outer(u: [C64; 2], v: [C64; 2]) -> Self {
        Mat2([
            u[0] * v[0].conj(),
            u[0] * v[1].conj(),
            u[1] * v[0].conj(),
            u[1] * v[1].conj(),
        ])
    }

    /// Rank-one orthogonal projector onto the span of `v`.
    pub fn projector_onto(v: [C64; 2]) -> Self {
        let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        let u = [v[0] / n, v[1] / n];
        Self::outer(u, u)
    }

    /// A special-unitary matrix whose first column spans the range of the
    /// rank-one projector `p` (so that `p = V diag(1,0) V†` and `det V = 1`).
    pub fn su2_from_projector(p: &Mat2<C64>) -> Mat2<C64> {
        // Pick the larger column of p as the range vector.
        let c0 = [p.0[0], p.0[2]];
        let c1 = [p.0[1], p.0[3]];
        let v = if c0[0].norm_sqr() + c0[1].norm_sqr() >= c1[0].norm_sqr() + c1[1].norm_sqr() {
            c0
        } else {
            c1
        };
        let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        let v = [v[0] / n, v[1] / n];
        // Orthogonal complement, phase-fixed so the determinant is exactly one.
        let w = [-v[1].conj(), v[0].conj()];
        Mat2([v[0], w[0], v[1], w[1]])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::crat;

    #[test]
    fn mul_and_adjoint() {
        let x = Mat2::new(
            C64::new(0.0, 0.0),
            C64::new(1.0, 0.0),
            C64::new(1.0, 0.0),
            C64::new(0.0, 0.0),
        );
        let z = Mat2::diag(C64::new(1.0, 0.0), C64::new(-1.0, 0.0));
        let xz = x.mul(&z);
        assert_eq!(xz.0[1], C64::new(-1.0, 0.0));
        assert_eq!(xz.0[2], C64::new(1.0, 0.0));
        let y = Mat2::new(
            C64::new(0.0, 0.0),
            C64::new(0.0, -1.0),
            C64::new(0.0, 1.0),
            C64::new(0.0, 0.0),
        );
        assert_eq!(y.adjoint(), y);
        assert!((y.det() + C64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn exact_det_and_trace() {
        let m = Mat2::new(crat(1, 2, 0, 1), crat(0, 1, 1, 3), crat(2, 5, 0, 1), crat(1, 7, 0, 1));
        // det = 1/14 - (i/3)(2/5) = 1/14 - 2i/15
        assert_eq!(m.det(), crat(1, 14, -2, 15));
        assert_eq!(m.trace(), crat(9, 14, 0, 1));
    }

    #[test]
    fn projector_from_vector() {
        let p = Mat2::projector_onto([C64::new(3.0, 0.0), C64::new(0.0, 4.0)]);
        assert!(p.projector_residual() < 1e-14);
        let v = Mat2::su2_from_projector(&p);
        assert!(v.su2_residual() < 1e-14);
        let rebuilt = v
            .mul(&Mat2::diag(C64::new(1.0, 0.0), C64::new(0.0, 0.0)))
            .mul(&v.adjoint());
        assert!(rebuilt.sub(&p).frob() < 1e-14);
    }
}
