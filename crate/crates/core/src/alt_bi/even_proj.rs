//! Factorization of even projection-valued Laurent polynomials.
//!
//! An even degree-2k polynomial `Π(b)` that is a rank-one orthogonal
//! projector at every point of the unit circle factors as
//! `Π(b) = U(b)·|ψ⟩⟨ψ|·U(b)†` with `U(b)` SU(2)-valued of degree k. The
//! leading coefficient is nilpotent rank-one, `Π_{2k} = |ψ⟩⟨φ|` with
//! `⟨ψ|φ⟩ = 0`; conjugating by the primitive of `S = |φ̂⟩⟨φ̂|` drops the
//! degree by at least two, and induction bottoms out at a constant projector.

use crate::error::{Error, Result};
use crate::laurent::{MatLaurent1, Parity};
use crate::mat2::Mat2;
use crate::scalar::{C64, TRUNC_TOL};

/// Factor `Π(b)` into `(U(b), ψ)` with `Π = U·|ψ⟩⟨ψ|·U†` and `deg U = deg Π / 2`.
pub fn decompose_even_projection(pi: &MatLaurent1<C64>) -> Result<(MatLaurent1<C64>, [C64; 2])> {
    if pi.parity() == Parity::Mixed || pi.parity() == Parity::Odd {
        return Err(Error::NotInClass("projection polynomial must be even".into()));
    }
    let mut current = pi.clone();
    let mut conjugators: Vec<Mat2<C64>> = Vec::new();
    let mut step = 0usize;
    while current.degree() > 0 {
        let deg = current.degree();
        let lead = current.coeff(deg as i64);
        // Π_{2k} = |ψ⟩⟨φ|: column space gives ψ, row space gives φ.
        let psi = dominant_column(&lead);
        let phi_raw = lead.adjoint().apply(psi);
        let n = (phi_raw[0].norm_sqr() + phi_raw[1].norm_sqr()).sqrt();
        if n <= TRUNC_TOL {
            return Err(Error::ProjectionDegreeStuck { step, degree: deg });
        }
        let phi = [phi_raw[0] / n, phi_raw[1] / n];
        let s = Mat2::outer(phi, phi);
        // Π̃ = E_S · Π · E_S†
        let e_s = MatLaurent1::primitive(&s);
        let next = e_s.mul(&current).mul(&e_s.adjoint());
        let (truncated, removed) = next.truncate_above(deg.saturating_sub(2));
        if removed > 1e-8 {
            return Err(Error::ProjectionDegreeStuck { step, degree: deg });
        }
        current = truncated;
        conjugators.push(s);
        step += 1;
    }
    // Base case: a constant rank-one projector.
    let k = current.coeff(0);
    let residual = k.projector_residual();
    if residual > 1e-8 {
        return Err(Error::ProjectorIdentityFailed { residual });
    }
    let psi = dominant_column(&k);
    // Π = E_{S₁}† · … · E_{S_m}† · K · E_{S_m} · … · E_{S₁},
    // so U = Π_i E_{S_i}(b⁻¹) in conjugation order.
    let mut u = MatLaurent1::identity();
    for s in &conjugators {
        u = u.mul(&MatLaurent1::primitive_inverse(s));
    }
    Ok((u, psi))
}

fn dominant_column(m: &Mat2<C64>) -> [C64; 2] {
    let c0 = [*m.at(0, 0), *m.at(1, 0)];
    let c1 = [*m.at(0, 1), *m.at(1, 1)];
    let v = if c0[0].norm_sqr() + c0[1].norm_sqr() >= c1[0].norm_sqr() + c1[1].norm_sqr() {
        c0
    } else {
        c1
    };
    let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    [v[0] / n, v[1] / n]
}

/// Rebuild `U·|ψ⟩⟨ψ|·U†` for residual checks.
pub fn rebuild_projection(u: &MatLaurent1<C64>, psi: [C64; 2]) -> MatLaurent1<C64> {
    let k = Mat2::projector_onto(psi);
    u.mul(&MatLaurent1::constant(k)).mul(&u.adjoint())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::Rng64;

    /// Forward-construct Π = E_{S₁}⁻¹…E_{S_k}⁻¹ · K · (…)† of degree ≤ 2k.
    pub(crate) fn forward_projection(rng: &mut Rng64, k: usize) -> MatLaurent1<C64> {
        let mut u = MatLaurent1::identity();
        for _ in 0..k {
            let s = rng.next_projector();
            u = u.mul(&MatLaurent1::primitive_inverse(&s));
        }
        let kproj = rng.next_projector();
        u.mul(&MatLaurent1::constant(kproj)).mul(&u.adjoint())
    }

    #[test]
    fn constant_base_case() {
        let pi = MatLaurent1::constant(Mat2::diag(C64::new(1.0, 0.0), C64::new(0.0, 0.0)));
        let (u, psi) = decompose_even_projection(&pi).unwrap();
        assert_eq!(u.degree(), 0);
        assert!((psi[0].norm() - 1.0).abs() < 1e-12 && psi[1].norm() < 1e-12);
        assert!(rebuild_projection(&u, psi).max_coeff_dist(&pi) < 1e-12);
    }

    #[test]
    fn single_conjugation_recovers() {
        let mut rng = Rng64::seeded(17);
        for _ in 0..20 {
            let s = rng.next_projector();
            let k = Mat2::diag(C64::new(1.0, 0.0), C64::new(0.0, 0.0));
            let e = MatLaurent1::primitive(&s);
            let pi = e.mul(&MatLaurent1::constant(k)).mul(&e.adjoint());
            let (u, psi) = decompose_even_projection(&pi).unwrap();
            let err = rebuild_projection(&u, psi).max_coeff_dist(&pi);
            assert!(err <= 1e-10, "residual {err}");
        }
    }

    #[test]
    fn nested_degree_four_construction() {
        let mut rng = Rng64::seeded(19);
        for _ in 0..20 {
            let pi = forward_projection(&mut rng, 4);
            let deg = pi.degree();
            assert!(deg <= 8 && deg % 2 == 0);
            let (u, psi) = decompose_even_projection(&pi).unwrap();
            assert_eq!(u.degree(), deg / 2);
            let err = rebuild_projection(&u, psi).max_coeff_dist(&pi);
            assert!(err <= 1e-8, "residual {err}");
        }
    }

    #[test]
    fn rejects_non_projection_inputs() {
        // even, self-adjoint, but not projection-valued
        let bad = MatLaurent1::from_terms([
            (2, Mat2::identity()),
            (-2, Mat2::identity()),
        ]);
        assert!(decompose_even_projection(&bad).is_err());
        let odd = MatLaurent1::from_terms([(1, Mat2::identity())]);
        assert!(matches!(
            decompose_even_projection(&odd),
            Err(Error::NotInClass(_))
        ));
    }
}
