//! Matrix-valued Laurent polynomials in one variable.

use std::collections::BTreeMap;

use super::parity_of_exponents;
use super::Parity;
use crate::error::{Error, Result};
use crate::mat2::Mat2;
use crate::scalar::{C64, Scalar, TRUNC_TOL};

/// Sparse Laurent polynomial `F(t) = Σ_j C_j t^j` with 2×2 matrix coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct MatLaurent1<S: Scalar> {
    coeffs: BTreeMap<i64, Mat2<S>>,
    parity: Parity,
}

impl<S: Scalar> MatLaurent1<S> {
    /// Normalize a coefficient map: drop negligible entries, cache parity.
    pub fn new(coeffs: BTreeMap<i64, Mat2<S>>) -> Self {
        let coeffs: BTreeMap<i64, Mat2<S>> = coeffs
            .into_iter()
            .filter(|(_, m)| !matrix_negligible(m, TRUNC_TOL))
            .collect();
        let parity = parity_of_exponents(coeffs.keys().copied());
        Self { coeffs, parity }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Mat2<S>)>) -> Self {
        let mut map: BTreeMap<i64, Mat2<S>> = BTreeMap::new();
        for (e, m) in terms {
            match map.remove(&e) {
                Some(prev) => {
                    map.insert(e, prev.add(&m));
                }
                None => {
                    map.insert(e, m);
                }
            }
        }
        Self::new(map)
    }

    pub fn zero() -> Self {
        Self::new(BTreeMap::new())
    }

    pub fn constant(m: Mat2<S>) -> Self {
        Self::from_terms([(0, m)])
    }

    pub fn identity() -> Self {
        Self::constant(Mat2::identity())
    }

    /// The primitive matrix `E_P(t) = t·P + t⁻¹·(I−P)` for a projector `P`.
    pub fn primitive(p: &Mat2<S>) -> Self {
        let q = Mat2::identity().sub(p);
        Self::from_terms([(1, p.clone()), (-1, q)])
    }

    /// The inverse primitive `E_P(t⁻¹) = t⁻¹·P + t·(I−P)`.
    pub fn primitive_inverse(p: &Mat2<S>) -> Self {
        let q = Mat2::identity().sub(p);
        Self::from_terms([(-1, p.clone()), (1, q)])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Max |exponent| over stored keys; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.coeffs
            .keys()
            .map(|e| e.unsigned_abs())
            .max()
            .unwrap_or(0) as u32
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// Per the module convention: `(degree, parity)`.
    pub fn degree_parity(&self) -> (u32, Parity) {
        (self.degree(), self.parity)
    }

    pub fn coeff(&self, e: i64) -> Mat2<S> {
        self.coeffs.get(&e).cloned().unwrap_or_else(Mat2::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &Mat2<S>)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Largest exponent whose coefficient survives truncation, with the coefficient.
    pub fn leading(&self) -> Option<(i64, &Mat2<S>)> {
        self.coeffs
            .iter()
            .max_by_key(|(e, _)| e.unsigned_abs())
            .map(|(e, m)| (*e, m))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut map = self.coeffs.clone();
        for (e, m) in &o.coeffs {
            match map.remove(e) {
                Some(prev) => {
                    map.insert(*e, prev.add(m));
                }
                None => {
                    map.insert(*e, m.clone());
                }
            }
        }
        Self::new(map)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut map = self.coeffs.clone();
        for (e, m) in &o.coeffs {
            match map.remove(e) {
                Some(prev) => {
                    map.insert(*e, prev.sub(m));
                }
                None => {
                    map.insert(*e, m.neg());
                }
            }
        }
        Self::new(map)
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|(e, m)| (*e, m.scale(s)))
                .collect(),
        )
    }

    /// Coefficient-wise convolution.
    pub fn mul(&self, o: &Self) -> Self {
        let mut map: BTreeMap<i64, Mat2<S>> = BTreeMap::new();
        for (e1, m1) in &self.coeffs {
            for (e2, m2) in &o.coeffs {
                let e = e1 + e2;
                let prod = m1.mul(m2);
                match map.remove(&e) {
                    Some(prev) => {
                        map.insert(e, prev.add(&prod));
                    }
                    None => {
                        map.insert(e, prod);
                    }
                }
            }
        }
        Self::new(map)
    }

    /// Adjoint: conjugate-transpose coefficients with all exponents negated,
    /// so `adjoint(F)(t) = (F(t))†` for `t` on the unit circle.
    pub fn adjoint(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|(e, m)| (-e, m.adjoint()))
                .collect(),
        )
    }

    /// Drop every coefficient with |exponent| above `deg`, reporting the
    /// largest Frobenius norm removed.
    pub(crate) fn truncate_above(&self, deg: u32) -> (Self, f64) {
        let mut removed: f64 = 0.0;
        let mut map = BTreeMap::new();
        for (e, m) in &self.coeffs {
            if e.unsigned_abs() as u32 > deg {
                removed = removed.max(m.frob());
            } else {
                map.insert(*e, m.clone());
            }
        }
        (Self::new(map), removed)
    }

    /// Evaluate at a point of the unit circle.
    pub fn evaluate(&self, t: C64) -> Result<Mat2<C64>> {
        check_unit_modulus(t, 0)?;
        Ok(self.evaluate_unchecked(t))
    }

    pub(crate) fn evaluate_unchecked(&self, t: C64) -> Mat2<C64> {
        let mut acc = Mat2::<C64>::zero();
        for (e, m) in &self.coeffs {
            let p = powi(t, *e);
            acc = acc.add(&m.to_c64().scale(&p));
        }
        acc
    }

    pub fn to_c64(&self) -> MatLaurent1<C64> {
        MatLaurent1::new(
            self.coeffs
                .iter()
                .map(|(e, m)| (*e, m.to_c64()))
                .collect(),
        )
    }

    /// Greatest Frobenius norm among coefficient differences.
    pub fn max_coeff_dist(&self, o: &Self) -> f64 {
        let mut keys: Vec<i64> = self.coeffs.keys().copied().collect();
        keys.extend(o.coeffs.keys().copied());
        keys.sort_unstable();
        keys.dedup();
        keys.iter()
            .map(|e| self.coeff(*e).sub(&o.coeff(*e)).frob())
            .fold(0.0, f64::max)
    }
}

impl MatLaurent1<crate::scalar::CRat> {
    /// Evaluate at an exact root of unity (quarter-turn angles only).
    pub fn evaluate_exact(
        &self,
        t: crate::scalar::ExactTorusPoint,
    ) -> Result<Mat2<crate::scalar::CRat>> {
        let tv = t.value()?;
        let mut acc = Mat2::zero();
        for (e, m) in &self.coeffs {
            let p = powi_exact(&tv, *e);
            acc = acc.add(&m.scale(&p));
        }
        Ok(acc)
    }
}

pub(crate) fn matrix_negligible<S: Scalar>(m: &Mat2<S>, tol: f64) -> bool {
    match S::BACKEND {
        crate::scalar::Backend::Float => m.frob_sq() <= tol * tol,
        crate::scalar::Backend::Exact => m.is_zero(),
    }
}

pub(crate) fn check_unit_modulus(t: C64, index: usize) -> Result<()> {
    let modulus = t.norm();
    if (modulus - 1.0).abs() > 1e-12 {
        return Err(Error::NonUnitModulus { index, modulus });
    }
    Ok(())
}

pub(crate) fn powi(t: C64, e: i64) -> C64 {
    // powi on the unit circle; exact inverse is the conjugate.
    let base = if e >= 0 { t } else { t.conj() };
    let mut acc = C64::new(1.0, 0.0);
    for _ in 0..e.unsigned_abs() {
        acc *= base;
    }
    acc
}

pub(crate) fn powi_exact(t: &crate::scalar::CRat, e: i64) -> crate::scalar::CRat {
    let base = if e >= 0 { t.clone() } else { Scalar::conj(t) };
    let mut acc = <crate::scalar::CRat as Scalar>::one();
    for _ in 0..e.unsigned_abs() {
        acc = acc * base.clone();
    }
    acc
}
