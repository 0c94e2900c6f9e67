//! Scalar-valued Laurent polynomials in two variables.

use std::collections::BTreeMap;

use super::uni::{check_unit_modulus, powi};
use crate::error::Result;
use crate::scalar::{C64, Scalar, TRUNC_TOL};

/// Sparse Laurent polynomial `P(a,b) = Σ_{j,k} p_{j,k} a^j b^k` with scalar
/// coefficients; the entry type of the 2×2 matrix polynomials.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarLaurent2<S: Scalar> {
    coeffs: BTreeMap<(i64, i64), S>,
}

impl<S: Scalar> ScalarLaurent2<S> {
    pub fn new(coeffs: BTreeMap<(i64, i64), S>) -> Self {
        let coeffs = coeffs
            .into_iter()
            .filter(|(_, c)| !c.negligible(TRUNC_TOL))
            .collect();
        Self { coeffs }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((i64, i64), S)>) -> Self {
        let mut map: BTreeMap<(i64, i64), S> = BTreeMap::new();
        for (e, c) in terms {
            match map.remove(&e) {
                Some(prev) => {
                    map.insert(e, prev.add(&c));
                }
                None => {
                    map.insert(e, c);
                }
            }
        }
        Self::new(map)
    }

    pub fn zero() -> Self {
        Self::new(BTreeMap::new())
    }

    pub fn constant(c: S) -> Self {
        Self::from_terms([((0, 0), c)])
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg_a(&self) -> u32 {
        self.coeffs.keys().map(|(j, _)| j.unsigned_abs()).max().unwrap_or(0) as u32
    }

    pub fn deg_b(&self) -> u32 {
        self.coeffs.keys().map(|(_, k)| k.unsigned_abs()).max().unwrap_or(0) as u32
    }

    pub fn coeff(&self, j: i64, k: i64) -> S {
        self.coeffs.get(&(j, k)).cloned().unwrap_or_else(S::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(i64, i64), &S)> {
        self.coeffs.iter()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut map = self.coeffs.clone();
        for (e, c) in &o.coeffs {
            match map.remove(e) {
                Some(prev) => {
                    map.insert(*e, prev.add(c));
                }
                None => {
                    map.insert(*e, c.clone());
                }
            }
        }
        Self::new(map)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut map = self.coeffs.clone();
        for (e, c) in &o.coeffs {
            match map.remove(e) {
                Some(prev) => {
                    map.insert(*e, prev.sub(c));
                }
                None => {
                    map.insert(*e, c.neg());
                }
            }
        }
        Self::new(map)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut map: BTreeMap<(i64, i64), S> = BTreeMap::new();
        for ((j1, k1), c1) in &self.coeffs {
            for ((j2, k2), c2) in &o.coeffs {
                let e = (j1 + j2, k1 + k2);
                let prod = c1.mul(c2);
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

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|(e, c)| (*e, c.neg())).collect())
    }

    /// Coefficient-wise conjugation, exponents unchanged.
    pub fn conj_coeffs(&self) -> Self {
        Self::new(self.coeffs.iter().map(|(e, c)| (*e, c.conj())).collect())
    }

    /// Substitute `(a,b) → (a⁻¹,b⁻¹)`.
    pub fn invert_vars(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|((j, k), c)| ((-j, -k), c.clone()))
                .collect(),
        )
    }

    pub fn evaluate(&self, a: C64, b: C64) -> Result<C64> {
        check_unit_modulus(a, 0)?;
        check_unit_modulus(b, 1)?;
        Ok(self.evaluate_unchecked(a, b))
    }

    pub(crate) fn evaluate_unchecked(&self, a: C64, b: C64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for ((j, k), c) in &self.coeffs {
            acc += c.to_c64() * powi(a, *j) * powi(b, *k);
        }
        acc
    }

    pub fn max_coeff_dist(&self, o: &Self) -> f64 {
        let mut keys: Vec<(i64, i64)> = self.coeffs.keys().copied().collect();
        keys.extend(o.coeffs.keys().copied());
        keys.sort_unstable();
        keys.dedup();
        keys.iter()
            .map(|&(j, k)| {
                self.coeff(j, k).sub(&o.coeff(j, k)).abs_sq().sqrt()
            })
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_inversion() {
        let p = ScalarLaurent2::<C64>::from_terms([
            ((1, 0), C64::new(2.0, 0.0)),
            ((0, -1), C64::new(0.0, 1.0)),
        ]);
        let q = p.invert_vars();
        assert_eq!(q.coeff(-1, 0), C64::new(2.0, 0.0));
        assert_eq!(q.coeff(0, 1), C64::new(0.0, 1.0));
        let prod = p.mul(&p);
        assert_eq!(prod.coeff(2, 0), C64::new(4.0, 0.0));
        assert_eq!(prod.coeff(1, -1), C64::new(0.0, 4.0));
        assert_eq!(prod.coeff(0, -2), C64::new(-1.0, 0.0));
    }
}
