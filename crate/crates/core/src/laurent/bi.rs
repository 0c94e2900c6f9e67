//! Matrix-valued Laurent polynomials in two variables.

use std::collections::BTreeMap;

use super::uni::{check_unit_modulus, matrix_negligible, powi, powi_exact};
use super::{parity_of_exponents, MatLaurent1, Parity};
use crate::error::Result;
use crate::mat2::Mat2;
use crate::scalar::{C64, CRat, Scalar, TRUNC_TOL};

/// Sparse Laurent polynomial `F(a,b) = Σ_{j,k} M_{j,k} a^j b^k` with 2×2
/// matrix coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct MatLaurent2<S: Scalar> {
    coeffs: BTreeMap<(i64, i64), Mat2<S>>,
    parity_a: Parity,
    parity_b: Parity,
}

impl<S: Scalar> MatLaurent2<S> {
    pub fn new(coeffs: BTreeMap<(i64, i64), Mat2<S>>) -> Self {
        let coeffs: BTreeMap<(i64, i64), Mat2<S>> = coeffs
            .into_iter()
            .filter(|(_, m)| !matrix_negligible(m, TRUNC_TOL))
            .collect();
        let parity_a = parity_of_exponents(coeffs.keys().map(|(j, _)| *j));
        let parity_b = parity_of_exponents(coeffs.keys().map(|(_, k)| *k));
        Self { coeffs, parity_a, parity_b }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((i64, i64), Mat2<S>)>) -> Self {
        let mut map: BTreeMap<(i64, i64), Mat2<S>> = BTreeMap::new();
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
        Self::from_terms([((0, 0), m)])
    }

    pub fn identity() -> Self {
        Self::constant(Mat2::identity())
    }

    /// `diag(c, c⁻¹)` in the given variable (0 = a, 1 = b).
    pub fn signal(var: usize) -> Self {
        let up = Mat2::diag(S::one(), S::zero());
        let down = Mat2::diag(S::zero(), S::one());
        let (ep, em) = if var == 0 { ((1, 0), (-1, 0)) } else { ((0, 1), (0, -1)) };
        Self::from_terms([(ep, up), (em, down)])
    }

    /// Embed a univariate polynomial as a polynomial in variable `var`.
    pub fn from_univariate(f: &MatLaurent1<S>, var: usize) -> Self {
        Self::new(
            f.iter()
                .map(|(e, m)| {
                    let key = if var == 0 { (*e, 0) } else { (0, *e) };
                    (key, m.clone())
                })
                .collect(),
        )
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

    pub fn parity_a(&self) -> Parity {
        self.parity_a
    }

    pub fn parity_b(&self) -> Parity {
        self.parity_b
    }

    /// Per-variable `(degrees, parities)`.
    pub fn degree_parity(&self) -> ((u32, u32), (Parity, Parity)) {
        ((self.deg_a(), self.deg_b()), (self.parity_a, self.parity_b))
    }

    pub fn coeff(&self, j: i64, k: i64) -> Mat2<S> {
        self.coeffs.get(&(j, k)).cloned().unwrap_or_else(Mat2::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(i64, i64), &Mat2<S>)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
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
        Self::new(self.coeffs.iter().map(|(e, m)| (*e, m.scale(s))).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut map: BTreeMap<(i64, i64), Mat2<S>> = BTreeMap::new();
        for ((j1, k1), m1) in &self.coeffs {
            for ((j2, k2), m2) in &o.coeffs {
                let e = (j1 + j2, k1 + k2);
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

    /// Conjugate-transpose coefficients with both exponents negated.
    pub fn adjoint(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|((j, k), m)| ((-j, -k), m.adjoint()))
                .collect(),
        )
    }

    /// Swap the roles of the two variables.
    pub fn swap_vars(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|((j, k), m)| ((*k, *j), m.clone()))
                .collect(),
        )
    }

    /// Substitute the same variable for both: `F(t,t)`.
    pub fn substitute_diagonal(&self) -> MatLaurent1<S> {
        MatLaurent1::from_terms(self.coeffs.iter().map(|((j, k), m)| (j + k, m.clone())))
    }

    /// Collect the coefficient of `a^j` as a polynomial in `b`.
    pub fn coeff_of_a(&self, j: i64) -> MatLaurent1<S> {
        MatLaurent1::from_terms(
            self.coeffs
                .iter()
                .filter(|((ja, _), _)| *ja == j)
                .map(|((_, k), m)| (*k, m.clone())),
        )
    }

    /// Substitute `a = 1`, leaving a polynomial in `b`.
    pub fn substitute_a_one(&self) -> MatLaurent1<S> {
        MatLaurent1::from_terms(self.coeffs.iter().map(|((_, k), m)| (*k, m.clone())))
    }

    /// The four corner coefficients `M_{±deg_a, ±deg_b}` in the order
    /// `(++, +−, −+, −−)`.
    pub fn corners(&self) -> [Mat2<S>; 4] {
        let da = self.deg_a() as i64;
        let db = self.deg_b() as i64;
        [
            self.coeff(da, db),
            self.coeff(da, -db),
            self.coeff(-da, db),
            self.coeff(-da, -db),
        ]
    }

    pub fn evaluate(&self, a: C64, b: C64) -> Result<Mat2<C64>> {
        check_unit_modulus(a, 0)?;
        check_unit_modulus(b, 1)?;
        let mut acc = Mat2::<C64>::zero();
        for ((j, k), m) in &self.coeffs {
            let p = powi(a, *j) * powi(b, *k);
            acc = acc.add(&m.to_c64().scale(&p));
        }
        Ok(acc)
    }

    pub fn to_c64(&self) -> MatLaurent2<C64> {
        MatLaurent2::new(self.coeffs.iter().map(|(e, m)| (*e, m.to_c64())).collect())
    }

    pub fn max_coeff_dist(&self, o: &Self) -> f64 {
        let mut keys: Vec<(i64, i64)> = self.coeffs.keys().copied().collect();
        keys.extend(o.coeffs.keys().copied());
        keys.sort_unstable();
        keys.dedup();
        keys.iter()
            .map(|&(j, k)| self.coeff(j, k).sub(&o.coeff(j, k)).frob())
            .fold(0.0, f64::max)
    }
}

impl MatLaurent2<CRat> {
    /// Evaluate at an exact pair of roots of unity (quarter-turn angles only).
    pub fn evaluate_exact(
        &self,
        a: crate::scalar::ExactTorusPoint,
        b: crate::scalar::ExactTorusPoint,
    ) -> Result<Mat2<CRat>> {
        let av = a.value()?;
        let bv = b.value()?;
        let mut acc = Mat2::zero();
        for ((j, k), m) in &self.coeffs {
            let p = powi_exact(&av, *j) * powi_exact(&bv, *k);
            acc = acc.add(&m.scale(&p));
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::Rng64;

    #[test]
    fn signal_shapes() {
        let sa = MatLaurent2::<C64>::signal(0);
        assert_eq!(sa.degree_parity(), ((1, 0), (Parity::Odd, Parity::Even)));
        let sb = MatLaurent2::<C64>::signal(1);
        assert_eq!(sb.degree_parity(), ((0, 1), (Parity::Even, Parity::Odd)));
        let prod = sa.mul(&sb);
        // diag(ab, a⁻¹b⁻¹)
        assert!(prod.coeff(1, 1).sub(&Mat2::diag(C64::new(1.0, 0.0), C64::new(0.0, 0.0))).frob() < 1e-15);
        assert!(prod.coeff(-1, -1).sub(&Mat2::diag(C64::new(0.0, 0.0), C64::new(1.0, 0.0))).frob() < 1e-15);
        assert_eq!(prod.num_terms(), 2);
    }

    #[test]
    fn adjoint_involution_and_pointwise() {
        let mut rng = Rng64::seeded(5);
        let mut terms = Vec::new();
        for j in -2..=2i64 {
            for k in -2..=2i64 {
                terms.push((
                    (j, k),
                    Mat2::new(rng.next_c64(), rng.next_c64(), rng.next_c64(), rng.next_c64()),
                ));
            }
        }
        let f = MatLaurent2::from_terms(terms);
        assert!(f.adjoint().adjoint().max_coeff_dist(&f) < 1e-14);
        for k in 0..20 {
            let a = C64::from_polar(1.0, 0.31 * k as f64 + 0.05);
            let b = C64::from_polar(1.0, -0.17 * k as f64 + 1.2);
            let lhs = f.adjoint().evaluate(a, b).unwrap();
            let rhs = f.evaluate(a, b).unwrap().adjoint();
            assert!(lhs.sub(&rhs).frob() < 1e-12);
        }
    }

    #[test]
    fn diagonal_substitution_sums_exponents() {
        let f = MatLaurent2::<C64>::from_terms([
            ((2, -1), Mat2::identity()),
            ((-1, 2), Mat2::identity()),
        ]);
        let g = f.substitute_diagonal();
        // both exponents collapse onto 1, coefficients add
        assert_eq!(g.num_terms(), 1);
        assert!(g.coeff(1).sub(&Mat2::identity().scale(&C64::new(2.0, 0.0))).frob() < 1e-15);
    }

    #[test]
    fn corners_of_a_simple_product() {
        let sa = MatLaurent2::<C64>::signal(0);
        let sb = MatLaurent2::<C64>::signal(1);
        let f = sa.mul(&sb);
        let c = f.corners();
        // M_{1,1} = diag(1,0), M_{-1,-1} = diag(0,1), off corners zero
        assert!(c[0].sub(&Mat2::diag(C64::new(1.0, 0.0), C64::new(0.0, 0.0))).frob() < 1e-15);
        assert!(c[1].is_zero() && c[2].is_zero());
        assert!(c[3].sub(&Mat2::diag(C64::new(0.0, 0.0), C64::new(1.0, 0.0))).frob() < 1e-15);
    }
}
