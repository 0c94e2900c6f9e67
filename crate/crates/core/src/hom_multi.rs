//! Homogeneous multivariate quantum signal processing.
//!
//! The commuting bivariate case interleaves `diag(a,b)` with SU(2) gates; the
//! resulting polynomials are homogeneous of degree d, U(2)-valued on the
//! torus, with determinant `(ab)^d`, and conversely every such polynomial is
//! a product. The decomposition maps `a^j b^{d−j} ↦ t^{2j−d}`, which realizes
//! `F(a,b)/(ab)^{d/2}` as a parity-pure univariate polynomial without ever
//! introducing half-integer powers, and delegates to the univariate peeling.
//!
//! The non-commuting generalization tracks one coefficient matrix per length-d
//! word over the variable alphabet; substitution of operators contracts each
//! word with an ordered operator product. Only the necessary conditions are
//! checked (sampled over k ∈ {1,2,3}-dimensional substitutions) — whether they
//! are sufficient is open.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{MatLaurent1, MatLaurent2, Parity};
use crate::mat2::Mat2;
use crate::qsp_uni::{self, UnitarySeq, SU2_TOL};
use crate::sample::{roots_of_unity, Rng64, CHECKER_SEED};
use crate::scalar::{C64, TRUNC_TOL};

/// Largest dense word table for the non-commuting representation.
pub const MAX_WORDS: usize = 4096;

/// A homogeneous degree-d bivariate polynomial: coefficient `j` multiplies
/// `a^j b^{d−j}`. Homogeneity is structural.
#[derive(Debug, Clone, PartialEq)]
pub struct HomBivariate {
    d: u32,
    coeffs: BTreeMap<u32, Mat2<C64>>,
}

impl HomBivariate {
    pub fn new(d: u32, coeffs: BTreeMap<u32, Mat2<C64>>) -> Self {
        let coeffs = coeffs
            .into_iter()
            .filter(|(j, m)| *j <= d && m.frob() > TRUNC_TOL)
            .collect();
        Self { d, coeffs }
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn coeff(&self, j: u32) -> Mat2<C64> {
        self.coeffs.get(&j).cloned().unwrap_or_else(Mat2::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&u32, &Mat2<C64>)> {
        self.coeffs.iter()
    }

    pub fn evaluate(&self, a: C64, b: C64) -> Mat2<C64> {
        let mut acc = Mat2::zero();
        for (j, m) in &self.coeffs {
            let p = a.powi(*j as i32) * b.powi((self.d - j) as i32);
            acc = acc.add(&m.scale(&p));
        }
        acc
    }

    /// Exponent map `j ↦ 2j−d`: the univariate shadow of `F(a,b)/(ab)^{d/2}`.
    pub fn to_univariate(&self) -> MatLaurent1<C64> {
        MatLaurent1::from_terms(
            self.coeffs
                .iter()
                .map(|(j, m)| (2 * *j as i64 - self.d as i64, m.clone())),
        )
    }

    /// View as a general two-variable Laurent polynomial.
    pub fn to_matlaurent2(&self) -> MatLaurent2<C64> {
        MatLaurent2::new(
            self.coeffs
                .iter()
                .map(|(j, m)| ((*j as i64, (self.d - j) as i64), m.clone()))
                .collect(),
        )
    }

    /// Reinterpret a general polynomial, verifying structural homogeneity.
    pub fn from_matlaurent2(f: &MatLaurent2<C64>) -> Result<Self> {
        let mut d: Option<i64> = None;
        for ((j, k), _) in f.iter() {
            if *j < 0 || *k < 0 {
                return Err(Error::NotInClass(format!(
                    "negative exponent ({j},{k}) in a homogeneous polynomial"
                )));
            }
            let total = j + k;
            match d {
                None => d = Some(total),
                Some(t) if t != total => {
                    return Err(Error::NotInClass(format!(
                        "mixed total degrees {t} and {total}"
                    )))
                }
                _ => {}
            }
        }
        let d = d.unwrap_or(0) as u32;
        Ok(Self::new(
            d,
            f.iter().map(|((j, _), m)| (*j as u32, m.clone())).collect(),
        ))
    }

    pub fn max_coeff_dist(&self, o: &Self) -> f64 {
        let top = self.d.max(o.d);
        (0..=top)
            .map(|j| self.coeff(j).sub(&o.coeff(j)).frob())
            .fold(0.0, f64::max)
    }
}

/// Build `U₀·diag(a,b)·U₁·…·diag(a,b)·U_d`.
pub fn synthesize_homogeneous(seq: &UnitarySeq) -> HomBivariate {
    let sel_a = Mat2::diag(C64::new(1.0, 0.0), C64::new(0.0, 0.0));
    let sel_b = Mat2::diag(C64::new(0.0, 0.0), C64::new(1.0, 0.0));
    let mut coeffs: BTreeMap<u32, Mat2<C64>> = BTreeMap::new();
    coeffs.insert(0, seq.mats()[0].clone());
    let mut deg = 0u32;
    for u in &seq.mats()[1..] {
        let mut next: BTreeMap<u32, Mat2<C64>> = BTreeMap::new();
        for (j, m) in &coeffs {
            // multiply by a·diag(1,0) + b·diag(0,1), then by the next gate
            let with_a = m.mul(&sel_a).mul(u);
            let with_b = m.mul(&sel_b).mul(u);
            match next.remove(&(j + 1)) {
                Some(prev) => next.insert(j + 1, prev.add(&with_a)),
                None => next.insert(j + 1, with_a),
            };
            match next.remove(j) {
                Some(prev) => next.insert(*j, prev.add(&with_b)),
                None => next.insert(*j, with_b),
            };
        }
        coeffs = next;
        deg += 1;
    }
    HomBivariate::new(deg, coeffs)
}

/// Certificate for the homogeneous bivariate characterization.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HomReport {
    pub degree: u32,
    pub homogeneous_ok: bool,
    pub unitarity_residual: f64,
    pub unitary_ok: bool,
    /// Worst coefficient error of `det F(a,b) − (ab)^d` as a polynomial.
    pub det_identity_residual: f64,
    pub det_ok: bool,
    pub pass: bool,
}

/// Check conditions (i)–(iii): structural homogeneity, U(2) on a torus grid,
/// and `det F(a,b) = (ab)^d` as a polynomial identity.
pub fn check_hom_conditions(f: &HomBivariate) -> HomReport {
    let d = f.degree();
    // (ii): sampled unitarity. Grid sized (d+1)² once d ≥ 5, else 5×5,
    // plus 10 pseudo-random pairs.
    let side = (d as usize + 1).max(5);
    let grid = roots_of_unity(side);
    let mut unitarity_residual: f64 = 0.0;
    for a in &grid {
        for b in &grid {
            unitarity_residual = unitarity_residual.max(f.evaluate(*a, *b).unitarity_residual());
        }
    }
    let mut rng = Rng64::seeded(CHECKER_SEED);
    for _ in 0..10 {
        let (a, b) = (rng.next_torus(), rng.next_torus());
        unitarity_residual = unitarity_residual.max(f.evaluate(a, b).unitarity_residual());
    }
    // (iii): det as a homogeneous degree-2d polynomial, compared to (ab)^d.
    let mut det: BTreeMap<u32, C64> = BTreeMap::new();
    for (j1, m1) in f.iter() {
        for (j2, m2) in f.iter() {
            let term = *m1.at(0, 0) * *m2.at(1, 1) - *m1.at(0, 1) * *m2.at(1, 0);
            *det.entry(j1 + j2).or_insert(C64::new(0.0, 0.0)) += term;
        }
    }
    let mut det_identity_residual: f64 = 0.0;
    for s in 0..=(2 * d) {
        let got = det.get(&s).copied().unwrap_or(C64::new(0.0, 0.0));
        let expect = if s == d { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
        det_identity_residual = det_identity_residual.max((got - expect).norm());
    }
    let unitary_ok = unitarity_residual <= 1e-9;
    let det_ok = det_identity_residual <= 1e-10;
    HomReport {
        degree: d,
        homogeneous_ok: true,
        unitarity_residual,
        unitary_ok,
        det_identity_residual,
        det_ok,
        pass: unitary_ok && det_ok,
    }
}

/// Decompose a polynomial passing [`check_hom_conditions`] into a unitary
/// sequence reproducing it, via the univariate reduction.
pub fn decompose_homogeneous(f: &HomBivariate) -> Result<UnitarySeq> {
    let d = f.degree();
    let uni = f.to_univariate();
    let dec = qsp_uni::haah_decompose(&uni).map_err(|e| {
        Error::NotInClass(format!("univariate reduction failed to decompose: {e}"))
    })?;
    let mut projs = dec.projs;
    // The reduction can lose degree (e.g. F = (ab)^{d/2}·E₀); pad with
    // complementary projector pairs, whose homogeneous primitives multiply
    // to ab·I.
    if (d as usize) < projs.len() {
        return Err(Error::NotInClass(format!(
            "univariate degree {} exceeds homogeneous degree {d}",
            projs.len()
        )));
    }
    let missing = d as usize - projs.len();
    if missing % 2 != 0 {
        return Err(Error::NotInClass(
            "univariate degree does not match homogeneous parity".into(),
        ));
    }
    let k = Mat2::diag(C64::new(1.0, 0.0), C64::new(0.0, 0.0));
    let kc = Mat2::diag(C64::new(0.0, 0.0), C64::new(1.0, 0.0));
    for _ in 0..missing / 2 {
        projs.push(k.clone());
        projs.push(kc.clone());
    }
    // Each homogeneous primitive a·P + b·(I−P) equals V·diag(a,b)·V†.
    if projs.is_empty() {
        return UnitarySeq::new(vec![dec.e0]);
    }
    let vs: Vec<Mat2<C64>> = projs.iter().map(Mat2::su2_from_projector).collect();
    let mut mats = Vec::with_capacity(projs.len() + 1);
    mats.push(dec.e0.mul(&vs[0]));
    for i in 0..vs.len() - 1 {
        mats.push(vs[i].adjoint().mul(&vs[i + 1]));
    }
    mats.push(vs[vs.len() - 1].adjoint());
    UnitarySeq::new(mats)
}

// ---------------------------------------------------------------------------
// Non-commuting multivariate polynomials
// ---------------------------------------------------------------------------

/// A non-commutative homogeneous degree-d polynomial in n variables: one
/// n×n coefficient matrix per length-d word over `{0,…,n−1}`.
#[derive(Debug, Clone)]
pub struct NcHomPoly {
    n: usize,
    d: usize,
    coeffs: BTreeMap<Vec<u8>, DMatrix<C64>>,
}

impl NcHomPoly {
    pub fn new(n: usize, d: usize, coeffs: BTreeMap<Vec<u8>, DMatrix<C64>>) -> Result<Self> {
        if n == 0 || (n as f64).powi(d as i32) > MAX_WORDS as f64 {
            return Err(Error::WordTableTooLarge { n, d });
        }
        for (word, m) in &coeffs {
            if word.len() != d || word.iter().any(|&j| j as usize >= n) {
                return Err(Error::MalformedInput(format!("bad word {word:?} for n={n}, d={d}")));
            }
            if m.nrows() != n || m.ncols() != n {
                return Err(Error::DimensionMismatch { expected: n, found: m.nrows().max(m.ncols()) });
            }
        }
        let coeffs = coeffs
            .into_iter()
            .filter(|(_, m)| m.norm() > TRUNC_TOL)
            .collect();
        Ok(Self { n, d, coeffs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn coeff(&self, word: &[u8]) -> DMatrix<C64> {
        self.coeffs
            .get(word)
            .cloned()
            .unwrap_or_else(|| DMatrix::zeros(self.n, self.n))
    }

    pub fn words(&self) -> impl Iterator<Item = (&Vec<u8>, &DMatrix<C64>)> {
        self.coeffs.iter()
    }

    pub fn num_words(&self) -> usize {
        self.coeffs.len()
    }
}

fn check_special_unitary(m: &DMatrix<C64>, n: usize, index: usize) -> Result<()> {
    if m.nrows() != n || m.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: m.nrows().max(m.ncols()) });
    }
    let residual = (m.adjoint() * m - DMatrix::<C64>::identity(n, n)).norm();
    let det_res = (m.clone().lu().determinant() - C64::new(1.0, 0.0)).norm();
    let r = residual.max(det_res);
    if r > SU2_TOL {
        return Err(Error::NotSpecialUnitary { index, residual: r });
    }
    Ok(())
}

/// Expand `U₀·diag(x₁..x_n)·U₁·…·diag(x₁..x_n)·U_d` over words: the
/// coefficient of word `(j₁..j_d)` is `U₀E_{j₁}U₁E_{j₂}…E_{j_d}U_d` with
/// `E_j` the elementary diagonal selector.
pub fn nc_build_product(mats: &[DMatrix<C64>], n: usize) -> Result<NcHomPoly> {
    if mats.is_empty() {
        return Err(Error::MalformedInput("need at least one modulation matrix".into()));
    }
    let d = mats.len() - 1;
    if n == 0 || (n as f64).powi(d as i32) > MAX_WORDS as f64 {
        return Err(Error::WordTableTooLarge { n, d });
    }
    for (i, m) in mats.iter().enumerate() {
        check_special_unitary(m, n, i)?;
    }
    let mut level: Vec<(Vec<u8>, DMatrix<C64>)> = vec![(Vec::new(), mats[0].clone())];
    for u in &mats[1..] {
        let mut next = Vec::with_capacity(level.len() * n);
        for (word, m) in &level {
            for j in 0..n {
                // m · E_j keeps only column j; right-multiplying by U then
                // forms (column j of m) ⊗ (row j of U).
                let mut prod = DMatrix::<C64>::zeros(n, n);
                for r in 0..n {
                    for c in 0..n {
                        prod[(r, c)] = m[(r, j)] * u[(j, c)];
                    }
                }
                let mut w = word.clone();
                w.push(j as u8);
                next.push((w, prod));
            }
        }
        level = next;
    }
    NcHomPoly::new(n, d, level.into_iter().collect())
}

/// Substitute k×k operators: `Σ_j C_j ⊗ (X_{j₁}·…·X_{j_d})`.
pub fn nc_evaluate(p: &NcHomPoly, ops: &[DMatrix<C64>]) -> Result<DMatrix<C64>> {
    if ops.len() != p.n {
        return Err(Error::DimensionMismatch { expected: p.n, found: ops.len() });
    }
    let k = ops.first().map(|m| m.nrows()).unwrap_or(1);
    for m in ops {
        if m.nrows() != k || m.ncols() != k {
            return Err(Error::DimensionMismatch { expected: k, found: m.nrows().max(m.ncols()) });
        }
    }
    let mut acc = DMatrix::<C64>::zeros(p.n * k, p.n * k);
    for (word, c) in &p.coeffs {
        let mut prod = DMatrix::<C64>::identity(k, k);
        for &j in word {
            prod = prod * &ops[j as usize];
        }
        acc += c.kronecker(&prod);
    }
    Ok(acc)
}

/// Per-sample outcome of the necessary-condition checks.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NcSampleCheck {
    pub k: usize,
    pub unitary_inputs: bool,
    pub unitarity_residual: Option<f64>,
    pub det_relative_error: f64,
}

/// Certificate for the non-commuting necessary conditions.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NcReport {
    pub n: usize,
    pub degree: usize,
    pub homogeneous_ok: bool,
    pub samples: Vec<NcSampleCheck>,
    pub worst_unitarity: f64,
    pub worst_det_error: f64,
    pub pass: bool,
}

/// Check the necessary conditions on sample operator tuples: unitarity of the
/// substitution for unitary inputs, and `det F(X₁..X_n) = det(X₁·…·X_n)^d`
/// for arbitrary inputs. Sampling over finitely many tuples is evidence, not
/// proof: condition (ii) quantifies over every Hilbert space.
pub fn nc_check_conditions(p: &NcHomPoly, samples: &[Vec<DMatrix<C64>>]) -> Result<NcReport> {
    let mut checks = Vec::with_capacity(samples.len());
    let mut worst_unitarity: f64 = 0.0;
    let mut worst_det: f64 = 0.0;
    for tuple in samples {
        let k = tuple.first().map(|m| m.nrows()).unwrap_or(1);
        let value = nc_evaluate(p, tuple)?;
        let unitary_inputs = tuple.iter().all(|m| {
            (m.adjoint() * m - DMatrix::<C64>::identity(k, k)).norm() <= 1e-9
        });
        let unitarity_residual = if unitary_inputs {
            let dim = p.n * k;
            let r = (value.adjoint() * &value - DMatrix::<C64>::identity(dim, dim)).norm();
            worst_unitarity = worst_unitarity.max(r);
            Some(r)
        } else {
            None
        };
        let mut chain = DMatrix::<C64>::identity(k, k);
        for m in tuple {
            chain = chain * m;
        }
        let rhs = chain.lu().determinant().powi(p.d as i32);
        let lhs = value.lu().determinant();
        let det_relative_error = (lhs - rhs).norm() / rhs.norm().max(1.0);
        worst_det = worst_det.max(det_relative_error);
        checks.push(NcSampleCheck {
            k,
            unitary_inputs,
            unitarity_residual,
            det_relative_error,
        });
    }
    let pass = worst_unitarity <= 1e-9 && worst_det <= 1e-8;
    Ok(NcReport {
        n: p.n,
        degree: p.d,
        homogeneous_ok: true,
        samples: checks,
        worst_unitarity,
        worst_det_error: worst_det,
        pass,
    })
}

/// Haar-like random special-unitary k×k matrix (Gram–Schmidt of a Gaussian
/// matrix, determinant phase-fixed to one).
pub fn random_special_unitary(rng: &mut Rng64, k: usize) -> DMatrix<C64> {
    let mut q = random_unitary(rng, k);
    let det = q.clone().lu().determinant();
    let phase = det / det.norm();
    for r in 0..k {
        q[(r, 0)] /= phase;
    }
    q
}

/// Haar-like random unitary k×k matrix.
pub fn random_unitary(rng: &mut Rng64, k: usize) -> DMatrix<C64> {
    loop {
        let g = DMatrix::<C64>::from_fn(k, k, |_, _| rng.next_c64());
        if let Some(q) = gram_schmidt(&g) {
            return q;
        }
    }
}

/// Random complex matrix with standard-normal entries.
pub fn random_matrix(rng: &mut Rng64, k: usize) -> DMatrix<C64> {
    DMatrix::<C64>::from_fn(k, k, |_, _| rng.next_c64())
}

fn gram_schmidt(g: &DMatrix<C64>) -> Option<DMatrix<C64>> {
    let k = g.nrows();
    let mut q = g.clone();
    for c in 0..k {
        for prev in 0..c {
            let mut dot = C64::new(0.0, 0.0);
            for r in 0..k {
                dot += q[(r, prev)].conj() * q[(r, c)];
            }
            for r in 0..k {
                let sub = dot * q[(r, prev)];
                q[(r, c)] -= sub;
            }
        }
        let norm: f64 = (0..k).map(|r| q[(r, c)].norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            return None;
        }
        for r in 0..k {
            q[(r, c)] /= C64::new(norm, 0.0);
        }
    }
    Some(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_synthesis() {
        let seq = UnitarySeq::new(vec![Mat2::identity(), Mat2::identity()]).unwrap();
        let f = synthesize_homogeneous(&seq);
        assert_eq!(f.degree(), 1);
        assert!(f.coeff(1).sub(&Mat2::diag(C64::new(1.0, 0.0), C64::new(0.0, 0.0))).frob() < 1e-15);
        assert!(f.coeff(0).sub(&Mat2::diag(C64::new(0.0, 0.0), C64::new(1.0, 0.0))).frob() < 1e-15);
    }

    #[test]
    fn hadamard_pair_synthesis() {
        let s = 1.0 / 2.0f64.sqrt();
        let h = Mat2::new(
            C64::new(s, 0.0),
            C64::new(s, 0.0),
            C64::new(-s, 0.0),
            C64::new(s, 0.0),
        );
        let seq = UnitarySeq::new(vec![h.clone(), h.clone()]).unwrap();
        let f = synthesize_homogeneous(&seq);
        // expands to (1/2)[[a−b, a+b],[−(a+b), b−a]]; checked against the
        // direct chain product H·diag(a,b)·H at torus pairs
        for k in 0..10 {
            let a = C64::from_polar(1.0, 0.4 * k as f64 + 0.09);
            let b = C64::from_polar(1.0, -0.7 * k as f64 + 0.31);
            let got = f.evaluate(a, b);
            let expect = Mat2::new(
                (a - b) * 0.5,
                (a + b) * 0.5,
                -(a + b) * 0.5,
                (b - a) * 0.5,
            );
            assert!(got.sub(&expect).frob() < 1e-12);
            let chain = h.mul(&Mat2::diag(a, b)).mul(&h);
            assert!(got.sub(&chain).frob() < 1e-12);
        }
    }

    #[test]
    fn synthesis_matches_chain_evaluation() {
        let mut rng = Rng64::seeded(1234);
        let seq = UnitarySeq::random(&mut rng, 9);
        let f = synthesize_homogeneous(&seq);
        for k in 0..20 {
            let a = C64::from_polar(1.0, 0.17 * k as f64 + 0.03);
            let b = C64::from_polar(1.0, 0.61 * k as f64 + 0.47);
            let mut chain = seq.mats()[0].clone();
            let d = Mat2::diag(a, b);
            for u in &seq.mats()[1..] {
                chain = chain.mul(&d).mul(u);
            }
            assert!(f.evaluate(a, b).sub(&chain).frob() <= 1e-10);
        }
    }

    #[test]
    fn conditions_pass_on_products_fail_on_sums() {
        let diag = HomBivariate::new(1, BTreeMap::from([
            (1u32, Mat2::diag(C64::new(1.0, 0.0), C64::new(0.0, 0.0))),
            (0u32, Mat2::diag(C64::new(0.0, 0.0), C64::new(1.0, 0.0))),
        ]));
        let rep = check_hom_conditions(&diag);
        assert!(rep.pass);

        // diag(a,b) + diag(b,a): norm 2 at a=b=1, fails (ii)
        let bad = HomBivariate::new(1, BTreeMap::from([
            (1u32, Mat2::identity()),
            (0u32, Mat2::identity()),
        ]));
        let rep = check_hom_conditions(&bad);
        assert!(!rep.pass && !rep.unitary_ok);

        let mut rng = Rng64::seeded(2);
        let f = synthesize_homogeneous(&UnitarySeq::random(&mut rng, 7));
        let rep = check_hom_conditions(&f);
        assert!(rep.pass);
        assert!(rep.unitarity_residual <= 1e-9);
    }

    #[test]
    fn exponent_map_lands_on_even_grid() {
        let mut coeffs = BTreeMap::new();
        for j in 0..=2u32 {
            coeffs.insert(j, Mat2::identity());
        }
        let f = HomBivariate::new(2, coeffs);
        let uni = f.to_univariate();
        let exps: Vec<i64> = uni.iter().map(|(e, _)| *e).collect();
        assert_eq!(exps, vec![-2, 0, 2]);
    }

    #[test]
    fn decompose_round_trip() {
        let mut rng = Rng64::seeded(303);
        for d in [1usize, 2, 3, 6, 10] {
            let seq = UnitarySeq::random(&mut rng, d);
            let f = synthesize_homogeneous(&seq);
            let back = decompose_homogeneous(&f).unwrap();
            let g = synthesize_homogeneous(&back);
            let err = g.max_coeff_dist(&f);
            assert!(err <= 1e-8, "degree {d} round-trip error {err}");
        }
    }

    #[test]
    fn decompose_handles_degree_loss() {
        // F = ab·E₀ has univariate shadow of degree 0.
        let mut rng = Rng64::seeded(404);
        let e0 = rng.next_su2();
        let f = HomBivariate::new(2, BTreeMap::from([(1u32, e0.clone())]));
        assert!(check_hom_conditions(&f).pass);
        let seq = decompose_homogeneous(&f).unwrap();
        assert_eq!(seq.slots(), 2);
        let g = synthesize_homogeneous(&seq);
        assert!(g.max_coeff_dist(&f) <= 1e-10);
    }

    #[test]
    fn reduction_fidelity() {
        let mut rng = Rng64::seeded(505);
        for d in [1usize, 4, 7] {
            let f = synthesize_homogeneous(&UnitarySeq::random(&mut rng, d));
            assert!(check_hom_conditions(&f).pass);
            let uni = f.to_univariate();
            let rep = qsp_uni::validate_univariate(&uni, d as u32);
            assert!(rep.pass, "univariate shadow fails at degree {d}: {rep:?}");
        }
    }

    #[test]
    fn nc_trivial_words() {
        let id = DMatrix::<C64>::identity(2, 2);
        let p = nc_build_product(&[id.clone(), id.clone()], 2).unwrap();
        let e0 = p.coeff(&[0]);
        assert!((e0[(0, 0)] - C64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(e0[(1, 1)].norm() < 1e-15);
        let e1 = p.coeff(&[1]);
        assert!((e1[(1, 1)] - C64::new(1.0, 0.0)).norm() < 1e-15);

        let p2 = nc_build_product(&[id.clone(), id.clone(), id.clone()], 2).unwrap();
        assert!(p2.coeff(&[0, 1]).norm() < 1e-15);
        let w00 = p2.coeff(&[0, 0]);
        assert!((w00[(0, 0)] - C64::new(1.0, 0.0)).norm() < 1e-15);
        // selector products kill mixed words entirely
        assert_eq!(p2.num_words(), 2);
    }

    #[test]
    fn nc_scalar_substitution_matches_commuting_chain() {
        let mut rng = Rng64::seeded(606);
        let mats: Vec<DMatrix<C64>> = (0..4).map(|_| random_special_unitary(&mut rng, 3)).collect();
        let p = nc_build_product(&mats, 3).unwrap();
        let xs: Vec<C64> = (0..3).map(|_| rng.next_torus()).collect();
        let ops: Vec<DMatrix<C64>> = xs.iter().map(|x| DMatrix::from_element(1, 1, *x)).collect();
        let got = nc_evaluate(&p, &ops).unwrap();
        let mut chain = mats[0].clone();
        for u in &mats[1..] {
            let d = DMatrix::<C64>::from_diagonal(&nalgebra::DVector::from_vec(xs.clone()));
            chain = chain * d * u;
        }
        assert!((got - chain).norm() <= 1e-10);
    }

    #[test]
    fn nc_identity_substitution_collapses() {
        let mut rng = Rng64::seeded(707);
        let mats: Vec<DMatrix<C64>> = (0..3).map(|_| random_special_unitary(&mut rng, 2)).collect();
        let p = nc_build_product(&mats, 2).unwrap();
        let k = 2;
        let ops = vec![DMatrix::<C64>::identity(k, k), DMatrix::<C64>::identity(k, k)];
        let got = nc_evaluate(&p, &ops).unwrap();
        // Σ_j C_j ⊗ I_k with Σ_j C_j = U₀·…·U_d (diag(1..1) collapses)
        let mut sum = DMatrix::<C64>::zeros(2, 2);
        for (_, c) in p.words() {
            sum += c;
        }
        let expect = sum.kronecker(&DMatrix::<C64>::identity(k, k));
        assert!((got - expect).norm() <= 1e-12);
    }

    #[test]
    fn nc_substitution_is_unitary_for_unitary_inputs() {
        let mut rng = Rng64::seeded(808);
        let mats: Vec<DMatrix<C64>> = (0..3).map(|_| random_special_unitary(&mut rng, 2)).collect();
        let p = nc_build_product(&mats, 2).unwrap();
        let ops: Vec<DMatrix<C64>> = (0..2).map(|_| random_unitary(&mut rng, 2)).collect();
        let v = nc_evaluate(&p, &ops).unwrap();
        // oracle: the block chain (U₀⊗I)·V·(U₁⊗I)·V·(U₂⊗I) with V = Σ|i⟩⟨i|⊗X_i
        let k = 2;
        let mut big = DMatrix::<C64>::zeros(4, 4);
        for i in 0..2 {
            for r in 0..k {
                for c in 0..k {
                    big[(i * k + r, i * k + c)] = ops[i][(r, c)];
                }
            }
        }
        let id_k = DMatrix::<C64>::identity(k, k);
        let mut chain = mats[0].kronecker(&id_k);
        for u in &mats[1..] {
            chain = chain * &big * u.kronecker(&id_k);
        }
        assert!((v.clone() - chain).norm() <= 1e-10);
        let r = (v.adjoint() * &v - DMatrix::<C64>::identity(4, 4)).norm();
        assert!(r <= 1e-10);
    }

    #[test]
    fn nc_conditions_pass_and_detect_perturbation() {
        let mut rng = Rng64::seeded(909);
        let mats: Vec<DMatrix<C64>> = (0..3).map(|_| random_special_unitary(&mut rng, 2)).collect();
        let p = nc_build_product(&mats, 2).unwrap();
        let mut samples = Vec::new();
        for k in 1..=3usize {
            for _ in 0..10 {
                samples.push((0..2).map(|_| random_unitary(&mut rng, k)).collect::<Vec<_>>());
            }
            samples.push((0..2).map(|_| random_matrix(&mut rng, k)).collect::<Vec<_>>());
        }
        let rep = nc_check_conditions(&p, &samples).unwrap();
        assert!(rep.pass, "report {rep:?}");

        // perturb one coefficient by 0.1: unitarity must fail
        let mut coeffs: BTreeMap<Vec<u8>, DMatrix<C64>> =
            p.words().map(|(w, m)| (w.clone(), m.clone())).collect();
        let first = coeffs.keys().next().cloned().unwrap();
        coeffs.get_mut(&first).unwrap()[(0, 0)] += C64::new(0.1, 0.0);
        let bad = NcHomPoly::new(2, 2, coeffs).unwrap();
        let rep = nc_check_conditions(&bad, &samples).unwrap();
        assert!(!rep.pass);
        assert!(rep.worst_unitarity > 1e-3);
    }

    #[test]
    fn nc_word_table_cap() {
        assert!(matches!(
            NcHomPoly::new(4, 7, BTreeMap::new()),
            Err(Error::WordTableTooLarge { .. })
        ));
    }

    #[test]
    fn nc_commuting_diagonal_matches_bivariate() {
        let mut rng = Rng64::seeded(111);
        let seq = UnitarySeq::random(&mut rng, 3);
        let hom = synthesize_homogeneous(&seq);
        let mats: Vec<DMatrix<C64>> = seq
            .mats()
            .iter()
            .map(|m| {
                DMatrix::from_row_slice(2, 2, &[
                    *m.at(0, 0), *m.at(0, 1), *m.at(1, 0), *m.at(1, 1),
                ])
            })
            .collect();
        let p = nc_build_product(&mats, 2).unwrap();
        let a = rng.next_torus();
        let b = rng.next_torus();
        let ops = vec![
            DMatrix::from_element(1, 1, a),
            DMatrix::from_element(1, 1, b),
        ];
        let got = nc_evaluate(&p, &ops).unwrap();
        let expect = hom.evaluate(a, b);
        let mut diff: f64 = 0.0;
        for r in 0..2 {
            for c in 0..2 {
                diff = diff.max((got[(r, c)] - *expect.at(r, c)).norm());
            }
        }
        assert!(diff <= 1e-10);
    }

    #[test]
    fn nc_rank_one_coefficients_for_n2() {
        let mut rng = Rng64::seeded(222);
        let mats: Vec<DMatrix<C64>> = (0..4).map(|_| random_special_unitary(&mut rng, 2)).collect();
        let p = nc_build_product(&mats, 2).unwrap();
        assert!(p.num_words() <= 8);
        for (_, c) in p.words() {
            // rank ≤ 1 structurally: 2×2 determinant vanishes
            let det = c[(0, 0)] * c[(1, 1)] - c[(0, 1)] * c[(1, 0)];
            assert!(det.norm() <= 1e-12);
        }
    }
}
