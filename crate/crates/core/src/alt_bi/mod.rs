//! Inhomogeneous bivariate products with per-slot variable assignment.
//!
//! A word over `{a,b}` fixes which variable each signal slot carries in
//! `U₀·diag(c₁,c₁⁻¹)·U₁·…·diag(c_d,c_d⁻¹)·U_d`. Such products satisfy degree
//! bounds, SU(2)-valuedness on the torus and per-variable parity; those three
//! conditions are necessary but — unlike the univariate and homogeneous cases
//! — not sufficient. The corner-product test certifies non-decomposability
//! (both extreme-coefficient products nonzero), the degree-≤1 case decomposes
//! constructively through an even projection polynomial, and the exact
//! degree-(2,2) counterexample lives in [`f22`] with its rational family
//! solver in [`family`].

mod even_proj;
mod f22;
mod family;

pub use even_proj::decompose_even_projection;
pub use f22::{counterexample_f22, verify_f22_identities, verify_identities, ExactCounterexample, F22Report};
pub use family::{solve_family, CounterexampleFamily};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{MatLaurent1, MatLaurent2, Parity, ScalarLaurent2};
use crate::mat2::Mat2;
use crate::qsp_uni::{self, UnitarySeq, Var};
use crate::sample::{roots_of_unity, Rng64, CHECKER_SEED};
use crate::scalar::{C64, Scalar};

/// Verdict of a decomposability certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// A witnessing product was found.
    #[serde(rename = "decomposable")]
    Decomposable,
    /// Certified impossible (corner obstruction).
    #[serde(rename = "not-decomposable")]
    NotDecomposable,
    /// Exhaustive word search failed at search precision; not a proof.
    #[serde(rename = "not-decomposable-by-search")]
    NotDecomposableBySearch,
    #[serde(rename = "inconclusive")]
    Inconclusive,
}

/// Outcome of a decomposability test. A witness is present exactly for
/// [`Verdict::Decomposable`]; the two corner products are attached when the
/// obstruction fired.
#[derive(Debug, Clone)]
pub struct DecompositionCertificate {
    pub verdict: Verdict,
    pub witness: Option<UnitarySeq>,
    pub obstruction: Option<[Mat2<C64>; 2]>,
    /// Coefficient-wise rebuild error of the witness, when present.
    pub witness_residual: Option<f64>,
}

impl DecompositionCertificate {
    pub fn inconclusive() -> Self {
        Self { verdict: Verdict::Inconclusive, witness: None, obstruction: None, witness_residual: None }
    }
}

/// Build `U₀·diag(c₁,c₁⁻¹)·U₁·…·diag(c_d,c_d⁻¹)·U_d` with `c_i` read from the
/// sequence's assignment word.
pub fn build_alt_product(seq: &UnitarySeq) -> Result<MatLaurent2<C64>> {
    let word = seq.assignment().ok_or(Error::MissingWord)?;
    let mut acc = MatLaurent2::constant(seq.mats()[0].clone());
    for (u, c) in seq.mats()[1..].iter().zip(word) {
        acc = acc
            .mul(&MatLaurent2::signal(c.index()))
            .mul(&MatLaurent2::constant(u.clone()));
    }
    Ok(acc)
}

/// Certificate for the three necessary conditions of a `(d_a, d_b)` product.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BinecReport {
    pub deg_a: u32,
    pub deg_b: u32,
    pub declared_da: u32,
    pub declared_db: u32,
    pub degree_ok: bool,
    pub unitarity_residual: f64,
    pub det_residual: f64,
    pub su2_ok: bool,
    pub parity_a: Parity,
    pub parity_b: Parity,
    pub parity_ok: bool,
    pub pass: bool,
}

impl BinecReport {
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.degree_ok {
            out.push("property 1 (degree bounds)");
        }
        if !self.su2_ok {
            out.push("property 2 (SU(2) on the torus)");
        }
        if !self.parity_ok {
            out.push("property 3 (per-variable parity)");
        }
        out
    }
}

/// Check degree bounds, SU(2)-valuedness on sampled torus pairs, and both
/// parity relations `F(−a,b) = (−1)^{d_a}F(a,b)`, `F(a,−b) = (−1)^{d_b}F(a,b)`
/// (structurally, via exponent parity).
pub fn check_binec(f: &MatLaurent2<C64>, d_a: u32, d_b: u32) -> BinecReport {
    let deg_a = f.deg_a();
    let deg_b = f.deg_b();
    let degree_ok = deg_a <= d_a && deg_b <= d_b;
    let mut unitarity_residual: f64 = 0.0;
    let mut det_residual: f64 = 0.0;
    let grid_a = roots_of_unity((d_a as usize + 1).max(5));
    let grid_b = roots_of_unity((d_b as usize + 1).max(5));
    let mut pairs: Vec<(C64, C64)> = Vec::new();
    for a in &grid_a {
        for b in &grid_b {
            pairs.push((*a, *b));
        }
    }
    let mut rng = Rng64::seeded(CHECKER_SEED);
    for _ in 0..10 {
        pairs.push((rng.next_torus(), rng.next_torus()));
    }
    for (a, b) in pairs {
        let m = f.evaluate(a, b).expect("torus samples are unit modulus");
        unitarity_residual = unitarity_residual.max(m.unitarity_residual());
        det_residual = det_residual.max(m.det_residual());
    }
    let su2_ok = unitarity_residual <= 1e-9 && det_residual <= 1e-9;
    let parity_a = f.parity_a();
    let parity_b = f.parity_b();
    let parity_ok =
        parity_a == Parity::of_degree(d_a) && parity_b == Parity::of_degree(d_b);
    BinecReport {
        deg_a,
        deg_b,
        declared_da: d_a,
        declared_db: d_b,
        degree_ok,
        unitarity_residual,
        det_residual,
        su2_ok,
        parity_a,
        parity_b,
        parity_ok,
        pass: degree_ok && su2_ok && parity_ok,
    }
}

/// The two corner products `M_{d_a,d_b}·M_{d_a,−d_b}†` and
/// `M_{d_a,−d_b}·M_{−d_a,−d_b}†` of the extreme coefficients.
pub fn corner_products<S: Scalar>(f: &MatLaurent2<S>) -> [Mat2<S>; 2] {
    let [pp, pm, _mp, mm] = f.corners();
    [pp.mul(&pm.adjoint()), pm.mul(&mm.adjoint())]
}

fn corner_nonzero<S: Scalar>(m: &Mat2<S>) -> bool {
    match S::BACKEND {
        crate::scalar::Backend::Float => m.frob() > 1e-10,
        crate::scalar::Backend::Exact => !m.is_zero(),
    }
}

/// Decide the corner obstruction for any backend: `true` means both products
/// are nonzero, so no product decomposition exists.
pub fn corner_obstructed<S: Scalar>(f: &MatLaurent2<S>) -> (bool, [Mat2<S>; 2]) {
    let products = corner_products(f);
    let both = corner_nonzero(&products[0]) && corner_nonzero(&products[1]);
    (both, products)
}

/// Corner test on a float polynomial: a decomposable product must have at
/// least one vanishing corner product, so "both nonzero" certifies
/// non-decomposability and anything else stays inconclusive (this test is
/// only necessary, never sufficient).
pub fn corner_test(f: &MatLaurent2<C64>) -> DecompositionCertificate {
    let (obstructed, products) = corner_obstructed(f);
    if obstructed {
        DecompositionCertificate {
            verdict: Verdict::NotDecomposable,
            witness: None,
            obstruction: Some(products),
            witness_residual: None,
        }
    } else {
        DecompositionCertificate::inconclusive()
    }
}

/// Assemble `[[P, Q],[−Q*(a⁻¹,b⁻¹), P*(a⁻¹,b⁻¹)]]` from an entry pair
/// (`*` is coefficient-wise conjugation).
pub fn assemble_su2_form<S: Scalar>(
    p: &ScalarLaurent2<S>,
    q: &ScalarLaurent2<S>,
) -> MatLaurent2<S> {
    let p_star = p.conj_coeffs().invert_vars();
    let q_star = q.conj_coeffs().invert_vars();
    let mut keys: Vec<(i64, i64)> = p.iter().map(|(e, _)| *e).collect();
    keys.extend(q.iter().map(|(e, _)| *e));
    keys.extend(p_star.iter().map(|(e, _)| *e));
    keys.extend(q_star.iter().map(|(e, _)| *e));
    keys.sort_unstable();
    keys.dedup();
    MatLaurent2::new(
        keys.into_iter()
            .map(|(j, k)| {
                (
                    (j, k),
                    Mat2::new(
                        p.coeff(j, k),
                        q.coeff(j, k),
                        q_star.coeff(j, k).neg(),
                        p_star.coeff(j, k),
                    ),
                )
            })
            .collect(),
    )
}

/// Split a matrix polynomial into its `(P, Q)` entry pair (top row).
pub fn entry_pair<S: Scalar>(f: &MatLaurent2<S>) -> (ScalarLaurent2<S>, ScalarLaurent2<S>) {
    let p = ScalarLaurent2::new(
        f.iter()
            .map(|(e, m)| (*e, m.at(0, 0).clone()))
            .collect(),
    );
    let q = ScalarLaurent2::new(
        f.iter()
            .map(|(e, m)| (*e, m.at(0, 1).clone()))
            .collect(),
    );
    (p, q)
}

/// Decompose a polynomial with degree ≤ 1 in one variable into a product with
/// an assignment word.
///
/// For `deg_a F = 1`, write `F = M₁(b)·a + M₋₁(b)·a⁻¹`; then `E₀(b) = F(1,b)`
/// and `Π(b) = E₀(b)†·M₁(b)` is an even projection-valued polynomial, which
/// factors as `U(b)·K·U(b)†` with `K` constant. The product
/// `E₀(b)·U(b)·E_K(a)·U(b)†` is then flattened into signal slots by peeling
/// every b-dependent SU(2)-valued factor.
pub fn decompose_dega1(f: &MatLaurent2<C64>) -> Result<UnitarySeq> {
    let da = f.deg_a();
    let db = f.deg_b();
    if da > 1 {
        if db > 1 {
            return Err(Error::DegreeTooLargeInVar { var: 'a', degree: da });
        }
        // swap a↔b, decompose, swap the word back
        let swapped = decompose_dega1(&f.swap_vars())?;
        let word: Vec<Var> = swapped
            .assignment()
            .map(|w| w.iter().map(|v| v.swapped()).collect())
            .unwrap_or_default();
        return UnitarySeq::with_assignment(swapped.mats().to_vec(), Some(word));
    }

    if da == 0 {
        // purely univariate in b
        let g = f.substitute_a_one();
        let dec = qsp_uni::haah_decompose(&g)?;
        let mut out = FactorAccumulator::new(dec.e0.clone());
        for p in &dec.projs {
            out.push_primitive(Var::B, p);
        }
        return out.finish();
    }

    let m1 = f.coeff_of_a(1);
    let m_minus = f.coeff_of_a(-1);
    if !f.coeff_of_a(0).is_zero() {
        return Err(Error::NotInClass(
            "degree-1 input mixes a-parities; not a product class".into(),
        ));
    }
    let e0 = m1.add(&m_minus);
    let pi = e0.adjoint().mul(&m1);
    if pi.parity() != Parity::Even {
        return Err(Error::NotInClass("projection polynomial is not even".into()));
    }
    let herm = pi.sub(&pi.adjoint()).iter().map(|(_, m)| m.frob()).fold(0.0, f64::max);
    let idem = pi.mul(&pi).max_coeff_dist(&pi);
    let residual = herm.max(idem);
    if residual > 1e-9 {
        return Err(Error::ProjectorIdentityFailed { residual });
    }

    let (u, psi) = decompose_even_projection(&pi)?;
    let k_proj = Mat2::projector_onto(psi);

    // F = [E₀·U]·E_K(a)·U†
    let g = e0.mul(&u);
    let g_dec = qsp_uni::haah_decompose(&g)?;
    let u_dag_dec = qsp_uni::haah_decompose(&u.adjoint())?;

    let mut out = FactorAccumulator::new(g_dec.e0.clone());
    for p in &g_dec.projs {
        out.push_primitive(Var::B, p);
    }
    out.push_primitive(Var::A, &k_proj);
    out.push_constant(&u_dag_dec.e0);
    for p in &u_dag_dec.projs {
        out.push_primitive(Var::B, p);
    }
    out.finish()
}

/// Flattens an alternating list of constant SU(2) factors and primitive
/// factors `E_P(c) = V·diag(c,c⁻¹)·V†` into an Eq.-style unitary sequence.
struct FactorAccumulator {
    mats: Vec<Mat2<C64>>,
    word: Vec<Var>,
    pending: Mat2<C64>,
}

impl FactorAccumulator {
    fn new(leading: Mat2<C64>) -> Self {
        Self { mats: Vec::new(), word: Vec::new(), pending: leading }
    }

    fn push_constant(&mut self, c: &Mat2<C64>) {
        self.pending = self.pending.mul(c);
    }

    fn push_primitive(&mut self, var: Var, p: &Mat2<C64>) {
        let v = Mat2::su2_from_projector(p);
        self.mats.push(self.pending.mul(&v));
        self.word.push(var);
        self.pending = v.adjoint();
    }

    fn finish(mut self) -> Result<UnitarySeq> {
        self.mats.push(self.pending);
        UnitarySeq::with_assignment(self.mats, Some(self.word))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsp_uni::word_from_string;

    #[test]
    fn trivial_alt_products() {
        let seq = UnitarySeq::with_assignment(
            vec![Mat2::identity(), Mat2::identity()],
            Some(word_from_string("a").unwrap()),
        )
        .unwrap();
        let f = build_alt_product(&seq).unwrap();
        assert!(f.coeff(1, 0).sub(&Mat2::diag(C64::new(1.0, 0.0), C64::new(0.0, 0.0))).frob() < 1e-15);
        assert!(f.coeff(-1, 0).sub(&Mat2::diag(C64::new(0.0, 0.0), C64::new(1.0, 0.0))).frob() < 1e-15);

        let seq = UnitarySeq::with_assignment(
            vec![Mat2::identity(); 3],
            Some(word_from_string("ab").unwrap()),
        )
        .unwrap();
        let f = build_alt_product(&seq).unwrap();
        // diag(ab, a⁻¹b⁻¹)
        assert_eq!(f.num_terms(), 2);
        assert!(f.coeff(1, 1).sub(&Mat2::diag(C64::new(1.0, 0.0), C64::new(0.0, 0.0))).frob() < 1e-15);
    }

    #[test]
    fn alt_product_matches_chain() {
        let mut rng = Rng64::seeded(11);
        let word = word_from_string("abbaba").unwrap();
        let seq = UnitarySeq::random_with_word(&mut rng, word.clone());
        let f = build_alt_product(&seq).unwrap();
        assert!(f.deg_a() <= 3 && f.deg_b() <= 3);
        for k in 0..20 {
            let a = C64::from_polar(1.0, 0.21 * k as f64 + 0.02);
            let b = C64::from_polar(1.0, -0.43 * k as f64 + 0.77);
            let mut chain = seq.mats()[0].clone();
            for (u, c) in seq.mats()[1..].iter().zip(&word) {
                let z = match c {
                    Var::A => Mat2::diag(a, a.conj()),
                    Var::B => Mat2::diag(b, b.conj()),
                };
                chain = chain.mul(&z).mul(u);
            }
            let diff = f.evaluate(a, b).unwrap().sub(&chain).frob();
            assert!(diff <= 1e-10, "chain mismatch {diff}");
        }
    }

    #[test]
    fn word_length_is_enforced() {
        let err = UnitarySeq::with_assignment(
            vec![Mat2::identity(); 3],
            Some(word_from_string("abb").unwrap()),
        );
        assert!(matches!(err, Err(Error::WordLengthMismatch { word_len: 3, expected: 2 })));
    }

    #[test]
    fn binec_passes_products_and_fails_singular() {
        let mut rng = Rng64::seeded(21);
        let word = word_from_string("abab").unwrap();
        let seq = UnitarySeq::random_with_word(&mut rng, word);
        let f = build_alt_product(&seq).unwrap();
        let rep = check_binec(&f, 2, 2);
        assert!(rep.pass, "{rep:?}");

        // diag(a+b, 0): singular everywhere
        let bad = MatLaurent2::from_terms([
            ((1, 0), Mat2::diag(C64::new(1.0, 0.0), C64::new(0.0, 0.0))),
            ((0, 1), Mat2::diag(C64::new(1.0, 0.0), C64::new(0.0, 0.0))),
        ]);
        let rep = check_binec(&bad, 1, 1);
        assert!(!rep.pass && !rep.su2_ok);
        assert!(rep.failures().iter().any(|s| s.contains("property 2")));
    }

    #[test]
    fn built_products_never_trigger_the_obstruction() {
        let mut rng = Rng64::seeded(31);
        let letters = ["a", "b"];
        for trial in 0..200 {
            let len = 1 + (trial % 5);
            let word_str: String =
                (0..len).map(|_| letters[rng.next_u64_below(2) as usize]).collect();
            let word = word_from_string(&word_str).unwrap();
            let seq = UnitarySeq::random_with_word(&mut rng, word);
            let f = build_alt_product(&seq).unwrap();
            assert!(check_binec(&f, f.deg_a(), f.deg_b()).pass);
            let cert = corner_test(&f);
            assert_eq!(cert.verdict, Verdict::Inconclusive, "word {word_str} trial {trial}");
        }
    }

    #[test]
    fn su2_form_assembly_round_trips() {
        let mut rng = Rng64::seeded(41);
        let word = word_from_string("ab").unwrap();
        let seq = UnitarySeq::random_with_word(&mut rng, word);
        let f = build_alt_product(&seq).unwrap();
        let (p, q) = entry_pair(&f);
        let g = assemble_su2_form(&p, &q);
        assert!(g.max_coeff_dist(&f) <= 1e-12);
    }

    #[test]
    fn dega1_trivial_and_conjugated() {
        // F = diag(a, a⁻¹)
        let f = MatLaurent2::from_terms([
            ((1, 0), Mat2::diag(C64::new(1.0, 0.0), C64::new(0.0, 0.0))),
            ((-1, 0), Mat2::diag(C64::new(0.0, 0.0), C64::new(1.0, 0.0))),
        ]);
        let seq = decompose_dega1(&f).unwrap();
        assert_eq!(seq.assignment().unwrap(), &[Var::A]);
        let back = build_alt_product(&seq).unwrap();
        assert!(back.max_coeff_dist(&f) <= 1e-10);

        // F = E₀·E_{UKU†}(a) for constant U
        let mut rng = Rng64::seeded(51);
        let e0 = rng.next_su2();
        let u = rng.next_su2();
        let k = Mat2::diag(C64::new(1.0, 0.0), C64::new(0.0, 0.0));
        let p = u.mul(&k).mul(&u.adjoint());
        let prim = MatLaurent1::primitive(&p);
        let f = MatLaurent2::from_univariate(&prim, 0)
            .mul(&MatLaurent2::constant(Mat2::identity()));
        let f = MatLaurent2::constant(e0).mul(&f);
        let seq = decompose_dega1(&f).unwrap();
        assert_eq!(seq.assignment().unwrap(), &[Var::A]);
        let back = build_alt_product(&seq).unwrap();
        assert!(back.max_coeff_dist(&f) <= 1e-9);
    }

    #[test]
    fn dega1_round_trip_word_babb() {
        let mut rng = Rng64::seeded(61);
        let word = word_from_string("babb").unwrap();
        let seq = UnitarySeq::random_with_word(&mut rng, word);
        let f = build_alt_product(&seq).unwrap();
        assert_eq!(f.deg_a(), 1);
        let dec = decompose_dega1(&f).unwrap();
        let back = build_alt_product(&dec).unwrap();
        let err = back.max_coeff_dist(&f);
        assert!(err <= 1e-8, "rebuild error {err}");
    }

    #[test]
    fn dega1_swaps_variables_when_needed() {
        let mut rng = Rng64::seeded(71);
        let word = word_from_string("aba").unwrap();
        let seq = UnitarySeq::random_with_word(&mut rng, word);
        let f = build_alt_product(&seq).unwrap();
        assert_eq!(f.deg_b(), 1);
        let dec = decompose_dega1(&f).unwrap();
        let back = build_alt_product(&dec).unwrap();
        assert!(back.max_coeff_dist(&f) <= 1e-8);
        let nb = dec.assignment().unwrap().iter().filter(|v| **v == Var::B).count();
        assert_eq!(nb, 1, "exactly one b slot expected");
    }

    #[test]
    fn dega1_rejects_doubly_large_degrees() {
        let ce = counterexample_f22();
        let f = ce.to_float();
        assert!(matches!(
            decompose_dega1(&f),
            Err(Error::DegreeTooLargeInVar { .. })
        ));
    }
}
