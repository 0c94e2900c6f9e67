//! Univariate quantum signal processing: product synthesis, the three
//! defining properties, and the unique decomposition into primitive factors.
//!
//! A product `U₀·diag(t,t⁻¹)·U₁·…·diag(t,t⁻¹)·U_d` with `U_i ∈ SU(2)` is a
//! matrix-valued Laurent polynomial of degree ≤ d, SU(2)-valued on the unit
//! circle, with all exponents congruent to `d` mod 2. Conversely such a
//! polynomial factors uniquely as `E₀·E_{P₁}(t)·…·E_{P_d}(t)` with rank-one
//! projectors `P_i`; the recursion peels the top projector from the leading
//! coefficient via `P_d = C_d†C_d / Tr[C_d†C_d]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{MatLaurent1, Parity};
use crate::mat2::Mat2;
use crate::sample::{roots_of_unity, Rng64, CHECKER_SEED};
use crate::scalar::{C64, TRUNC_TOL};

/// Tolerance for accepting a matrix as special-unitary or as a projector.
pub const SU2_TOL: f64 = 1e-10;

/// Degree cap for the plain peeling recursion in double precision. The
/// recursion is exact in exact arithmetic but loses roughly a digit every
/// few peels in floats; beyond this cap results are not trustworthy.
pub const DECOMP_DEGREE_CAP: u32 = 64;

/// Variable label for assignment words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Var {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b")]
    B,
}

impl Var {
    pub fn as_char(self) -> char {
        match self {
            Var::A => 'a',
            Var::B => 'b',
        }
    }

    pub fn from_char(c: char) -> Option<Var> {
        match c {
            'a' => Some(Var::A),
            'b' => Some(Var::B),
            _ => None,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Var::A => 0,
            Var::B => 1,
        }
    }

    pub fn swapped(self) -> Var {
        match self {
            Var::A => Var::B,
            Var::B => Var::A,
        }
    }
}

/// Render an assignment word as a string like `"abba"`.
pub fn word_to_string(word: &[Var]) -> String {
    word.iter().map(|v| v.as_char()).collect()
}

/// Parse an assignment word from a string of `a`/`b` characters.
pub fn word_from_string(s: &str) -> Result<Vec<Var>> {
    s.chars()
        .map(|c| Var::from_char(c).ok_or_else(|| Error::MalformedInput(format!("bad variable letter {c:?}"))))
        .collect()
}

/// An ordered list of special-unitary 2×2 matrices, optionally carrying the
/// variable assigned to each signal slot between consecutive matrices.
#[derive(Debug, Clone)]
pub struct UnitarySeq {
    mats: Vec<Mat2<C64>>,
    assignment: Option<Vec<Var>>,
}

impl UnitarySeq {
    pub fn new(mats: Vec<Mat2<C64>>) -> Result<Self> {
        Self::with_assignment(mats, None)
    }

    pub fn with_assignment(mats: Vec<Mat2<C64>>, assignment: Option<Vec<Var>>) -> Result<Self> {
        if mats.is_empty() {
            return Err(Error::MalformedInput("a unitary sequence needs at least one matrix".into()));
        }
        for (i, m) in mats.iter().enumerate() {
            let r = m.su2_residual();
            if r > SU2_TOL {
                return Err(Error::NotSpecialUnitary { index: i, residual: r });
            }
        }
        if let Some(word) = &assignment {
            if word.len() != mats.len() - 1 {
                return Err(Error::WordLengthMismatch {
                    word_len: word.len(),
                    expected: mats.len() - 1,
                });
            }
        }
        Ok(Self { mats, assignment })
    }

    pub fn mats(&self) -> &[Mat2<C64>] {
        &self.mats
    }

    pub fn assignment(&self) -> Option<&[Var]> {
        self.assignment.as_deref()
    }

    /// Number of signal slots.
    pub fn slots(&self) -> usize {
        self.mats.len() - 1
    }

    /// Haar-random sequence with `d` signal slots.
    pub fn random(rng: &mut Rng64, d: usize) -> Self {
        let mats = (0..=d).map(|_| rng.next_su2()).collect();
        Self { mats, assignment: None }
    }

    /// Haar-random sequence carrying a given assignment word.
    pub fn random_with_word(rng: &mut Rng64, word: Vec<Var>) -> Self {
        let mats = (0..=word.len()).map(|_| rng.next_su2()).collect();
        Self { mats, assignment: Some(word) }
    }
}

/// A leading unitary plus an ordered list of rank-one projectors: the unique
/// primitive-factor decomposition `F = E₀·E_{P₁}(t)·…·E_{P_d}(t)`.
#[derive(Debug, Clone)]
pub struct PrimDecomp {
    pub e0: Mat2<C64>,
    pub projs: Vec<Mat2<C64>>,
}

impl PrimDecomp {
    pub fn new(e0: Mat2<C64>, projs: Vec<Mat2<C64>>) -> Result<Self> {
        let r = e0.su2_residual();
        if r > SU2_TOL {
            return Err(Error::NotSpecialUnitary { index: 0, residual: r });
        }
        for (i, p) in projs.iter().enumerate() {
            let r = p.projector_residual();
            if r > SU2_TOL {
                return Err(Error::NotProjector { index: i, residual: r });
            }
        }
        Ok(Self { e0, projs })
    }

    pub fn degree(&self) -> u32 {
        self.projs.len() as u32
    }

    /// Convert to an Eq.(1)-style unitary sequence. The conversion is not
    /// canonical: each primitive `E_P(t) = V·diag(t,t⁻¹)·V†` fixes `V` only up
    /// to a diagonal gauge, so different but equivalent sequences exist.
    pub fn to_unitary_seq(&self) -> Result<UnitarySeq> {
        if self.projs.is_empty() {
            return UnitarySeq::new(vec![self.e0.clone()]);
        }
        let vs: Vec<Mat2<C64>> = self.projs.iter().map(Mat2::su2_from_projector).collect();
        let mut mats = Vec::with_capacity(self.projs.len() + 1);
        mats.push(self.e0.mul(&vs[0]));
        for i in 0..vs.len() - 1 {
            mats.push(vs[i].adjoint().mul(&vs[i + 1]));
        }
        mats.push(vs[vs.len() - 1].adjoint());
        UnitarySeq::new(mats)
    }
}

/// Real phase angles for the structured Pauli-X-rotation product.
#[derive(Debug, Clone)]
pub struct PhaseSeq {
    pub phis: Vec<f64>,
}

impl PhaseSeq {
    pub fn new(phis: Vec<f64>) -> Result<Self> {
        if phis.is_empty() {
            return Err(Error::MalformedInput("a phase sequence needs at least one angle".into()));
        }
        if phis.iter().any(|p| !p.is_finite()) {
            return Err(Error::MalformedInput("phase angles must be finite".into()));
        }
        Ok(Self { phis })
    }
}

/// Build `U₀·diag(t,t⁻¹)·U₁·…·diag(t,t⁻¹)·U_d`.
pub fn build_product(seq: &UnitarySeq) -> MatLaurent1<C64> {
    let signal = MatLaurent1::from_terms([
        (1, Mat2::diag(C64::new(1.0, 0.0), C64::new(0.0, 0.0))),
        (-1, Mat2::diag(C64::new(0.0, 0.0), C64::new(1.0, 0.0))),
    ]);
    let mut acc = MatLaurent1::constant(seq.mats[0].clone());
    for u in &seq.mats[1..] {
        acc = acc.mul(&signal).mul(&MatLaurent1::constant(u.clone()));
    }
    acc
}

/// Certificate for the three defining properties of a degree-d product.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UnivariateReport {
    pub degree: u32,
    pub declared_degree: u32,
    pub degree_ok: bool,
    pub unitarity_residual: f64,
    pub det_residual: f64,
    pub su2_ok: bool,
    pub parity: Parity,
    pub parity_ok: bool,
    pub pass: bool,
}

impl UnivariateReport {
    /// Names of the failed properties, 1-based as usually numbered.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.degree_ok {
            out.push("property 1 (degree bound)");
        }
        if !self.su2_ok {
            out.push("property 2 (SU(2) on the unit circle)");
        }
        if !self.parity_ok {
            out.push("property 3 (parity)");
        }
        out
    }
}

/// Check the three properties of a univariate product of degree `d`:
/// degree ≤ d, SU(2)-valued on the circle, exponent parity equal to d mod 2.
///
/// Sampling uses `2·deg + 5` equispaced circle points plus 16 pseudo-random
/// ones; a degree-d Laurent identity is pinned by 2d+1 points, the extras
/// guard conditioning.
pub fn validate_univariate(f: &MatLaurent1<C64>, d: u32) -> UnivariateReport {
    let degree = f.degree();
    let degree_ok = degree <= d;
    let mut unitarity_residual: f64 = 0.0;
    let mut det_residual: f64 = 0.0;
    let mut points = roots_of_unity(2 * degree as usize + 5);
    let mut rng = Rng64::seeded(CHECKER_SEED);
    points.extend((0..16).map(|_| rng.next_torus()));
    for t in points {
        let m = f.evaluate_unchecked(t);
        unitarity_residual = unitarity_residual.max(m.unitarity_residual());
        det_residual = det_residual.max(m.det_residual());
    }
    let su2_ok = unitarity_residual <= SU2_TOL && det_residual <= SU2_TOL;
    let parity = f.parity();
    let parity_ok = parity == Parity::of_degree(d);
    UnivariateReport {
        degree,
        declared_degree: d,
        degree_ok,
        unitarity_residual,
        det_residual,
        su2_ok,
        parity,
        parity_ok,
        pass: degree_ok && su2_ok && parity_ok,
    }
}

/// Options for the peeling recursion.
#[derive(Debug, Clone, Copy)]
pub struct DecompOptions {
    /// Norm below which leftover high-degree coefficients are discarded when
    /// checking that the degree strictly decreased.
    pub trunc_tol: f64,
}

impl Default for DecompOptions {
    fn default() -> Self {
        Self { trunc_tol: TRUNC_TOL }
    }
}

/// Decompose an SU(2)-valued parity-pure Laurent polynomial into its unique
/// primitive factors.
pub fn haah_decompose(f: &MatLaurent1<C64>) -> Result<PrimDecomp> {
    haah_decompose_with(f, DecompOptions::default())
}

pub fn haah_decompose_with(f: &MatLaurent1<C64>, opts: DecompOptions) -> Result<PrimDecomp> {
    if f.parity() == Parity::Mixed {
        return Err(Error::MixedParity);
    }
    let degree = f.degree();
    if degree > DECOMP_DEGREE_CAP {
        return Err(Error::DegreeCap { degree, cap: DECOMP_DEGREE_CAP });
    }
    let mut current = f.clone();
    let mut projs_rev: Vec<Mat2<C64>> = Vec::with_capacity(degree as usize);
    for step in 0..degree {
        let m = current.degree();
        if m == 0 {
            break;
        }
        let lead = current.coeff(m as i64);
        // P_m = C_m†C_m / Tr[C_m†C_m]; the top coefficient of a product is
        // rank one, which makes this the last projector of the factorization.
        let gram = lead.adjoint().mul(&lead);
        let tr = gram.trace().re;
        if tr <= opts.trunc_tol {
            return Err(Error::LeadingTraceTooSmall { step: step as usize, trace: tr });
        }
        let p = gram.scale(&C64::new(1.0 / tr, 0.0));
        current = current.mul(&MatLaurent1::primitive_inverse(&p));
        let (truncated, removed) = current.truncate_above(m - 1);
        if removed > opts.trunc_tol {
            return Err(Error::DegreeNotDecreasing { step: step as usize, residual: removed });
        }
        current = truncated;
        projs_rev.push(p);
    }
    if current.degree() != 0 {
        return Err(Error::DegreeNotDecreasing {
            step: degree as usize,
            residual: f64::INFINITY,
        });
    }
    let e0 = current.coeff(0);
    projs_rev.reverse();
    PrimDecomp::new(e0, projs_rev)
}

/// Rebuild `E₀ · Π_i (t·P_i + t⁻¹(I−P_i))`.
pub fn rebuild(dec: &PrimDecomp) -> MatLaurent1<C64> {
    let mut acc = MatLaurent1::constant(dec.e0.clone());
    for p in &dec.projs {
        acc = acc.mul(&MatLaurent1::primitive(p));
    }
    acc
}

/// Symmetry report for the Pauli-X-rotation product.
///
/// Conjugating every factor by σ_X fixes the modulation rotations and maps
/// `diag(t,t⁻¹)` to `diag(t⁻¹,t)`, so the product obeys
/// `F(t⁻¹) = σ_X F(t) σ_X` as a polynomial identity. Entry-wise this says the
/// upper-left entry `P(t)` has real coefficients and the upper-right entry
/// `Q(t)` purely imaginary ones; those two coefficient residuals are reported.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct XRotationReport {
    pub degree: u32,
    pub p_real_residual: f64,
    pub q_imag_residual: f64,
    pub reflection_residual: f64,
    pub parity: Parity,
    pub parity_ok: bool,
    pub pass: bool,
}

/// Build `Π_k exp(i·φ_k·σ_X)`-modulated product and verify its entry symmetries.
pub fn build_xrotation_product(phases: &PhaseSeq) -> Result<(MatLaurent1<C64>, XRotationReport)> {
    let mats: Vec<Mat2<C64>> = phases
        .phis
        .iter()
        .map(|phi| {
            let c = C64::new(phi.cos(), 0.0);
            let s = C64::new(0.0, phi.sin());
            Mat2::new(c, s, s, c)
        })
        .collect();
    let d = mats.len() as u32 - 1;
    let seq = UnitarySeq::new(mats)?;
    let f = build_product(&seq);

    let mut p_real_residual: f64 = 0.0;
    let mut q_imag_residual: f64 = 0.0;
    let exps: Vec<i64> = f.iter().map(|(e, _)| *e).collect();
    for e in &exps {
        let m = f.coeff(*e);
        p_real_residual = p_real_residual.max(m.at(0, 0).im.abs());
        q_imag_residual = q_imag_residual.max(m.at(0, 1).re.abs());
    }
    // F(t⁻¹) = σ_X F(t) σ_X, checked coefficient-wise on all four entries.
    let mut reflection_residual: f64 = 0.0;
    for e in &exps {
        let m = f.coeff(-*e);
        let n = f.coeff(*e);
        let swapped = Mat2::new(
            *n.at(1, 1),
            *n.at(1, 0),
            *n.at(0, 1),
            *n.at(0, 0),
        );
        reflection_residual = reflection_residual.max(m.sub(&swapped).frob());
    }
    let parity = f.parity();
    let parity_ok = parity == Parity::of_degree(d);
    let tol = SU2_TOL;
    let pass = p_real_residual <= tol
        && q_imag_residual <= tol
        && reflection_residual <= tol
        && parity_ok;
    let report = XRotationReport {
        degree: f.degree(),
        p_real_residual,
        q_imag_residual,
        reflection_residual,
        parity,
        parity_ok,
        pass,
    };
    Ok((f, report))
}
