//! The exact degree-(2,2) counterexample, certified in Gaussian-rational
//! arithmetic.
//!
//! All bracketed coefficients of the entry pair are rational up to one common
//! irrational factor `(6/25)·√(37/493)`. The polynomial is therefore stored
//! rescaled (the bracket contents, exactly) together with the scale carried
//! symbolically as the pair `(6/25, 37/493)`; every identity below is checked
//! with zero residual on the rescaled pair, with the scale entering only
//! through its rational square `36·37/(625·493)`.

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{assemble_su2_form, corner_products};
use crate::error::{Error, Result};
use crate::laurent::{MatLaurent2, ScalarLaurent2};
use crate::mat2::Mat2;
use crate::scalar::{crat, rat, CRat, Rat, Scalar, C64};

/// The exact counterexample: rescaled entry pair plus the symbolic scale.
#[derive(Debug, Clone)]
pub struct ExactCounterexample {
    /// Rescaled matrix polynomial (true polynomial divided by the scale).
    pub poly: MatLaurent2<CRat>,
    /// Rescaled upper-left entry.
    pub p: ScalarLaurent2<CRat>,
    /// Rescaled upper-right entry.
    pub q: ScalarLaurent2<CRat>,
    /// Rational part of the scale: 6/25.
    pub scale_rational: Rat,
    /// Radicand of the scale: 37/493.
    pub scale_radicand: Rat,
}

impl ExactCounterexample {
    /// The exact square of the scale.
    pub fn scale_sq(&self) -> Rat {
        self.scale_rational.clone() * self.scale_rational.clone() * self.scale_radicand.clone()
    }

    /// The scale as a double.
    pub fn scale_f64(&self) -> f64 {
        use num::ToPrimitive;
        self.scale_rational.to_f64().unwrap() * self.scale_radicand.to_f64().unwrap().sqrt()
    }

    /// The true (scaled) polynomial in floats.
    pub fn to_float(&self) -> MatLaurent2<C64> {
        let s = C64::new(self.scale_f64(), 0.0);
        self.poly.to_c64().scale(&s)
    }

    /// Corner products of the true polynomial, exactly: products of the
    /// rescaled corners carry the rational factor scale².
    pub fn corner_products_scaled(&self) -> [Mat2<CRat>; 2] {
        let s2 = CRat::new(self.scale_sq(), Rat::zero());
        let [p1, p2] = corner_products(&self.poly);
        [p1.scale(&s2), p2.scale(&s2)]
    }
}

/// Construct the counterexample from its printed coefficients.
pub fn counterexample_f22() -> ExactCounterexample {
    // P/scale = a²b² + a⁻²b⁻² − (122/37 + 8i/37)(b² + b⁻²)
    //           + (114/37 + 56i/37)(a⁻²b² + a²b⁻²)
    //           + (362/111 − 248i/111)(a² + a⁻²) + 692/111 − 719i/222
    let p = ScalarLaurent2::from_terms([
        ((2, 2), crat(1, 1, 0, 1)),
        ((-2, -2), crat(1, 1, 0, 1)),
        ((0, 2), crat(-122, 37, -8, 37)),
        ((0, -2), crat(-122, 37, -8, 37)),
        ((-2, 2), crat(114, 37, 56, 37)),
        ((2, -2), crat(114, 37, 56, 37)),
        ((2, 0), crat(362, 111, -248, 111)),
        ((-2, 0), crat(362, 111, -248, 111)),
        ((0, 0), crat(692, 111, -719, 222)),
    ]);
    // Q/scale = a²b² − a⁻²b⁻² − (122/37 + 66i/37)(b² − b⁻²)
    //           + (56/37 + 114i/37)(a⁻²b² − a²b⁻²)
    //           + (362/111 − 418i/111)(a² − a⁻²)
    let q = ScalarLaurent2::from_terms([
        ((2, 2), crat(1, 1, 0, 1)),
        ((-2, -2), crat(-1, 1, 0, 1)),
        ((0, 2), crat(-122, 37, -66, 37)),
        ((0, -2), crat(122, 37, 66, 37)),
        ((-2, 2), crat(56, 37, 114, 37)),
        ((2, -2), crat(-56, 37, -114, 37)),
        ((2, 0), crat(362, 111, -418, 111)),
        ((-2, 0), crat(-362, 111, 418, 111)),
    ]);
    let poly = assemble_su2_form(&p, &q);
    ExactCounterexample {
        poly,
        p,
        q,
        scale_rational: rat(6, 25),
        scale_radicand: rat(37, 493),
    }
}

/// Outcome of the exact identity checks; every field must hold exactly.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct F22Report {
    pub symmetry_exact: bool,
    pub unitarity_exact: bool,
    pub matrix_unitarity_exact: bool,
    pub leading_moduli_equal: bool,
    pub normalization_exact: bool,
    pub pass: bool,
}

/// Certify the printed counterexample: inversion symmetry of the entry pair,
/// the unitarity identity `P·P* − Q·Q* = scale⁻²`, the full matrix identity
/// `F·F† = scale⁻²·I`, equality of the two leading moduli, and the coefficient
/// normalization that pins the scale. Any failure is a typed error, guarding
/// against transcription drift.
pub fn verify_f22_identities() -> Result<F22Report> {
    verify_identities(&counterexample_f22())
}

pub fn verify_identities(ce: &ExactCounterexample) -> Result<F22Report> {
    // P(a⁻¹,b⁻¹) = P(a,b), Q(a⁻¹,b⁻¹) = −Q(a,b), exactly.
    let symmetry_exact = ce.p.invert_vars() == ce.p && ce.q.invert_vars() == ce.q.neg();
    if !symmetry_exact {
        return Err(Error::NotInClass("inversion symmetry failed exactly".into()));
    }

    // P·P* − Q·Q* = 1/scale² as a polynomial identity.
    let inv_scale_sq = {
        let s2 = ce.scale_sq();
        CRat::new(Rat::one() / s2, Rat::zero())
    };
    let lhs = ce
        .p
        .mul(&ce.p.conj_coeffs())
        .sub(&ce.q.mul(&ce.q.conj_coeffs()));
    let unitarity_exact = lhs == ScalarLaurent2::constant(inv_scale_sq.clone());
    if !unitarity_exact {
        return Err(Error::NotInClass("unitarity identity failed exactly".into()));
    }

    // F·adjoint(F) = scale⁻²·I coefficient-wise.
    let ff = ce.poly.mul(&ce.poly.adjoint());
    let expect = MatLaurent2::constant(Mat2::diag(inv_scale_sq.clone(), inv_scale_sq));
    let matrix_unitarity_exact = ff == expect;
    if !matrix_unitarity_exact {
        return Err(Error::NotInClass("matrix unitarity identity failed exactly".into()));
    }

    // |A|² = |F|² on the leading coefficients.
    let a = ce.p.coeff(2, 2);
    let f = ce.q.coeff(2, 2);
    let leading_moduli_equal = modulus_sq(&a) == modulus_sq(&f);
    if !leading_moduli_equal {
        return Err(Error::NotInClass("leading moduli differ".into()));
    }

    // scale²·(2|A|²+2|B|²+2|C|²+2|D|²+|E|²+2|F|²+2|G|²+2|H|²+2|I|²) = 1,
    // which certifies the printed scale value exactly.
    let two = rat(2, 1);
    let mut sum = Rat::zero();
    for (j, k) in [(2, 2), (0, 2), (-2, 2), (2, 0)] {
        sum += two.clone() * modulus_sq(&ce.p.coeff(j, k));
        sum += two.clone() * modulus_sq(&ce.q.coeff(j, k));
    }
    sum += modulus_sq(&ce.p.coeff(0, 0));
    let normalization_exact = ce.scale_sq() * sum == Rat::one();
    if !normalization_exact {
        return Err(Error::NotInClass("scale normalization failed exactly".into()));
    }

    Ok(F22Report {
        symmetry_exact,
        unitarity_exact,
        matrix_unitarity_exact,
        leading_moduli_equal,
        normalization_exact,
        pass: true,
    })
}

fn modulus_sq(z: &CRat) -> Rat {
    z.re.clone() * z.re.clone() + z.im.clone() * z.im.clone()
}
