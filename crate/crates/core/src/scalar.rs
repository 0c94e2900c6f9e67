//! Complex coefficient backends: double precision and exact Gaussian rationals.
//!
//! Every polynomial in this crate is generic over a [`Scalar`]. The float
//! backend (`C64`) is used for synthesis and search; the exact backend
//! (`CRat`, complex numbers with arbitrary-precision rational parts) is used
//! for certification, where arithmetic must be lossless.

use num::complex::Complex64;
use num::rational::BigRational;
use num::{BigInt, Complex, One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational.
pub type Rat = BigRational;
/// Gaussian rational: complex number with rational real and imaginary parts.
pub type CRat = Complex<Rat>;
/// Double-precision complex number.
pub type C64 = Complex64;

/// Tolerance below which float coefficients are dropped during normalization.
pub const TRUNC_TOL: f64 = 1e-10;

/// Coefficient backend tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Backend {
    #[serde(rename = "float")]
    Float,
    #[serde(rename = "exact")]
    Exact,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Float => "float",
            Backend::Exact => "exact",
        }
    }
}

/// Complex scalar usable as a polynomial coefficient.
///
/// The exact backend must implement every operation losslessly; the float
/// backend participates in tolerance-based truncation via [`Scalar::negligible`].
pub trait Scalar: Clone + PartialEq + std::fmt::Debug + Send + Sync + 'static {
    const BACKEND: Backend;

    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// |z|² as a double (approximate for the exact backend; used only for reporting).
    fn abs_sq(&self) -> f64;
    fn to_c64(&self) -> C64;
    fn from_c64(z: C64) -> Self;

    /// Whether a coefficient should be dropped when normalizing at `tol`.
    /// Exact coefficients are dropped only when they are exactly zero.
    fn negligible(&self, tol: f64) -> bool {
        match Self::BACKEND {
            Backend::Float => self.abs_sq() <= tol * tol,
            Backend::Exact => self.is_zero(),
        }
    }
}

impl Scalar for C64 {
    const BACKEND: Backend = Backend::Float;

    fn zero() -> Self {
        C64::new(0.0, 0.0)
    }
    fn one() -> Self {
        C64::new(1.0, 0.0)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        C64::new(self.re, -self.im)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn abs_sq(&self) -> f64 {
        self.norm_sqr()
    }
    fn to_c64(&self) -> C64 {
        *self
    }
    fn from_c64(z: C64) -> Self {
        z
    }
}

impl Scalar for CRat {
    const BACKEND: Backend = Backend::Exact;

    fn zero() -> Self {
        Complex::new(Rat::zero(), Rat::zero())
    }
    fn one() -> Self {
        Complex::new(Rat::one(), Rat::zero())
    }
    fn add(&self, rhs: &Self) -> Self {
        self.clone() + rhs.clone()
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.clone() - rhs.clone()
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.clone() * rhs.clone()
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn abs_sq(&self) -> f64 {
        let re = self.re.to_f64().unwrap_or(f64::NAN);
        let im = self.im.to_f64().unwrap_or(f64::NAN);
        re * re + im * im
    }
    fn to_c64(&self) -> C64 {
        C64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
    fn from_c64(z: C64) -> Self {
        Complex::new(
            Rat::from_float(z.re).unwrap_or_else(Rat::zero),
            Rat::from_float(z.im).unwrap_or_else(Rat::zero),
        )
    }
}

/// Build a rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Build a Gaussian rational from integer pairs (re_num/re_den, im_num/im_den).
pub fn crat(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> CRat {
    Complex::new(rat(re_num, re_den), rat(im_num, im_den))
}

/// An exact point on the unit circle: the angle `2π·num/den`.
///
/// Only quarter-turn angles (den dividing 4 after reduction) have Gaussian-
/// rational coordinates; [`ExactTorusPoint::value`] reports those exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactTorusPoint {
    pub num: i64,
    pub den: i64,
}

impl ExactTorusPoint {
    pub fn new(num: i64, den: i64) -> Self {
        Self { num, den }
    }

    /// The exact value, when representable as a Gaussian rational.
    pub fn value(&self) -> crate::error::Result<CRat> {
        if self.den == 0 {
            return Err(crate::error::Error::NonRepresentableAngle {
                num: self.num,
                den: self.den,
            });
        }
        // Reduce num/den and demand a quarter-turn multiple.
        let g = gcd(self.num.unsigned_abs(), self.den.unsigned_abs());
        let den = self.den / g as i64;
        if 4 % den != 0 {
            return Err(crate::error::Error::NonRepresentableAngle {
                num: self.num,
                den: self.den,
            });
        }
        let num = self.num / g as i64;
        let quarters = (num * (4 / den)).rem_euclid(4);
        Ok(match quarters {
            0 => crat(1, 1, 0, 1),
            1 => crat(0, 1, 1, 1),
            2 => crat(-1, 1, 0, 1),
            _ => crat(0, 1, -1, 1),
        })
    }

    pub fn to_c64(&self) -> C64 {
        let theta = 2.0 * std::f64::consts::PI * self.num as f64 / self.den as f64;
        C64::new(theta.cos(), theta.sin())
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.max(1)
}

/// Parse a rational from a `p/q` (or plain integer) string.
pub fn parse_rat(s: &str) -> Option<Rat> {
    use std::str::FromStr;
    Rat::from_str(s.trim()).ok()
}

/// Render a rational in `p/q` form (plain integer when the denominator is 1).
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_arithmetic_is_lossless() {
        let a = crat(1, 3, -2, 7);
        let b = crat(5, 11, 4, 9);
        let prod = a.mul(&b);
        // (1/3 - 2i/7)(5/11 + 4i/9) = (5/33 + 8/63) + i(4/27 - 10/77)
        let expect = CRat::new(
            rat(5, 33) + rat(8, 63),
            rat(4, 27) - rat(10, 77),
        );
        assert_eq!(prod, expect);
    }

    #[test]
    fn quarter_turn_points_are_exact() {
        assert_eq!(ExactTorusPoint::new(0, 1).value().unwrap(), crat(1, 1, 0, 1));
        assert_eq!(ExactTorusPoint::new(1, 4).value().unwrap(), crat(0, 1, 1, 1));
        assert_eq!(ExactTorusPoint::new(1, 2).value().unwrap(), crat(-1, 1, 0, 1));
        assert_eq!(ExactTorusPoint::new(3, 4).value().unwrap(), crat(0, 1, -1, 1));
        assert_eq!(ExactTorusPoint::new(2, 8).value().unwrap(), crat(0, 1, 1, 1));
        assert!(ExactTorusPoint::new(1, 3).value().is_err());
    }

    #[test]
    fn rat_round_trip() {
        let r = rat(-719, 222);
        assert_eq!(parse_rat(&format_rat(&r)).unwrap(), r);
        assert_eq!(format_rat(&rat(10, 2)), "5");
    }

    #[test]
    fn float_negligible_uses_tolerance() {
        let tiny = C64::new(1e-12, 0.0);
        assert!(Scalar::negligible(&tiny, 1e-10));
        let small_exact = crat(1, 1_000_000_000, 0, 1);
        assert!(!Scalar::negligible(&small_exact, 1e-3));
    }
}
