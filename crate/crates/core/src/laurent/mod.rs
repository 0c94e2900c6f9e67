//! Sparse matrix-valued Laurent polynomials in one and two variables.
//!
//! Coefficients are 2×2 matrices over either backend of [`crate::scalar`].
//! Stored coefficients always have Frobenius norm above the truncation
//! tolerance (float) or are nonzero (exact); the zero polynomial reports
//! degree 0 and parity `Even` by convention.

mod bi;
mod scalar_bi;
mod uni;

pub use bi::MatLaurent2;
pub use scalar_bi::ScalarLaurent2;
pub use uni::MatLaurent1;

/// Exponent-class purity of a Laurent polynomial in one variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Parity {
    #[serde(rename = "even")]
    Even,
    #[serde(rename = "odd")]
    Odd,
    #[serde(rename = "mixed")]
    Mixed,
}

impl Parity {
    /// Parity class of a single exponent.
    pub fn of(e: i64) -> Parity {
        if e.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Parity class matching a degree count (`d` signal slots).
    pub fn of_degree(d: u32) -> Parity {
        Parity::of(d as i64)
    }

    /// Combine the classes of two exponents seen in the same polynomial.
    pub fn join(self, other: Parity) -> Parity {
        if self == other { self } else { Parity::Mixed }
    }
}

pub(crate) fn parity_of_exponents<I: Iterator<Item = i64>>(mut it: I) -> Parity {
    match it.next() {
        None => Parity::Even,
        Some(first) => {
            let mut p = Parity::of(first);
            for e in it {
                p = p.join(Parity::of(e));
                if p == Parity::Mixed {
                    break;
                }
            }
            p
        }
    }
}
