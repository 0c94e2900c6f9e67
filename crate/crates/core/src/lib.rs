//! Product decompositions of univariate and multivariate quantum signal
//! processing, with certification in exact Gaussian-rational arithmetic and a
//! numerical counterexample search.
//!
//! The crate is organized around sparse matrix-valued Laurent polynomials
//! ([`laurent`]) evaluated on the unit torus. On top of that sit:
//!
//! - [`qsp_uni`] — univariate product synthesis and the projector-peeling
//!   decomposition into primitive factors, plus the structured X-rotation
//!   variant;
//! - [`hom_multi`] — homogeneous bivariate products of `diag(a,b)`, their
//!   characterization and decomposition by reduction to the univariate case,
//!   and the non-commuting multivariate generalization;
//! - [`alt_bi`] — inhomogeneous bivariate products with an assignment word
//!   per signal slot, necessary-condition certificates, the corner-product
//!   obstruction, constructive decomposition when one variable has degree at
//!   most one, the exact degree-(2,2) counterexample and its certification,
//!   and the rational counterexample family solver;
//! - [`search`] — the unitarity-defect objective on the torus, its analytic
//!   gradient, multi-restart gradient descent, the permutation-substitution
//!   decomposition test and survey statistics.
//!
//! The `mqsp` binary exposes all of this behind JSON files; see the README.

pub mod alt_bi;
pub mod error;
pub mod hom_multi;
pub mod json;
pub mod laurent;
pub mod mat2;
pub mod qsp_uni;
pub mod sample;
pub mod scalar;
pub mod search;

pub use error::{Error, Result};

/// Version string embedded in CLI reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
