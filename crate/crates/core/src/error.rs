//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by polynomial algebra, synthesis and decomposition routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("backend mismatch: expected {expected}, found {found}")]
    BackendMismatch { expected: &'static str, found: &'static str },

    #[error("evaluation point {index} has modulus {modulus} (must be 1 within 1e-12)")]
    NonUnitModulus { index: usize, modulus: f64 },

    #[error("angle {num}/{den} of a full turn is not representable in Gaussian-rational arithmetic")]
    NonRepresentableAngle { num: i64, den: i64 },

    #[error("matrix {index} is not special-unitary (residual {residual:.3e})")]
    NotSpecialUnitary { index: usize, residual: f64 },

    #[error("matrix {index} is not a rank-one orthogonal projector (residual {residual:.3e})")]
    NotProjector { index: usize, residual: f64 },

    #[error("assignment word has length {word_len}, expected {expected} (one per signal slot)")]
    WordLengthMismatch { word_len: usize, expected: usize },

    #[error("assignment word is required for this operation")]
    MissingWord,

    #[error("degree did not decrease at step {step}: leftover norm {residual:.3e} above tolerance")]
    DegreeNotDecreasing { step: usize, residual: f64 },

    #[error("leading coefficient at step {step} has trace {trace:.3e}, below truncation tolerance")]
    LeadingTraceTooSmall { step: usize, trace: f64 },

    #[error("degree {degree} exceeds the supported cap {cap} for the plain recursion")]
    DegreeCap { degree: u32, cap: u32 },

    #[error("input has mixed exponent parity; not in the decomposable class")]
    MixedParity,

    #[error("projection polynomial fails the projector identity (residual {residual:.3e})")]
    ProjectorIdentityFailed { residual: f64 },

    #[error("projection degree failed to drop by 2 at step {step} (degree {degree})")]
    ProjectionDegreeStuck { step: usize, degree: u32 },

    #[error("expected degree at most 1 in variable {var}, found {degree}")]
    DegreeTooLargeInVar { var: char, degree: u32 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("word table too large: {n}^{d} exceeds 4096")]
    WordTableTooLarge { n: usize, d: usize },

    #[error("polynomial is not in the expected class: {0}")]
    NotInClass(String),

    #[error("coefficient record {index}: {detail}")]
    MalformedCoefficient { index: usize, detail: String },

    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
