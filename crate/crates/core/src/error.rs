use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian")]
    NotHermitian,

    #[error("matrix is singular")]
    Singular,

    #[error("Hermitian form has signature ({found_pos}, {found_neg}), expected ({expected_pos}, {expected_neg})")]
    Signature {
        expected_pos: usize,
        expected_neg: usize,
        found_pos: usize,
        found_neg: usize,
    },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("coefficient symmetry broken at monomial {0}")]
    Reality(String),

    #[error("harmonic term {0}: every monomial needs degree >= 2 in both z and conj(z)")]
    Harmonic(String),

    #[error("monomial {monomial} has weight {weight} above declared maximum {max}")]
    WeightExceeded { monomial: String, weight: u32, max: u32 },

    #[error("dg/dw(0) must be a nonzero real number, got {0}")]
    NonRealScale(String),

    #[error("irrational scale |dg/dw(0)| = {0}: not a rational square; supply parameters directly")]
    IrrationalScale(String),

    #[error("U not pseudounitary with sign {expected}")]
    NotPseudounitary { expected: i8 },

    #[error("jet is not extractable: {0}")]
    NotExtractable(String),

    #[error("truncation insufficient: weight {requested} requested, capacity {capacity}")]
    Truncation { requested: u32, capacity: u32 },

    #[error("surface is not in normal form")]
    NotNormalForm,

    #[error("constraint violated: {0}")]
    Constraint(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
