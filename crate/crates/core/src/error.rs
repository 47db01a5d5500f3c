use thiserror::Error;

use crate::homology::Gen;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("cyclotomic order mismatch: {0} vs {1}")]
    OrderMismatch(u32, u32),

    #[error("division by zero")]
    DivisionByZero,

    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(usize, usize),

    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("index out of range: {what} = {value} (allowed {min}..={max})")]
    IndexOutOfRange {
        what: &'static str,
        value: i64,
        min: i64,
        max: i64,
    },

    #[error("invalid genus {0}: must be at least 2")]
    InvalidGenus(usize),

    /// The degree-2 slice of a tensor against the third factor `third` does
    /// not lie in K.
    #[error("tensor is not in K⊗H: pairing contraction = {contraction} ≠ 0 (third factor {third})")]
    NotInK { contraction: i64, third: Gen },

    #[error("basis not unimodular for this input: non-integral coefficient {0}")]
    NonIntegralExpansion(String),

    #[error("index {index} equals the base index ν = {nu}")]
    IndexIsBase { index: usize, nu: usize },

    #[error("value {0} is not rational")]
    NotRational(String),

    #[error("value {0} is not in {{0, 1/2}}")]
    OutOfRange(String),

    #[error("malformed path word: {0}")]
    MalformedWord(String),

    #[error("quadrature failed to converge: achieved error {achieved:e}, target {target:e}")]
    Convergence { achieved: f64, target: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("tensor JSON: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
