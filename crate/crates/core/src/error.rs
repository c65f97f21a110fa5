use thiserror::Error;

use crate::word::{Alphabet, Word};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("alphabet mismatch: expected {expected:?}, found {found:?}")]
    AlphabetMismatch { expected: Alphabet, found: Alphabet },

    #[error("operation requires the {0:?} alphabet")]
    WrongAlphabet(Alphabet),

    #[error("series has constant term {found}, expected {expected}")]
    ConstantTerm { expected: &'static str, found: String },

    #[error("enumeration bound exceeded: {what} = {value} > {bound}")]
    BoundExceeded { what: &'static str, value: usize, bound: usize },

    #[error("ground sets differ: {0} vs {1}")]
    GroundSetMismatch(usize, usize),

    #[error("parameter outside domain: {0}")]
    Domain(String),

    #[error("tolerance {tol:e} not reached within {cap} iterations")]
    Tolerance { tol: f64, cap: u64 },

    #[error("divergent word {0}: leading index must be at least 2")]
    Divergent(Word),

    #[error("series is not group-like: <S|u><S|v> != <S|u*v> for u = {u}, v = {v}")]
    NotGroupLike { u: Word, v: Word },

    #[error("series is not primitive at word {0}")]
    NotPrimitive(String),

    #[error("invalid Lie exponent: {0}")]
    InvalidExponent(String),

    #[error("numeric verification failed for {what}: residual {residual:e} > {tol:e}")]
    Verification { what: String, residual: f64, tol: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
