use thiserror::Error;

use crate::root::Root;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("root {0} is not a positive root")]
    NonPositiveRoot(Root),

    #[error("root {root} does not fit on a board of size {n}")]
    OutOfBoard { root: Root, n: usize },

    #[error("roots {0} and {1} share a row or a column")]
    NotBasic(Root, Root),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("minor needs as many rows as columns (got {rows} rows, {cols} columns)")]
    MinorShape { rows: usize, cols: usize },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("denominator vanishes at the evaluation point")]
    Pole,

    #[error("{{p, q}} must equal 1 for the series map")]
    NotCanonicalPair,

    #[error("series did not terminate within {0} brackets")]
    SeriesDiverged(usize),

    #[error("root {root} is outside the domain of the step-{step} map")]
    OutsideDomain { root: Root, step: usize },

    #[error("step {step} out of range 1..={len}")]
    StepOutOfRange { step: usize, len: usize },

    #[error("reduction of {0} is not triangular")]
    NotTriangular(Root),

    #[error("phi must be defined and nonzero exactly on D: {0}")]
    InvalidPhi(String),

    #[error("matrix is not upper unitriangular")]
    NotUnitriangular,

    #[error("gave up after {0} resampling attempts")]
    ResamplingExhausted(usize),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
