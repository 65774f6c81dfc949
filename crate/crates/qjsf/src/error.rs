use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("division by exact zero")]
    DivisionByZero,
    #[error("incompatible scalar kinds: {0}")]
    IncompatibleKinds(&'static str),
    #[error("pole encountered: a denominator q-Pochhammer factor vanishes")]
    PoleEncountered,
    #[error("coincident points: the Vandermonde denominator vanishes")]
    CoincidentPoints,
    #[error("N = {given} is too small, need N >= {needed}")]
    NTooSmall { given: usize, needed: usize },
    #[error("c = 0 is excluded from the closed-form big q-Jacobi path")]
    ZeroCParameter,
    #[error("inadmissible parameters: {0}")]
    InadmissibleParameters(String),
    #[error("weight is not strictly positive at lattice point {0}")]
    NonPositiveWeight(String),
    #[error("degenerate moments in Gram-Schmidt orthogonalization")]
    DegenerateMoments,
    #[error("configuration count {0} exceeds the enumeration guard (set QJSF_MAX_CONFIGS to override)")]
    TooManyConfigurations(u128),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
