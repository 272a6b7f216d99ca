use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("base {0} is not prime")]
    NonPrimeBase(u64),
    #[error("modulus is reducible over GF({q})")]
    ReducibleModulus { q: u64 },
    #[error("modulus must be monic of degree {expected}")]
    BadModulus { expected: usize },
    #[error("cannot certify a primitive element of GF({q}^{ell}): factorization of q^ell-1 unavailable")]
    PrimitiveSearchFailed { q: u64, ell: usize },
    #[error("field GF({q}^{ell}) exceeds the supported size of 2^64 elements")]
    FieldTooLarge { q: u64, ell: usize },
    #[error("subfield of degree {a} is not in the tower of GF(q^{ell})")]
    SubfieldNotInTower { a: usize, ell: usize },
    #[error("elements do not form a basis over the subfield")]
    NotABasis,
    #[error("generators are dependent over the subfield")]
    DependentGenerators,
    #[error("message has length {got}, expected {expected}")]
    WrongMessageLength { expected: usize, got: usize },
    #[error("evaluation points are not distinct")]
    DuplicateEvaluationPoints,
    #[error("polynomial degree {degree} is not below {bound}")]
    DegreeTooHigh { degree: usize, bound: usize },
    #[error("{erased} erasures exceed the redundancy {redundancy}")]
    TooManyErasures { erased: usize, redundancy: usize },
    #[error("known symbols are not consistent with any codeword")]
    Inconsistent,
    #[error("dual coefficients failed the orthogonality check")]
    DualCheckFailed,
    #[error("full rank condition violated")]
    FullRankViolated,
    #[error("index {0} is not a helper of this scheme")]
    NotAHelper(usize),
    #[error("repair system is singular")]
    SingularSystem,
    #[error("no transcript for helper {0}")]
    MissingTranscript(usize),
    #[error("q^{s} exceeds the redundancy {redundancy}")]
    SubspaceTooLarge { s: usize, redundancy: usize },
    #[error("failed point {0} is not in the scheme's coset")]
    FailedPointNotInCoset(usize),
    #[error("coset gap {0} is not a power of q")]
    BadCosetGap(u64),
    #[error("points are not split evenly between the two cosets")]
    UnbalancedSplit,
    #[error("original evaluation points are dependent over GF(q)")]
    DependentOriginalPoints,
    #[error("extended cosets collide")]
    CosetCollision,
    #[error("evaluation points are dependent over GF(q)")]
    DependentEvaluationPoints,
    #[error("no delta tuple satisfies the full rank condition")]
    DeltaSearchExhausted,
    #[error("failed points lie in different cosets")]
    ErasuresSpanCosets,
    #[error("no delta solves the block elimination constraints")]
    NoDeltaSolution,
    #[error("construction condition violated: {0}")]
    ConditionViolated(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
