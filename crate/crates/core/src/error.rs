use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("residue characteristic {0} is unsupported (need p >= 5, or p >= 3 for splitting)")]
    UnsupportedPrime(u64),
    #[error("prime {0} divides the denominator of the discriminant")]
    PrimeInDenominator(u64),
    #[error("discriminant {0} is a rational square; x^2 + p1 x + p0 is reducible")]
    SquareDiscriminant(String),
    #[error("ambiguous prime: {0} splits in the quadratic field")]
    AmbiguousPrime(u64),
    #[error("residue field is F_{{p^2}}, unsupported ({0} is inert)")]
    InertResidue(u64),
    #[error("element has negative valuation {0} and no residue")]
    NegativeValuation(i64),
    #[error("elements belong to different quadratic fields")]
    FieldMismatch,
    #[error("singular curve: discriminant is zero")]
    Singular,
    #[error("point is not on the curve")]
    OffCurve,
    #[error("transformation scale u must be nonzero")]
    ZeroScale,
    #[error("invalid local context: {0}")]
    InvalidContext(String),
    #[error("negative valuation triple entry")]
    NegativeTriple,
    #[error("impossible triple ({0}): inconsistent with 1728*Delta = c4^3 - c6^2")]
    ImpossibleTriple(String),
    #[error("triple ({0}) is not minimal")]
    NotMinimal(String),
    #[error("wild base change unsupported: p = {p} divides degree {degree}")]
    WildBaseChange { p: u64, degree: u64 },
    #[error("valuation {0} is not a nonnegative multiple of 12")]
    NotMultipleOf12(i64),
    #[error("model is not integral at {0}")]
    NonIntegralModel(u64),
    #[error("coordinate reduction needs e = 1 over Q (got e = {0})")]
    RamifiedRationalReduction(u64),
    #[error("defining quadratic is reducible over Q with roots {0:?}")]
    ReducibleQuadratic(Vec<String>),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("both polynomials are zero")]
    BothZero,
    #[error("extended gcd self-check failed")]
    BezoutCheckFailed,
    #[error("cross-check disagreement: {0}")]
    CrossCheck(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
