use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a squarefree integer > 1")]
    NotSquarefree(i64),

    #[error("{a} is not a quadratic residue modulo {p}")]
    NotAResidue { a: i64, p: u64 },

    #[error("{0} has no square root in the 2-adic integers (needs a = 1 mod 8)")]
    NoTwoAdicRoot(String),

    #[error("symbol undefined: {0}")]
    UndefinedSymbol(String),

    #[error("the fundamental unit of Q(sqrt({0})) has norm -1")]
    NormMinusOne(i64),

    #[error("no decomposition of the unit of Q(sqrt({d})): {detail}")]
    DecompositionFailure { d: i64, detail: String },

    #[error("2-adic precision of {bits} bits is insufficient")]
    PrecisionLoss { bits: u32 },

    #[error("{0} is not a positive fundamental discriminant")]
    NonFundamentalDiscriminant(i64),

    #[error("input too large: {0}")]
    TooLarge(String),

    #[error("zero argument to a Hilbert symbol")]
    ZeroArgument,

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("cache: {0}")]
    Cache(String),
}
