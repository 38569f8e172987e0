use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not palindromic: {0}")]
    NotPalindromic(String),
    #[error("point is not on the unit circle: {0}")]
    NotOnCircle(String),
    #[error("polynomial vanishes at t = 1 or t = -1")]
    RootAtPlusMinusOne,
    #[error("empty arc")]
    EmptyArc,
    #[error("not a Seifert matrix: {0}")]
    NotSeifert(String),
    #[error("Alexander polynomial is not a unit at t = 1")]
    NotAKnot,
    #[error("Seifert matrix is not in normalized form")]
    NotNormalized,
    #[error("matrix is not hermitian")]
    NotHermitian,
    #[error("point is not a root of the determinant")]
    NotARoot,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("determinant is not a unit of Q[t, 1/t]")]
    NotUnimodular,
    #[error("block cannot be removed: {0}")]
    NotUnitBlock(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("determinant vanishes at t = 1 or t = -1")]
    DegenerateAtUnitPoints,
    #[error("polynomials are not coprime")]
    NotCoprime,
    #[error("sign hypothesis fails at {witness}")]
    SignHypothesisFails { witness: String },
    #[error("polynomial is negative somewhere on the unit circle")]
    NegativeSomewhere,
    #[error("no positive interpolant found up to degree {degree}")]
    InterpolantNotFound { degree: usize },
    #[error("factorization residual {residual:e} exceeds tolerance")]
    ResidualTooLarge { residual: f64 },
    #[error("form is not elementary diagonal: {0}")]
    NotElementary(String),
    #[error("minimal size not achieved: got {achieved}, bound {bound}")]
    SizeNotAchievable { achieved: usize, bound: usize },
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "Parse",
            Error::NotPalindromic(_) => "NotPalindromic",
            Error::NotOnCircle(_) => "NotOnCircle",
            Error::RootAtPlusMinusOne => "RootAtPlusMinusOne",
            Error::EmptyArc => "EmptyArc",
            Error::NotSeifert(_) => "NotSeifert",
            Error::NotAKnot => "NotAKnot",
            Error::NotNormalized => "NotNormalized",
            Error::NotHermitian => "NotHermitian",
            Error::NotARoot => "NotARoot",
            Error::SingularMatrix => "SingularMatrix",
            Error::NotUnimodular => "NotUnimodular",
            Error::NotUnitBlock(_) => "NotUnitBlock",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::DegenerateAtUnitPoints => "DegenerateAtUnitPoints",
            Error::NotCoprime => "NotCoprime",
            Error::SignHypothesisFails { .. } => "SignHypothesisFails",
            Error::NegativeSomewhere => "NegativeSomewhere",
            Error::InterpolantNotFound { .. } => "InterpolantNotFound",
            Error::ResidualTooLarge { .. } => "ResidualTooLarge",
            Error::NotElementary(_) => "NotElementary",
            Error::SizeNotAchievable { .. } => "SizeNotAchievable",
            Error::Internal(_) => "Internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
