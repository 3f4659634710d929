use alloc::string::String;

use crate::algebra::Var;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Every failure the engine can report. Variants map one-to-one onto the
/// error kinds of the command-line interface.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("polynomial is not exactly divisible by the given divisor")]
    NotDivisible,

    #[error("polynomial is not symmetric in the weights (transposition l{0} <-> l{1} changes it)")]
    NotSymmetric(u32, u32),

    #[error("negative exponent on {0} is not allowed in a polynomial")]
    NegativeExponent(Var),

    #[error("{0} is not an affine form in the residue variables")]
    NotAffine(String),

    #[error("affine form {0} contains no residue variable")]
    NoDominantVariable(String),

    #[error("residue variable {0} does not appear in the dominance ordering")]
    UnorderedVariable(Var),

    #[error("expansion in {var} needs order {needed}, above the cap {cap}")]
    WindowOverflow { var: Var, needed: u64, cap: u64 },

    #[error("class has weighted degree {found}, expected {expected}")]
    DegreeMismatch { expected: i64, found: i64 },

    #[error("weights l{0} and l{1} coincide")]
    RepeatedWeights(u32, u32),

    #[error("weight draws disagree: the fixed-point sum is not weight independent")]
    InconsistentDraws,

    #[error("no Q polynomial available for k = {0}")]
    MissingQ(u32),

    #[error("reparametrisation jet has vanishing linear part")]
    SingularLinearPart,

    #[error("need at least {needed} columns for the minors, have {available}")]
    TooFewColumns { needed: usize, available: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable machine-readable name of the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "ParseError",
            Error::NotDivisible => "NotDivisible",
            Error::NotSymmetric(..) => "NotSymmetric",
            Error::NegativeExponent(_) => "NegativeExponent",
            Error::NotAffine(_) => "NotAffine",
            Error::NoDominantVariable(_) => "NoDominantVariable",
            Error::UnorderedVariable(_) => "UnorderedVariable",
            Error::WindowOverflow { .. } => "WindowOverflow",
            Error::DegreeMismatch { .. } => "DegreeMismatch",
            Error::RepeatedWeights(..) => "RepeatedWeights",
            Error::InconsistentDraws => "InconsistentDraws",
            Error::MissingQ(_) => "MissingQ",
            Error::SingularLinearPart => "SingularLinearPart",
            Error::TooFewColumns { .. } => "TooFewColumns",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}
