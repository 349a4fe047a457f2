use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("syntax error in braid word at token {token:?}: {reason}")]
    Syntax { token: String, reason: String },
    #[error("generator index {index} out of range for {strands} strands")]
    GeneratorOutOfRange { index: i64, strands: usize },
    #[error("braid groups need at least 2 strands, got {0}")]
    TooFewStrands(usize),
    #[error("garside computations support at most {max} strands, got {got}")]
    TooManyStrands { got: usize, max: usize },
    #[error("strand count mismatch: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },
    #[error("not a permutation: {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("braid is not periodic")]
    NotPeriodic,
    #[error("summit set enumeration exceeded budget of {0} elements")]
    BudgetExceeded(usize),
    #[error("invalid curve system: {0}")]
    InvalidCurves(String),
    #[error("coordinate vector has length {got}, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("letter {index} is not tube-respecting: {reason}")]
    NotTubeRespecting { index: usize, reason: String },
    #[error("braid does not preserve the curve system")]
    DoesNotPreserve,
    #[error("decompositions are over different curve systems")]
    CurveMismatch,
    #[error("invalid orbit swap parameters: {0}")]
    InvalidSwap(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("internal contradiction: {0}")]
    Contradiction(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = BraidError> = std::result::Result<T, E>;
