use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("atom `{name}` is annotated both stative and iterable")]
    ConflictingAspect { name: String },

    #[error("invalid atom name `{0}`")]
    InvalidAtomName(String),

    #[error("unknown corpus label `{0}`")]
    UnknownLabel(String),

    #[error("metavariable {0} is not bound")]
    UnboundMetavariable(char),

    #[error("assignment has no value for atom `{0}`")]
    MissingAtom(String),

    #[error("formula has {found} atoms; at most {limit} are supported here")]
    TooManyAtoms { found: usize, limit: usize },

    #[error("formula has {found} `or` occurrences; at most {limit} are supported")]
    TooManyOrNodes { found: usize, limit: usize },

    #[error("`{0}` is contradictory; no belief model supports asserting it")]
    ContradictoryAssertion(String),

    #[error("duality is undefined for a law whose connective map uses xor")]
    DualityUndefined,

    #[error("{0} has no prospect denotation")]
    UnsupportedConnective(&'static str),

    #[error("coefficient assignment has no value for `or` #{0}")]
    MissingCoefficient(usize),

    #[error("atom `{0}` is not in the distribution's atom set")]
    UnknownAtom(String),

    #[error("conditioning event has probability zero")]
    ZeroProbability,

    #[error("hypothesis probability must lie strictly between 0 and 1")]
    DegenerateHypothesis,

    #[error("grid size limit exceeded: {0}")]
    GridTooLarge(String),

    #[error("distribution masses must be nonnegative and sum to 1")]
    InvalidDistribution,

    #[error("xor chain length must be within 1..=12, got {0}")]
    ChainLength(usize),
}
