use thiserror::Error;

/// Errors produced by relation construction and the extension machinery.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("universe must contain at least one label")]
    EmptyUniverse,
    #[error("duplicate label `{0}` in universe")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("relations live on different universes")]
    UniverseMismatch,
    #[error("power exponent must be at least 1")]
    ZeroExponent,
    #[error("restriction set must be nonempty")]
    EmptyRestriction,
    #[error("constraint set Y must be an antichain of the closure: ({0},{1}) is comparable")]
    ConstraintNotAntichain(String, String),
    #[error("constraint relation T must be an ordering on Y")]
    ConstraintNotOrdering,
    #[error("constraint relation T must be a linear order on Y")]
    ConstraintNotLinear,
    #[error("constraint universe is not a subset of the relation's universe")]
    ConstraintUniverseMismatch,
    #[error("relation is not S-consistent: cycle through ({0},{1}) contains a strict edge")]
    NotSConsistent(String, String),
    #[error("relation is not {m}-consistent")]
    NotMConsistent { m: u32 },
    #[error("relation is not Delta(m)-consistent for any m: symmetric pair ({0},{1}) off the diagonal")]
    NotDeltaConsistent(String, String),
    #[error("`{0}` is not a maximal element of the relation")]
    NotMaximal(String),
    #[error("enumeration would exceed the cap of {cap} (needs {needed}); quotient or restrict first")]
    CapExceeded { cap: u64, needed: u64 },
    #[error("no linear extensions exist; the covers predicate is vacuous")]
    NoLinearExtensions,
    #[error("a realizer family must be nonempty")]
    EmptyFamily,
    #[error("profile has {got} coordinates, game has {want} players")]
    ProfileArity { got: usize, want: usize },
    #[error("action `{action}` unknown for player {player}")]
    UnknownAction { player: usize, action: String },
    #[error("profile is not a Nash equilibrium of the game")]
    NotEquilibrium,
    #[error("player {player}'s preference fails the consistency precondition")]
    PlayerInconsistent { player: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
