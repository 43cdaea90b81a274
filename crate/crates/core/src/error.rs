use thiserror::Error;

/// Errors raised by the graph, group and field engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("graph was not produced by the star-coloring transform: {0}")]
    NotFromTransform(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("group has a nontrivial center")]
    NotCenterless,
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("not a group action: {0}")]
    NotAnAction(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero divisor found while inverting (counterexample: {0})")]
    SingularMultiplication(String),
    #[error("tower too large: basis dimension {dim} exceeds cap {cap}")]
    TooLarge { dim: u128, cap: u128 },
    #[error("generator depth exceeded: requested {requested}, available {available}")]
    DepthExceeded { requested: u32, available: u32 },
    #[error("target profile is not larger than the source profile")]
    ProfileNotLarger,
    #[error("subfield profile is not smaller than the element profile")]
    ProfileNotSmaller,
    #[error("incompatible towers: {0}")]
    Incompatible(String),
    #[error("invalid radical specification: {0}")]
    SpecInvalid(String),
    #[error("valuation of zero is undefined")]
    ZeroInput,
    #[error("no admissible specialization prime found")]
    BadPrime,
    #[error("automorphism does not preserve edge colors")]
    ColorViolation,
    #[error("substitution does not preserve the defining relations: {0}")]
    RelationBroken(String),
    #[error("unsupported characteristic {0}")]
    UnsupportedCharacteristic(u32),
    #[error("undecided: {0}")]
    Unknown(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
