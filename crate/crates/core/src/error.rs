use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty input: a complex needs at least one facet")]
    EmptyInput,
    #[error("malformed simplex {0:?}: vertices must be non-empty and distinct")]
    MalformedSimplex(Vec<usize>),
    #[error("vertex {0} is not a vertex of the complex")]
    UnknownVertex(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime {0} exceeds the supported range (< 2^32)")]
    PrimeTooLarge(u64),
    #[error("only {available} removable columns exist, {requested} requested")]
    BudgetUnachievable { requested: usize, available: usize },
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("order violation: expected m <= n, got m = {m}, n = {n}")]
    OrderViolation { m: u64, n: u64 },
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("unknown corpus complex '{0}'")]
    UnknownName(String),
    #[error("invalid cover: {0}")]
    InvalidCover(String),
    #[error("search budget exceeded after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("cannot access {path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    /// Short variant name, used by the CLI when reporting failures.
    pub fn name(&self) -> &'static str {
        match self {
            Error::EmptyInput => "EmptyInput",
            Error::MalformedSimplex(_) => "MalformedSimplex",
            Error::UnknownVertex(_) => "UnknownVertex",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::NotPrime(_) => "NotPrime",
            Error::PrimeTooLarge(_) => "PrimeTooLarge",
            Error::BudgetUnachievable { .. } => "BudgetUnachievable",
            Error::FieldMismatch(..) => "FieldMismatch",
            Error::DomainError(_) => "DomainError",
            Error::OrderViolation { .. } => "OrderViolation",
            Error::InvalidProfile(_) => "InvalidProfile",
            Error::ConstructionFailed(_) => "ConstructionFailed",
            Error::UnknownName(_) => "UnknownName",
            Error::InvalidCover(_) => "InvalidCover",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::Parse { .. } => "ParseError",
            Error::Io { .. } => "IoError",
        }
    }
}
