use thiserror::Error;

/// Errors raised by the engine. Audit findings are never errors; they end up
/// in the report instead.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported Cartan type `{0}` (supported: A1, A2, A3, A4, B2, G2)")]
    UnsupportedType(String),
    #[error("weight {0:?} is not dominant")]
    NonDominantWeight(Vec<i64>),
    #[error("bad generator index `{found}` in word `{word}` (rank {rank})")]
    BadGeneratorIndex { word: String, found: char, rank: usize },
    #[error("leading term of the zero polynomial")]
    LeadingTermOfZero,
    #[error("degree {degree} exceeds {nu}")]
    DegreeExceedsNu { degree: usize, nu: usize },
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("cannot parse polynomial `{input}`: {reason}")]
    PolyParse { input: String, reason: String },
    #[error("group of order {order} exceeds the configured bound {bound}")]
    GroupTooLarge { order: usize, bound: usize },
    #[error("J-ring associativity fails at ({0}, {1}, {2})")]
    AssociativityFailure(String, String, String),
    #[error("Hecke module construction incomplete: {0}")]
    ConstructionIncomplete(String),
    #[error("trace leading terms inconsistent for {0}")]
    LeadingTermMismatch(String),
    #[error("data integrity failure [{location}]: {message}")]
    DataIntegrityFailure { location: String, message: String },
    #[error("unknown unipotent label `{0}`")]
    UnknownLabel(String),
    #[error("weight template {0} is not dominant for all admissible p")]
    NonDominantTemplate(String),
    #[error("no M_w data for type {0}")]
    MissingMwData(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {p} exceeds the configured bound {bound}")]
    TooLarge { p: u64, bound: u64 },
    #[error("prime {p} is below the minimum {min} for this computation")]
    PrimeTooSmall { p: u64, min: u64 },
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
