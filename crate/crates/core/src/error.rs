use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    CompositeCharacteristic(u64),
    #[error("extension degree must be at least 1")]
    DegreeZero,
    #[error("modulus is not a monic irreducible polynomial of degree {0} over the prime field")]
    InvalidModulus(usize),
    #[error("no embedding from {from} into {to}")]
    NoEmbedding { from: String, to: String },
    #[error("operation requires a finite field")]
    RationalField,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("the curve lies in the plane")]
    CurveInPlane,
    #[error("point does not lie on the plane")]
    PointOffPlane,
    #[error("no generic plane found after {retries} attempts (rejections: {tags:?})")]
    GenericityExhausted { retries: usize, tags: Vec<String> },
    #[error("point configuration is empty")]
    EmptyConfiguration,
    #[error("minimal degree {g} exceeds d+1 = {} for n = {n}", d + 1)]
    InconsistentInput { n: usize, g: usize, d: usize },
    #[error("exhaustive check needs {needed} subsets, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("subset contains a point outside the configuration")]
    NotASubset,
    #[error("linear system has no members")]
    EmptySystem,
    #[error("no substitution value gives a squarefree specialization over this field")]
    SubstitutionExhausted,
    #[error("could not sample independent points after {0} attempts")]
    DependentSample(usize),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Stable machine-readable code used in CLI error reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::CompositeCharacteristic(_) => "CompositeCharacteristic",
            Error::DegreeZero => "DegreeZero",
            Error::InvalidModulus(_) => "InvalidModulus",
            Error::NoEmbedding { .. } => "NoEmbedding",
            Error::RationalField => "RationalField",
            Error::FieldMismatch => "FieldMismatch",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::CurveInPlane => "CurveInPlane",
            Error::PointOffPlane => "PointOffPlane",
            Error::GenericityExhausted { .. } => "GenericityExhausted",
            Error::EmptyConfiguration => "EmptyConfiguration",
            Error::InconsistentInput { .. } => "InconsistentInput",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::NotASubset => "NotASubset",
            Error::EmptySystem => "EmptySystem",
            Error::SubstitutionExhausted => "SubstitutionExhausted",
            Error::DependentSample(_) => "DependentSample",
            Error::InvalidParameters(_) => "InvalidParameters",
            Error::InvalidInput(_) => "InvalidInput",
            Error::Usage(_) => "UsageError",
            Error::Io(_) => "IoError",
        }
    }
}
