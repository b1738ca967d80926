use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("zero divisor")]
    ZeroDivisor,
    #[error("order of zero undefined")]
    OrderOfZero,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("constant polynomial")]
    ConstantPolynomial,
    #[error("parse error at offset {pos}: expected {expected}, found {found}")]
    Parse {
        pos: usize,
        expected: String,
        found: String,
    },
    #[error("not in valuation ring: order {order}")]
    NotInValuationRing { order: i64 },
    #[error("element depends on the parameter a; substitute a value first")]
    Parametric,
    #[error("depth cap {cap} exceeded with open points {open:?}")]
    DepthExceeded { cap: usize, open: Vec<String> },
    #[error("infinitely many distinguished points below {0}")]
    InfiniteResolution(String),
    #[error("no point found: {0}")]
    NotFound(String),
    #[error("ambiguous: {0}")]
    Ambiguous(String),
    #[error("no rational branch direction at {point}: {reason}")]
    NoCandidate { point: String, reason: String },
    #[error("several branch directions at {point}: {steps:?}")]
    MultipleCandidates { point: String, steps: Vec<String> },
    #[error("curve does not pass through {0}")]
    OffBranch(String),
    #[error("divisor misses the tree: h(0,0) is nonzero")]
    DivisorMissesTree,
    #[error("polynomial is not square-free")]
    NotSquareFree,
    #[error("first-kind valuations dominate no tree point")]
    NonDominating,
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("infinitely many irreducible components, witnessed by {0}")]
    InfiniteComponents(String),
    #[error("undecided within {cap} levels: {what}")]
    Undecided { cap: usize, what: String },
    #[error("no irredundance certificate: {0:?}")]
    NoCertificate(Vec<String>),
    #[error("no integer weight is positive on every generator")]
    NoSeparatingWeight,
    #[error("unknown demo {0}")]
    UnknownDemo(String),
    #[error("enumeration exceeds node cap {0}")]
    EnumerationTooLarge(usize),
    #[error("invalid json: {0}")]
    Json(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::GcdOfZeros => "gcd-of-zeros",
            Error::ZeroDivisor => "zero-divisor",
            Error::OrderOfZero => "order-of-zero",
            Error::ZeroPolynomial => "zero-polynomial",
            Error::ConstantPolynomial => "constant-polynomial",
            Error::Parse { .. } => "parse",
            Error::NotInValuationRing { .. } => "not-in-valuation-ring",
            Error::Parametric => "parametric",
            Error::DepthExceeded { .. } => "depth-exceeded",
            Error::InfiniteResolution(_) => "infinite-resolution",
            Error::NotFound(_) => "not-found",
            Error::Ambiguous(_) => "ambiguous",
            Error::NoCandidate { .. } => "no-candidate",
            Error::MultipleCandidates { .. } => "multiple-candidates",
            Error::OffBranch(_) => "off-branch",
            Error::DivisorMissesTree => "divisor-misses-tree",
            Error::NotSquareFree => "not-square-free",
            Error::NonDominating => "non-dominating",
            Error::InvalidDescriptor(_) => "invalid-descriptor",
            Error::InfiniteComponents(_) => "infinite-components",
            Error::Undecided { .. } => "undecided",
            Error::NoCertificate(_) => "no-certificate",
            Error::NoSeparatingWeight => "no-separating-weight",
            Error::UnknownDemo(_) => "unknown-demo",
            Error::EnumerationTooLarge(_) => "enumeration-too-large",
            Error::Json(_) => "json",
        }
    }
}
