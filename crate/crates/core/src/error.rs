use thiserror::Error;

/// Every failure the library can report. Indices in messages are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HtError {
    #[error("a stacky fan needs at least 3 rays, got {count}")]
    TooFewRays { count: usize },
    #[error("at most 64 rays are supported, got {count}")]
    TooManyRays { count: usize },
    #[error("vector {} is zero", index + 1)]
    ZeroVector { index: usize },
    #[error("vectors {} and {} lie on the same ray", first + 1, second + 1)]
    DuplicateRay { first: usize, second: usize },
    #[error("fan is not complete: no ray between vectors {} and {}", first + 1, second + 1)]
    NotComplete { first: usize, second: usize },
    #[error("integer feasibility is implemented up to dimension 3, got {dim}")]
    UnsupportedDimension { dim: usize },
    #[error("invalid constraint system: {0}")]
    InvalidSystem(String),
    #[error("expected {expected} coefficients, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("line bundle class belongs to a different Picard group")]
    ForeignClass,
    #[error("index set is not a member of the family of homologically nontrivial subsets")]
    NotInDelta,
    #[error("the zero class has no interior cone membership")]
    ZeroClass,
    #[error("vectors {} and {} are not a collinear pair", first + 1, second + 1)]
    NotCollinear { first: usize, second: usize },
    #[error("bound certificate needs a fan without collinear pairs")]
    CertificateNotApplicable,
    #[error("could not certify a positive lower bound within the net budget")]
    CertificateBudget,
    #[error("radius must be positive")]
    NonPositiveRadius,
    #[error("m must be positive")]
    NonPositiveM,
    #[error("invalid semigroup: {0}")]
    InvalidSemigroup(String),
    #[error("element is not in the cone")]
    NotInCone,
    #[error("generators admit no integer relation")]
    NoRelation,
    #[error("invalid display basis: {0}")]
    InvalidBasis(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    /// A domain error attributed to a position in an input file.
    #[error("line {line}, column {column}: {inner}")]
    Located { line: usize, column: usize, inner: Box<HtError> },
    #[error("i/o error: {0}")]
    Io(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("oracle disagreement: {0}")]
    OracleDisagreement(String),
}

impl HtError {
    /// Stable machine-readable code, printed by the CLI.
    pub fn code(&self) -> &'static str {
        match self {
            HtError::TooFewRays { .. } => "E_FAN_TOO_FEW_RAYS",
            HtError::TooManyRays { .. } => "E_FAN_TOO_MANY_RAYS",
            HtError::ZeroVector { .. } => "E_FAN_ZERO_VECTOR",
            HtError::DuplicateRay { .. } => "E_FAN_DUPLICATE_RAY",
            HtError::NotComplete { .. } => "E_FAN_NOT_COMPLETE",
            HtError::UnsupportedDimension { .. } => "E_UNSUPPORTED_DIMENSION",
            HtError::InvalidSystem(_) => "E_INVALID_SYSTEM",
            HtError::LengthMismatch { .. } => "E_LENGTH_MISMATCH",
            HtError::ForeignClass => "E_FOREIGN_CLASS",
            HtError::NotInDelta => "E_NOT_IN_DELTA",
            HtError::ZeroClass => "E_ZERO_CLASS",
            HtError::NotCollinear { .. } => "E_NOT_COLLINEAR",
            HtError::CertificateNotApplicable => "E_CERT_NOT_APPLICABLE",
            HtError::CertificateBudget => "E_CERT_BUDGET",
            HtError::NonPositiveRadius => "E_NONPOSITIVE_RADIUS",
            HtError::NonPositiveM => "E_NONPOSITIVE_M",
            HtError::InvalidSemigroup(_) => "E_INVALID_SEMIGROUP",
            HtError::NotInCone => "E_NOT_IN_CONE",
            HtError::NoRelation => "E_NO_RELATION",
            HtError::InvalidBasis(_) => "E_INVALID_BASIS",
            HtError::Parse { .. } => "E_PARSE",
            HtError::Located { inner, .. } => inner.code(),
            HtError::Io(_) => "E_IO",
            HtError::InvalidArgument(_) => "E_INVALID_ARGUMENT",
            HtError::OracleDisagreement(_) => "E_ORACLE_DISAGREEMENT",
        }
    }
}

impl HtError {
    /// The error with any location wrapper removed.
    pub fn root(&self) -> &HtError {
        match self {
            HtError::Located { inner, .. } => inner.root(),
            e => e,
        }
    }
}

pub type Result<T> = std::result::Result<T, HtError>;
