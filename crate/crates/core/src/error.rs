use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("irrational breakpoint: {0} has no rational root factorization")]
    IrrationalBreakpoint(String),
    #[error("degree {0} is beyond the supported root-finding range (<= 2)")]
    DegreeTooHigh(usize),
    #[error("the zero polynomial has no isolated roots")]
    ZeroPolynomial,
    #[error("invalid integration region: lower bound exceeds upper bound at u = {0}")]
    InvalidRegion(String),

    #[error("basis mismatch: expected [{expected}], got [{found}]")]
    BasisMismatch { expected: String, found: String },
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("tensor symmetry violated at {0}")]
    SymmetryViolated(String),
    #[error("pairing of `{class}` with curve `{curve}` is undetermined (coefficient of `{generator}` is nonzero)")]
    UndeterminedPairing {
        class: String,
        curve: String,
        generator: String,
    },
    #[error("coefficient is not a {0}")]
    CoefficientKind(&'static str),

    #[error("empty curve list")]
    EmptyCurveList,
    #[error("empty cone")]
    EmptyCone,
    #[error("pseudo-effective threshold is unbounded: `{0}` does not constrain the class")]
    UnboundedThreshold(String),
    #[error("class is not in the cone at u = 0")]
    NotInConeAtZero,

    #[error("not pseudo-effective: {0}")]
    NotPseudoEffective(String),
    #[error("indefinite support: Gram matrix of {{{0}}} is not negative definite")]
    IndefiniteSupport(String),
    #[error("fit mismatch on u-cell [{lo}, {hi}]: {reason}")]
    FitMismatch { lo: String, hi: String, reason: String },
    #[error("v-sweep does not terminate: no wall or volume root above v = {0}")]
    UnboundedSweep(String),
    #[error("wall of degree > 1 encountered: {0}")]
    NonAffineWall(String),
    #[error("negative part coefficient of `{0}` decreases to zero inside a chamber")]
    SupportShrink(String),

    #[error("schedule validation failed: {0}")]
    Schedule(String),
    #[error("pseudo-effective threshold {computed} does not match schedule end {scheduled}")]
    TauMismatch { computed: String, scheduled: String },
    #[error("ord coefficient mismatch on chamber {chamber}: declared {declared}, restriction gives {computed}")]
    OrdMismatch {
        chamber: usize,
        declared: String,
        computed: String,
    },
    #[error("`{dominating}` does not dominate `{curve}`: the difference is not effective")]
    DominanceViolation { curve: String, dominating: String },

    #[error("not homogeneous in {0}")]
    NotHomogeneous(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("irrational eigenvalues: characteristic polynomial {0} does not split over Q")]
    IrrationalEigenvalues(String),
    #[error("degenerate line: the defining forms are dependent")]
    DegenerateLine,
    #[error("invalid parametrized curve: {0}")]
    InvalidCurve(String),
    #[error("certificate failed: {0}")]
    Certificate(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("scenario error in [{section}] {key}: {msg}")]
    Scenario {
        section: String,
        key: String,
        msg: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    pub(crate) fn scenario(section: &str, key: &str, msg: impl Into<String>) -> Self {
        Error::Scenario {
            section: section.to_string(),
            key: key.to_string(),
            msg: msg.into(),
        }
    }
}
