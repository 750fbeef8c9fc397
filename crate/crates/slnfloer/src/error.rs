use alloc::string::String;

/// Errors raised by the computational kernels.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("polynomial is not divisible: {0}")]
    NotDivisible(String),
    #[error("inconsistent linear relations: {0}")]
    InconsistentRelations(String),
    #[error("exponent {exponent} exceeds the configured limit {limit}")]
    ExponentOutOfRange { exponent: u64, limit: u32 },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("differential squares to a non-scalar endomorphism: {0}")]
    NotCurved(String),
    #[error("declared curvature {declared} differs from computed {computed}")]
    CurvatureMismatch { declared: String, computed: String },
    #[error("incompatible rings: {0}")]
    RingMismatch(String),
    #[error("ring is not a univariate polynomial ring: {0}")]
    NotPid(String),
    #[error("graded piece is infinite dimensional: {0}")]
    InfiniteDegreePiece(String),
    #[error("second differential does not descend to homology: {0}")]
    SplitInvalid(String),
    #[error("differential entry is not homogeneous: {0}")]
    GradingViolation(String),
    #[error("invalid master complex: {0}")]
    InvalidMaster(String),
    #[error("invalid staircase exponents: {0}")]
    SpecInvalid(String),
    #[error("invalid braid word: {0}")]
    BadWord(String),
    #[error("skein recursion exceeded its budget of {0} steps")]
    RecursionBudgetExceeded(usize),
    #[error("specialization hits a pole: {0}")]
    PoleAtSpecialization(String),
    #[error("unknown oracle: {0}")]
    UnknownOracle(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = core::result::Result<T, Error>;
