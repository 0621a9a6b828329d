use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomials live in different rings")]
    RingMismatch,

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("grading rank mismatch: expected {expected} weights per variable, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("coefficient of {monomial} is not divisible by {divisor}")]
    NonDivisible { monomial: String, divisor: u64 },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("{op} is not supported over {domain}")]
    DomainNotSupported { op: &'static str, domain: String },

    #[error("generator {0} is not a monomial")]
    NonMonomialGenerator(String),

    #[error("colon by the zero polynomial")]
    ZeroColon,

    #[error("invalid exponent: {0}")]
    InvalidExponent(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("ill-formed syzygy: sum of f_i*g_i is {0}")]
    IllFormedSyzygy(String),

    #[error("degree guard exceeded: {0}")]
    GuardExceeded(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("certificate check failed at {stage}: {reason}")]
    CertificateFailed { stage: String, reason: String },

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),

    #[error("parameter out of bounds: {0}")]
    ParamOutOfBounds(String),

    #[error("malformed report: {0}")]
    MalformedReport(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
