use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("constant term {modulus:e} is too close to zero for a series reciprocal")]
    NearZeroConstantTerm { modulus: f64 },

    #[error("no coefficient majorant registered; tail bound unavailable")]
    TailBoundUnavailable,

    #[error("argument {value} outside the admissible range {range}")]
    ArgumentOutOfRange { value: f64, range: &'static str },

    #[error("operation not supported for class {0}")]
    UnsupportedClass(String),

    #[error("Schwarz data not bounded: {0}")]
    NotSchwarzBounded(String),

    #[error("degenerate transform: {0}")]
    DegenerateTransform(String),

    #[error("zero denominator: b1 + mu vanishes")]
    ZeroDenominator,

    #[error("unknown equation id `{0}`")]
    UnknownEquation(String),

    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),

    #[error("no sign change found for `{0}` on (0,1)")]
    NoBracketFound(String),

    #[error("equation `{0}` has no closed-form root")]
    NoClosedForm(String),

    #[error("equation `{0}` has no registered sharpness witness")]
    NoWitness(String),

    #[error("function is not certified in Omega_A (sum (n-1)|a_n| = {value} > 1/2)")]
    NotCertifiedOmegaA { value: f64 },

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
