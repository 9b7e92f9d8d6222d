use thiserror::Error;

use crate::cert::Certificate;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("{0} is not an admissible prime (need a prime with 2 < p < 2^62)")]
    InvalidPrime(u64),

    #[error("syntax error at column {}: {message}", .position + 1)]
    Syntax { position: usize, message: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("polynomials have different arity or monomial order")]
    ArityMismatch,
    #[error("at most {max} variables are supported, got {got}")]
    TooManyVariables { got: usize, max: usize },
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("an ideal needs at least one generator")]
    EmptyIdeal,
    #[error("ideal is not primary to the maximal ideal at the origin")]
    NotMPrimary,
    #[error("quotient is not artinian (Krull dimension {0})")]
    NotArtinian(usize),
    #[error("generators span the zero ideal")]
    EmptyAfterTrim,
    #[error("subspaces live in different ambient spaces ({0} vs {1})")]
    AmbientMismatch(usize, usize),

    #[error("presentation generator f_{} is not contained in J", .index + 1)]
    NotContained { index: usize },
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("minimality not certifiable for non-m-primary inhomogeneous ideal; pass assume_minimal to proceed")]
    MinimalityNotCertifiable,

    #[error("chosen element has m-adic order {0}, need at least 2")]
    OrderTooSmall(u32),
    #[error(
        "no admissible hypersurface quotient after {attempts} attempts; \
         try a larger prime field or a larger coefficient bound"
    )]
    SearchExhausted {
        attempts: u32,
        partial: Option<Box<Certificate>>,
    },
    #[error("ideal is not equigenerated at its minimal order (c < n); a span bound s is required")]
    MissingSpanBound,
    #[error("generator f_{} is not a monomial", .0 + 1)]
    NotMonomial(usize),
    #[error("generators f_{} and f_{} have comparable supports", .0 + 1, .1 + 1)]
    SupportsComparable(usize, usize),
    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),

    #[error("unknown example `{0}`; known: shortgor3, truncated:d,s, thomas, monomial4, sr:<file>")]
    UnknownExample(String),

    #[error("truncated and Groebner membership disagree (internal error)")]
    OracleDisagreement,
    #[error("malformed data: {0}")]
    Json(String),
    #[error("line {line}, column {column}: {message}")]
    Input {
        line: usize,
        column: usize,
        message: String,
    },
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
