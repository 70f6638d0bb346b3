use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("unbalanced weighting at vertex {0}")]
    Unbalanced(String),
    #[error("trivial weighting")]
    TrivialWeighting,
    #[error("weighting is not reduced (gcd {0})")]
    UnreducedWeighting(i64),
    #[error("not contractible in this form: {0}")]
    NotContractible(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown edge {0}")]
    UnknownEdge(String),
    #[error("{0} must be nonzero")]
    ZeroArgument(&'static str),
    #[error("negative exponent in integer evaluation")]
    NegativeExponent,
    #[error("{0}")]
    InvalidArgument(String),
    #[error("{0} is not an odd prime")]
    NotPrime(i64),
    #[error("modular inverse of n undefined: {p} divides {n}")]
    NotInvertible { p: u64, n: i64 },
    #[error("k = {k} is congruent to 1 mod {p}; cyclic coloring formula degenerates")]
    DegenerateK { p: u64, k: i64 },
    #[error("{k}^{m} is not 1 mod {p}")]
    InvalidGroup { p: u64, m: u64, k: i64 },
    #[error("cap exceeded: {what} needs {needed}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: String,
        cap: u64,
    },
    #[error("representation check failed: {0}")]
    RepresentationFailure(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cannot read input: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code: 1 malformed input, 2 precondition violation, 3 resource cap.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidDiagram(_) | Error::Parse(_) | Error::Io(_) | Error::Json(_) => 1,
            Error::CapExceeded { .. } => 3,
            _ => 2,
        }
    }
}
