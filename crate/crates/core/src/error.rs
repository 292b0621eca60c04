use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Coarse failure classes; the CLI maps these onto exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Usage,
    Validation,
    Violation,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("group axiom violated: {0}")]
    AxiomViolation(String),
    #[error("generator closure exceeded cap of {cap} elements")]
    NotClosed { cap: usize },
    #[error("{what} exceeds cap {cap}")]
    CapExceeded { what: String, cap: usize },
    #[error("invalid input: {0}")]
    InputError(String),
    #[error("cannot parse {0}")]
    ParseError(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("no monic irreducible of degree {k} over GF({p})")]
    NoIrreducibleFound { p: u64, k: u32 },
    #[error("group algebra over {field} is not semisimple for a group of order {order}")]
    NotSemisimple { field: String, order: usize },
    #[error("{field} has no primitive root of unity of order {n}")]
    NoSuchRoot { field: String, n: u64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("action axiom violated: {0}")]
    ActionAxiomViolation(String),
    #[error("action is not transitive")]
    NotTransitive,
    #[error("mismatched context: {0}")]
    MismatchedContext(String),
    #[error("function is identically zero")]
    ZeroFunction,
    #[error("group is not abelian")]
    NotAbelian,
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("irrep degrees squared sum to {got}, expected group order {expected}")]
    WrongDegreeSum { got: usize, expected: usize },
    #[error("Schur orthogonality fails: {0}")]
    OrthogonalityFailure(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("support is the whole set; no complement to cover")]
    FullSupport,
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::ParseError(_) => ErrorClass::Usage,
            Error::InvariantViolation(_) => ErrorClass::Violation,
            _ => ErrorClass::Validation,
        }
    }
}

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InputError(msg.into()))
}

pub(crate) fn violation<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvariantViolation(msg.into()))
}
