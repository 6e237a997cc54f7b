use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // scalar ring
    #[error("division by zero")]
    DivisionByZero,
    #[error("{divisor} does not divide {dividend} exactly")]
    DivisionNotExact { dividend: String, divisor: String },
    #[error("raw alternating sum {sum} is not divisible by {divisor} in the integers")]
    ScalarNotDivisible { sum: String, divisor: String },
    #[error("syntax error: {0}")]
    Syntax(String),

    // input files
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },

    // posets and semilattices
    #[error("cover relation contains a cycle through element {0}")]
    CycleDetected(usize),
    #[error("element index {index} out of range for {size} elements")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("not a meet-semilattice: elements {0} and {1} have no greatest lower bound")]
    NotAMeetSemilattice(usize, usize),
    #[error("element {0} lies below no member of the ordered subset")]
    NotBelowAny(usize),
    #[error("unknown element label {0:?}")]
    UnknownLabel(String),
    #[error("ordering is not a linear extension of the subset")]
    InvalidLinearExtension,

    // hypermatrices
    #[error("F-map arity {found} does not match hypermatrix order k-2 = {expected}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("evaluation would enumerate {terms} terms (limit {limit}); pass --force to override")]
    GuardExceeded { terms: String, limit: u64 },

    // closed forms
    #[error("index set must be the whole semilattice")]
    IndexSetNotWholeLattice,
    #[error("index set is not meet-closed: {0}")]
    SubsetNotMeetClosed(String),
    #[error("index set is not factor-closed (missing element {0})")]
    SubsetNotFactorClosed(String),
    #[error("functions F_x are not identical on common arguments ({0})")]
    FunctionsNotUniform(String),
    #[error("z_{x} = {z} is not below {x}")]
    GroundNotBelow { x: String, z: String },
    #[error("method requires z_x = x for every x (violated at {0})")]
    GroundingNotIdentity(String),
    #[error("index set is empty")]
    EmptyIndexSet,
    #[error("method {method} needs {needs}")]
    MethodNotApplicable { method: String, needs: String },

    // integers
    #[error("set is not gcd-closed: gcd({0}, {1}) is missing; use gcd_closure")]
    NotGcdClosed(u64, u64),
    #[error("expected positive integers, got {0}")]
    NonPositiveInteger(i64),
    #[error("arithmetic function defined up to {bound}, asked for {n}")]
    OutOfBound { bound: u64, n: u64 },
}

impl Error {
    /// Process exit code for the CLI: 2 for malformed input, 3 for a
    /// violated precondition or guard.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Syntax(_) | Error::Parse { .. } | Error::Io { .. } => 2,
            _ => 3,
        }
    }
}
