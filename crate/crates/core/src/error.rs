use thiserror::Error;

/// Errors raised by ring arithmetic, inverse computation and the transfer checks.
#[derive(Debug, Error)]
pub enum Error {
    #[error("operands live in different rings: {left} vs {right}")]
    ContextMismatch { left: String, right: String },

    #[error("invalid ring context: {0}")]
    InvalidContext(String),

    #[error("malformed element: {0}")]
    MalformedElement(String),

    #[error("enumeration of {needed} items exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    #[error("operation `{op}` is not supported in {context}")]
    Unsupported { op: &'static str, context: String },

    #[error("hypothesis a(ba)^2 = abaca = acaba = (ac)^2a does not hold")]
    HypothesisViolated,

    #[error("the identity aba = aca does not hold")]
    StrongHypothesisViolated,

    #[error("{0} has no inverse of the requested kind")]
    MissingInverse(&'static str),

    #[error("supplied witness is invalid: {0}")]
    InvalidWitness(String),

    /// A computed result failed its own defining equations. Under the stated
    /// preconditions this is an implementation bug.
    #[error("certification failed: {0}")]
    CertificationFailed(String),

    /// An exactly checked instance contradicts a proved statement.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    /// A sweep hit a triple on which a checked statement fails.
    #[error("{theorem} fails on triple #{index}: {message}; triple = {triple}")]
    Counterexample { theorem: String, index: u64, triple: String, message: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
