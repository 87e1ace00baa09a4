use thiserror::Error;

/// Errors raised by the engine. Messages are part of the CLI surface and
/// are printed verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no elimination variable")]
    NoEliminationVariable,
    #[error("identically zero")]
    IdenticallyZero,
    #[error("unassigned variable {0}")]
    UnassignedVariable(String),
    #[error("zero divisor")]
    ZeroDivisor,
    #[error("sign undefined on nonreal element")]
    SignOfNonreal,
    #[error("degree budget exhausted (degree {degree} exceeds {budget})")]
    DegreeBudget { degree: usize, budget: usize },
    #[error("precision budget exhausted")]
    PrecisionBudget,
    #[error("polynomial is constant in Z")]
    ConstantPolynomial,
    #[error("selector out of range: {0}")]
    SelectorOutOfRange(String),
    #[error("degenerate leading coefficient: {0}")]
    DegenerateLeadingCoefficient(String),
    #[error("not a Singer configuration: {0}")]
    NotSingerConfiguration(String),
    #[error("retry budget exhausted after {0} halvings")]
    RetryBudgetExhausted(u32),
    #[error("nondegeneracy failure: {0}")]
    NondegeneracyFailure(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unallocated tag #{0}")]
    UnallocatedTag(u32),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("session format version mismatch: expected `{expected}`, found `{found}`")]
    VersionMismatch { expected: String, found: String },
    #[error("corrupt record {index}: {message}")]
    CorruptRecord { index: usize, message: String },
    #[error("truncated session file; last valid record is {last_valid}")]
    Truncated { last_valid: usize },
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
