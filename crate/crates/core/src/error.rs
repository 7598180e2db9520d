use crate::algebra::Algebra;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("carrier mismatch: element of {left} combined with element of {right}")]
    CarrierMismatch { left: Algebra, right: Algebra },

    #[error("infimum of an empty list (use one() for the empty meet)")]
    EmptyInfimum,

    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown constant `{name}`")]
    UnknownConstant { name: String },

    #[error("undeclared variable `{name}`")]
    UndeclaredVariable { name: String },

    #[error("variable `{name}` has no value at this point")]
    UnassignedVariable { name: String },

    #[error("{vars} variables exceed the blow-up limit of {limit}")]
    BlowUpLimit { vars: usize, limit: usize },

    #[error("enumeration needs {needed} points, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    #[error("operation requires a finite algebra, got {0}")]
    InfiniteAlgebra(Algebra),

    #[error("element `{element}` does not belong to {algebra}")]
    ForeignElement { element: String, algebra: Algebra },

    #[error("point has {got} coordinates, expected {expected}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("invalid split order: {0}")]
    InvalidOrder(String),

    #[error("precondition violated: {constraint}")]
    Precondition { constraint: String },

    #[error("not weakly replaceable under current knowledge: {0}")]
    NoKnownInfimum(String),

    #[error("constant subalgebras are not isomorphic: {0}")]
    NonIsomorphicConstants(String),

    #[error("generated subalgebra exceeds {limit} elements")]
    SubalgebraTooLarge { limit: usize },

    #[error("no E_k-system exists over an algebra with finitely generated constants: {0}")]
    NoetherianFixture(String),

    #[error("{0}")]
    Io(String),
}

impl Error {
    pub(crate) fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    /// Source position for syntax errors.
    pub fn position(&self) -> Option<(usize, usize)> {
        match self {
            Error::Syntax { line, column, .. } => Some((*line, *column)),
            _ => None,
        }
    }
}
