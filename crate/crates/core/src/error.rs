use thiserror::Error;

/// Errors raised while reading DIMACS CNF or lin2 text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing problem header")]
    MissingHeader,
    #[error("malformed header `{0}`")]
    MalformedHeader(String),
    #[error("duplicate problem header")]
    DuplicateHeader,
    #[error("invalid token `{0}`")]
    InvalidToken(String),
    #[error("variable {var} out of range 1..={num_vars}")]
    VariableOutOfRange { var: i64, num_vars: usize },
    #[error("empty clause")]
    EmptyClause,
    #[error("tautological clause (contains x{0} and -x{0})")]
    Tautology(u32),
    #[error("duplicate literal {0} in clause")]
    DuplicateLiteral(i64),
    #[error("expected {expected} entries, found {found}")]
    CountMismatch { expected: usize, found: usize },
    #[error("unterminated final entry (missing trailing 0)")]
    Unterminated,
    #[error("weight must be positive")]
    NonPositiveWeight,
    #[error("right-hand side must be 1 or -1, found {0}")]
    BadRhs(String),
    #[error("empty equation support")]
    EmptySupport,
    #[error("duplicate variable {0} in equation support")]
    DuplicateVariable(u32),
}

/// Errors raised by the algorithms on malformed arguments or exhausted
/// budgets.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("assignment has {found} values but the instance has {expected} variables")]
    LengthMismatch { expected: usize, found: usize },
    #[error("invalid literal: {0}")]
    InvalidLiteral(String),
    #[error("invalid clause: {0}")]
    InvalidClause(String),
    #[error("invalid equation: {0}")]
    InvalidEquation(String),
    #[error("search space of {vars} variables exceeds the budget of {budget}")]
    BudgetExceeded { vars: usize, budget: usize },
    #[error("system is not reduced with respect to the merge and rank rules")]
    NotRuleStable,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
