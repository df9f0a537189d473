use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("unknown letter '{letter}' at position {position}")]
    UnknownLetter { letter: char, position: usize },
}

/// Failures of level expansion and the symbolic block calculus.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecursionError {
    #[error("unknown generator '{0}'")]
    UnknownGenerator(char),
    #[error("level {requested} exceeds the level cap {cap} (resource limit, not a mathematical failure)")]
    LevelCapExceeded { requested: usize, cap: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Errors of the system-definition language. Positions are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("{line}:{column}: syntax error at '{token}': expected {expected}")]
    Syntax { line: usize, column: usize, token: String, expected: String },
    #[error("{line}:{column}: undeclared generator '{name}'")]
    UndeclaredGenerator { line: usize, column: usize, name: char },
    #[error("{line}:{column}: block shape mismatch: {detail}")]
    ShapeMismatch { line: usize, column: usize, detail: String },
    #[error("{line}:{column}: generator '{name}' declared twice")]
    DuplicateGenerator { line: usize, column: usize, name: char },
    #[error("{line}:{column}: {detail}")]
    Invalid { line: usize, column: usize, detail: String },
    #[error("missing `system <name> arity <m>` header")]
    MissingHeader,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonomialError {
    #[error("not a monomial system: {0}")]
    NotMonomialSystem(String),
    #[error("zero monomial has no type")]
    ZeroHasNoType,
    #[error("word {0} does not factor over the blocks {{t, st}}")]
    NotFactorable(String),
    #[error("zero test visited more than {0} states without settling")]
    SearchBudgetExceeded(usize),
    #[error(transparent)]
    Word(#[from] WordError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrowthError {
    #[error("memory budget exceeded: {needed} bytes of stored words, cap {cap}")]
    MemoryBudgetExceeded { needed: usize, cap: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Monomial(#[from] MonomialError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FibError {
    #[error("invalid partition {parts:?} of {n}")]
    InvalidPartition { n: usize, parts: Vec<usize> },
    #[error("delta {delta} outside [0, {max}] for n = {n}")]
    DeltaOutOfRange { n: usize, delta: String, max: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Umbrella error for callers that drive several modules.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Recursion(#[from] RecursionError),
    #[error(transparent)]
    Dsl(#[from] DslError),
    #[error(transparent)]
    Monomial(#[from] MonomialError),
    #[error(transparent)]
    Growth(#[from] GrowthError),
    #[error(transparent)]
    Fib(#[from] FibError),
}

impl Error {
    /// Resource exhaustion (caps and budgets) as opposed to bad input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::Recursion(RecursionError::LevelCapExceeded { .. })
                | Error::Monomial(MonomialError::SearchBudgetExceeded(_))
                | Error::Growth(GrowthError::MemoryBudgetExceeded { .. })
        )
    }
}
