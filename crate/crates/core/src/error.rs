use thiserror::Error;

/// Errors raised by poset, module and graded-structure constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field modulus {0}: must be a prime with 2 <= p < 2^31")]
    InvalidField(u64),

    #[error("relation closure contains a cycle through `{0}` and `{1}`")]
    Cycle(String, String),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("duplicate element `{0}`")]
    DuplicateElement(String),

    #[error("operation needs a non-empty set")]
    EmptySet,

    #[error("{what} too large: {size} exceeds limit {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("functoriality fails for the pair ({0}, {1}): cover-path composites disagree")]
    Functoriality(String, String),

    #[error("`{0}` and `{1}` are not comparable")]
    NotComparable(String, String),

    #[error("the given set is not an interval")]
    NotAnInterval,

    #[error("modules live over different posets or fields")]
    MismatchedBase,

    #[error("no solution: right-hand side is outside the column span")]
    NoSolution,

    #[error("module is not generated by the given set (births outside it: {0:?})")]
    NotGenerated(Vec<String>),

    #[error("module is not presented by the given set (births/deaths outside it: {0:?})")]
    NotPresented(Vec<String>),

    #[error("module is not determined by the given set")]
    NotDetermined,

    #[error("internal assertion failed: {0}")]
    AssertionFailure(String),

    #[error("poset is not a grid: {0}")]
    NotAGrid(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("smash module is not unital")]
    NotUnital,

    #[error("tuple arity mismatch ({0} vs {1})")]
    ArityMismatch(usize, usize),

    #[error("axiom violated: {0}")]
    Violation(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: {inner}")]
    AtLine { line: usize, inner: Box<Error> },
}

impl Error {
    pub(crate) fn at_line(self, line: usize) -> Error {
        match self {
            e @ (Error::Parse { .. } | Error::AtLine { .. }) => e,
            e => Error::AtLine {
                line,
                inner: Box::new(e),
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
