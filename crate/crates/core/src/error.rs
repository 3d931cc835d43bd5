use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArrangementError {
    #[error("an arrangement needs at least 2 pseudolines, got {0}")]
    TooFewLines(usize),
    #[error("at most {} pseudolines are supported, got {0}", crate::arrangement::MAX_LINES)]
    TooManyLines(usize),
    #[error("expected {expected} swaps, found {found}")]
    WrongSwapCount { expected: usize, found: usize },
    /// `step` is 1-based.
    #[error("swap {step} at position {position} is outside 1..={}", .n - 1)]
    PositionOutOfRange { step: usize, position: usize, n: usize },
    /// `step` is 1-based; `lines` are the two labels, smaller first.
    #[error("swap {step} crosses lines {} and {} a second time", .lines.0, .lines.1)]
    RepeatedCrossing { step: usize, lines: (usize, usize) },
    #[error("resource limit: {0}")]
    ResourceLimit(String),
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unexpected end of input while reading the {what}")]
    UnexpectedEof { what: &'static str },
    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        #[source]
        source: ArrangementError,
    },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SweepError {
    #[error("face {0} is not an inner face")]
    NotInnerFace(usize),
    #[error("the rope does not contain the bottom chain of face {0}")]
    BottomChainNotOnRope(usize),
    #[error("vertex {0} is s or t")]
    TerminalVertex(usize),
    #[error("the dual rope does not cross every incoming edge of vertex {0}")]
    PreconditionNotMet(usize),
    #[error("the rope and dual rope do not cross")]
    NoCrossing,
    #[error("the rope and dual rope cross {0} times")]
    MultipleCrossings(usize),
    #[error("invariant violated at step {step}: {message}")]
    InvariantViolation { step: usize, message: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OptimalError {
    #[error("face set is not a down-set: face {0} is swept before one of its predecessors")]
    NotADownSet(usize),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CutwidthError {
    #[error("graph has {vertices} vertices, solver bound is {limit}")]
    TooLarge { vertices: usize, limit: usize },
    #[error("directed graph contains a cycle")]
    NotAcyclic,
    #[error("graph contains a self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge ({0}, {1}) refers to a missing vertex")]
    BadEdge(usize, usize),
    #[error("isolated vertex {0}")]
    IsolatedVertex(usize),
    #[error("isolated edge ({0}, {1})")]
    IsolatedEdge(usize, usize),
    #[error("expected an undirected graph")]
    ExpectedUndirected,
    #[error("expected a directed graph")]
    ExpectedDirected,
    #[error("order is not a permutation of the {0} vertices")]
    NotAPermutation(usize),
    #[error("order is not topological: edge ({0}, {1}) points backwards")]
    NotTopological(usize, usize),
}
