use thiserror::Error;

use crate::symbol::Symbol;
use crate::tree::NodeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which operand of a concatenation was rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operand {
    Left,
    Right,
}

impl std::fmt::Display for Operand {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Operand::Left => f.write_str("left"),
            Operand::Right => f.write_str("right"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid symbol {0:?}: tokens must be non-empty and contain no whitespace")]
    InvalidSymbol(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: duplicate rule for symbol {symbol}")]
    DuplicateRule { symbol: Symbol, line: usize },

    #[error("symbol {0} has no rule")]
    MissingRule(Symbol),

    #[error("grammar has no axiom")]
    EmptyAxiom,

    #[error("unknown symbol {symbol} at position {position}")]
    UnknownSymbol { symbol: Symbol, position: usize },

    #[error("derivation trees need a single-symbol axiom, got {0} symbols")]
    MultiSymbolAxiom(usize),

    #[error("invalid law set: {0}")]
    InvalidLaws(String),

    #[error("{operand} operand {word:?} violates the laws")]
    IllFormedOperand { operand: Operand, word: String },

    #[error("string {0:?} violates the laws")]
    IllFormedString(String),

    #[error("n-gram length {n} out of range for a string of length {len}")]
    NGramLength { n: usize, len: usize },

    #[error("breadth {breadth} out of range 1..={max}")]
    BreadthOutOfRange { breadth: usize, max: usize },

    #[error("label mismatch: expected {expected}, found {found}")]
    LabelMismatch { expected: Symbol, found: Symbol },

    #[error("node {0} is not a leaf")]
    NotALeaf(NodeId),

    #[error("no node with id {0}")]
    NoSuchNode(NodeId),

    #[error("empty candidate set")]
    EmptyCandidates,

    #[error("candidates disagree on root label: {0} and {1}")]
    MixedRoots(Symbol, Symbol),

    #[error("symbol {0} is outside the law alphabet and has no mapping")]
    AlphabetMismatch(Symbol),

    #[error("expected a binary alphabet over {{0, 1}}, found {0}")]
    NonBinary(Symbol),

    #[error("tree syntax error at offset {offset}: {message}")]
    TreeSyntax { offset: usize, message: String },

    #[error("row must contain at least one cell")]
    EmptyRow,

    #[error("rows have unequal lengths ({expected} vs {found})")]
    RaggedHistory { expected: usize, found: usize },
}
