use thiserror::Error;

use crate::formula::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
}

impl FormulaError {
    pub(crate) fn shifted(self, offset: usize) -> FormulaError {
        match self {
            FormulaError::Syntax { pos, msg } => FormulaError::Syntax { pos: pos + offset, msg },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetError {
    #[error("pruning budget exceeded: {ands} conjunctions, cap is {cap}")]
    PruningBudget { ands: usize, cap: usize },
    #[error("sequents differ: `{left}` vs `{right}`")]
    SequentMismatch { left: String, right: String },
    #[error("expected a two-formula sequent, found {found} formulas")]
    Arity { found: usize },
    #[error("cut formulas are not dual: `{left}` vs `{right}`")]
    CutMismatch { left: String, right: String },
    #[error("formula index {index} out of range for a sequent of length {len}")]
    NoSuchFormula { index: usize, len: usize },
    #[error("invalid linking: {0}")]
    Invalid(String),
    #[error("unknown anchor `k{0}`")]
    UnknownAnchor(u32),
    #[error("anchor bound exceeded: {count} anchors, bound is {bound}")]
    AnchorBound { count: usize, bound: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElabError {
    #[error("type mismatch in {context}: `{expected}` vs `{found}`")]
    Type { context: String, expected: Formula, found: Formula },
    #[error("{0}")]
    Shape(String),
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("generator `{name}` takes {expected} object parameters, got {found}")]
    Arity { name: String, expected: usize, found: usize },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("`{name}` is not a proof net: {reason}")]
    NotCorrect { name: String, reason: String },
    #[error(transparent)]
    Net(#[from] NetError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SexpError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{0}")]
    Form(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error(transparent)]
    Sexp(#[from] SexpError),
    #[error("entry `{id}`: {msg}")]
    Entry { id: String, msg: String },
    #[error("duplicate entry `{0}`")]
    Duplicate(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetFileError {
    #[error("malformed net JSON at line {line}, column {column}: {msg}")]
    Json { line: usize, column: usize, msg: String },
    #[error("bad anchor reference `{0}` (expected `k<number>`)")]
    AnchorRef(String),
    #[error("duplicate anchor `{0}`")]
    DuplicateAnchor(String),
    #[error("simple nets carry no anchors or counts above 1")]
    NotSimple,
    #[error(transparent)]
    Net(#[from] NetError),
}

impl From<serde_json::Error> for NetFileError {
    fn from(e: serde_json::Error) -> NetFileError {
        NetFileError::Json { line: e.line(), column: e.column(), msg: e.to_string() }
    }
}
