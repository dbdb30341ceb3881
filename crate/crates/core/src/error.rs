//! Error type shared by every module of the crate.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A split product (`≺`, `≻`, `·`) was asked to extract the first letter
    /// of an empty word. The paper leaves these cases undefined.
    EmptyOperand { op: &'static str },
    /// `unbinarize` was given a binary word that is not of the form
    /// `x^{a_1} y ... x^{a_k} y`.
    NotInImage(String),
    /// A tree product or decomposition was given the bare leaf `|`.
    LeafInput { op: &'static str },
    /// A (quasi-)shuffle map was applied to trees whose comb lengths do not
    /// match its `(k, l)` signature.
    ArityMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    /// Both operands of a split product carried a unit component; the
    /// augmented algebra does not define `1 ≺ 1`, `1 ≻ 1` or `1 · 1`.
    UnitProductUndefined,
    /// Evaluation was requested for a word or tree outside the convergent
    /// subspace. Carries the offending object.
    DivergentWord(String),
    NotConvergent(String),
    /// Quadrature rejected a word longer than the configured depth cap.
    DepthExceeded { depth: usize, max: usize },
    /// `azv_direct` rejected a tree with too many internal vertices.
    TooManyVertices { count: usize, max: usize },
    /// `shintani_eval` rejected a datum with too many columns.
    TooManyColumns { count: usize, max: usize },
    /// Invalid evaluation configuration or unsupported product piece.
    InvalidConfig(String),
    /// Text input did not match the documented grammar. `pos` is a byte
    /// offset into the input.
    Parse { msg: String, pos: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyOperand { op } => {
                write!(f, "{op}: the constrained operand is the empty word, which the split products leave undefined")
            }
            Error::NotInImage(w) => {
                write!(f, "binary word `{w}` does not end with y, so it is not in the image of the binarization map")
            }
            Error::LeafInput { op } => write!(f, "{op}: the leaf `|` is not a valid operand"),
            Error::ArityMismatch { expected, found } => write!(
                f,
                "shuffle signature ({}, {}) does not match comb lengths ({}, {})",
                expected.0, expected.1, found.0, found.1
            ),
            Error::UnitProductUndefined => {
                write!(f, "split product of two unit components is undefined")
            }
            Error::DivergentWord(w) => write!(
                f,
                "word `{w}` is divergent: series words must not start with 1, integral words must start with x and end with y"
            ),
            Error::NotConvergent(t) => write!(f, "tree `{t}` is not convergent"),
            Error::DepthExceeded { depth, max } => {
                write!(f, "word of length {depth} exceeds quadrature depth cap {max}")
            }
            Error::TooManyVertices { count, max } => {
                write!(f, "tree has {count} internal vertices, direct summation caps at {max}")
            }
            Error::TooManyColumns { count, max } => {
                write!(f, "datum has {count} columns, evaluation caps at {max}")
            }
            Error::InvalidConfig(msg) => write!(f, "{msg}"),
            Error::Parse { msg, pos } => write!(f, "parse error at byte {pos}: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
