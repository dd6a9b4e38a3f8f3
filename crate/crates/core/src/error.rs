use thiserror::Error;

use crate::hall::MultiDegree;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("degree {0} exceeds the supported maximum")]
    DegreeTooLarge(u32),
    #[error("invalid multidegree {0:?}, expected `a,b`")]
    InvalidMultiDegree(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("expected a single Hall word, got `{0}`")]
    NotAHallWord(String),
    #[error("the zero polynomial has no {0}")]
    ZeroPolynomial(&'static str),
    #[error("`{0}` is a letter, expected a bracket")]
    LeafInput(String),
    #[error("`{0}` is not a constant")]
    NotConstant(String),
    #[error("`{0}` is not homogeneous")]
    Inhomogeneous(String),
    #[error("generator `{word}` has degree {degree} above the bound {bound}")]
    GeneratorAboveBound {
        word: String,
        degree: u32,
        bound: u32,
    },
    #[error("subalgebra bound {subalgebra} is below the kernel report bound {kernel}")]
    BoundMismatch { subalgebra: u32, kernel: u32 },
    #[error("vector of length {found} in a space of dimension {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("no component at multidegree {0}")]
    MissingComponent(MultiDegree),
}

/// Failure to read an expression; `pos` is a byte offset into the input.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown letter `{letter}` at {pos}")]
    UnknownLetter { pos: usize, letter: char },
    #[error("malformed rational `{text}` at {pos}")]
    Rational { pos: usize, text: String },
}
