//! Exact computations in the free Lie algebra `L(x, y)`.
//!
//! Elements are [`LiePoly`] values: rational combinations of Hall words.
//! Any bracket expression is rewritten into that basis, so equal elements
//! compare equal. On top of this the crate implements the derivation
//! `δ(x) = 0, δ(y) = x`, solves for its constants one bidegree at a time,
//! builds pseudodeterminants and tests which subalgebras contain the
//! constants.
//!
//! ```
//! use freelie::{bracket, delta, parse};
//!
//! let a = parse("[y,x,y]").unwrap();
//! assert_eq!(delta(&a), parse("[y,x,x]").unwrap());
//!
//! // [A, δA] is a constant.
//! let m = bracket(&a, &delta(&a));
//! assert!(delta(&m).is_zero());
//! assert_eq!(m.to_string(), "[y,x,y,[y,x,x]]");
//! ```
//!
//! Shared tables (Hall bases, products, images under `δ`) are filled lazily
//! behind locks and never modified once an entry exists, so all functions
//! may be called from several threads.

pub mod constants;
pub mod derivation;
pub mod error;
pub mod hall;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod pseudodet;
pub mod reproduce;
pub mod subalgebra;
pub mod witt;

pub use constants::{
    constants_up_to, delta_matrix, kernel_basis, linear_equation_solutions, DeltaMatrix,
    KernelComponent, KernelReport,
};
pub use derivation::{delta, delta_power, leibniz_expand, nilpotency_index, DerivationSpec};
pub use error::{Error, ParseError};
pub use hall::{
    hall_basis, hall_basis_multidegree, hall_compare, is_basic, HallWord, Letter, MultiDegree, Tree,
};
pub use linalg::{in_span, nullspace, rref, Matrix, RationalVector};
pub use parse::{format, parse, parse_word};
pub use poly::{bracket, bracket_words, normalize, normalize_tree, LiePoly, Scalar};
pub use pseudodet::{
    analyze_constant_monomial, check_delta_split, decompose_bracket_power,
    enumerate_constant_pseudodets, make_pseudodet, MonomialAnalysis, MonomialClass, PseudoDet,
    Shape,
};
pub use subalgebra::{
    conjecture_check, graded_closure, membership_report, ConjectureReport, ContainmentReport,
    GradedSubalgebra,
};
pub use witt::witt_dim;
