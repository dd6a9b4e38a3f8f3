//! The chapters of the guide in `book/src`, included as documentation so
//! that `cargo test` compiles and runs every snippet.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/hall-basis.md")]
pub mod hall_basis {}

#[doc = include_str!("../../../book/src/normal-form.md")]
pub mod normal_form {}

#[doc = include_str!("../../../book/src/derivation.md")]
pub mod derivation {}

#[doc = include_str!("../../../book/src/constants.md")]
pub mod constants {}

#[doc = include_str!("../../../book/src/pseudodeterminants.md")]
pub mod pseudodeterminants {}

#[doc = include_str!("../../../book/src/subalgebras.md")]
pub mod subalgebras {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

#[doc = include_str!("../../../README.md")]
pub mod readme {}
