//! The guide's chapters, compiled as doc comments so `cargo test` runs
//! their snippets.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/fields.md")]
pub mod fields {}

#[doc = include_str!("../../../book/src/representations.md")]
pub mod representations {}

#[doc = include_str!("../../../book/src/unitarity.md")]
pub mod unitarity {}

#[doc = include_str!("../../../book/src/certificates.md")]
pub mod certificates {}

#[doc = include_str!("../../../book/src/products.md")]
pub mod products {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
