//! Doc-tests for the guide under `book/`. Each chapter is included as the
//! documentation of an empty module so its listings compile and run with
//! `cargo test`.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/cayley_dickson.md")]
pub mod cayley_dickson {}

#[doc = include_str!("../../../book/src/sphere_models.md")]
pub mod sphere_models {}

#[doc = include_str!("../../../book/src/laws.md")]
pub mod laws {}

#[doc = include_str!("../../../book/src/join_multiplication.md")]
pub mod join_multiplication {}

#[doc = include_str!("../../../book/src/hopf.md")]
pub mod hopf {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
