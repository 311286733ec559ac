//! The book, compiled as doctests.
//!
//! The mdbook under `book/` is the narrative guide to this crate. Each
//! chapter is included here as module documentation so `cargo test` runs
//! every code block the book shows — the guide cannot drift from the API.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/equivalent-noise.md")]
pub mod equivalent_noise {}

#[doc = include_str!("../../../book/src/minimal-power.md")]
pub mod minimal_power {}

#[doc = include_str!("../../../book/src/layered-bounds.md")]
pub mod layered_bounds {}

#[doc = include_str!("../../../book/src/uplink-duality.md")]
pub mod uplink_duality {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli_tool {}
