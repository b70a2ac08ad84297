//! Runs every Rust snippet of the guide under `book/src` as a doc test.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/bundles.md")]
pub mod bundles {}
#[doc = include_str!("../../../book/src/rho.md")]
pub mod rho {}
#[doc = include_str!("../../../book/src/classification.md")]
pub mod classification {}
#[doc = include_str!("../../../book/src/families.md")]
pub mod families {}
#[doc = include_str!("../../../book/src/witness.md")]
pub mod witness {}
#[doc = include_str!("../../../book/src/forms.md")]
pub mod forms {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
