//! Runs the guide's code listings as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/polygons.md")]
pub mod polygons {}

#[doc = include_str!("../../../book/src/transformation.md")]
pub mod transformation {}

#[doc = include_str!("../../../book/src/spectrum.md")]
pub mod spectrum {}

#[doc = include_str!("../../../book/src/regions.md")]
pub mod regions {}

#[doc = include_str!("../../../book/src/design.md")]
pub mod design {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
