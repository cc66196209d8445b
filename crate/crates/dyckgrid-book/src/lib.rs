//! Runs the guide chapters as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/grids.md")]
pub mod grids {}

#[doc = include_str!("../../../book/src/surfaces.md")]
pub mod surfaces {}

#[doc = include_str!("../../../book/src/minors.md")]
pub mod minors {}

#[doc = include_str!("../../../book/src/width.md")]
pub mod width {}

#[doc = include_str!("../../../book/src/connectivity.md")]
pub mod connectivity {}

#[doc = include_str!("../../../book/src/societies.md")]
pub mod societies {}

#[doc = include_str!("../../../book/src/transforms.md")]
pub mod transforms {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

#[doc = include_str!("../../../README.md")]
pub mod readme {}
