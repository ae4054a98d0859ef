//! Guide chapters and the README, compiled as doc-tests so their snippets
//! stay in sync with the API.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/bloch-geometry.md")]
pub mod bloch_geometry {}

#[doc = include_str!("../../../book/src/distances.md")]
pub mod distances {}

#[doc = include_str!("../../../book/src/dynamics.md")]
pub mod dynamics {}

#[doc = include_str!("../../../book/src/speed.md")]
pub mod speed {}

#[doc = include_str!("../../../book/src/bounds.md")]
pub mod bounds {}

#[doc = include_str!("../../../book/src/robustness.md")]
pub mod robustness {}

#[doc = include_str!("../../../book/src/experiments.md")]
pub mod experiments {}

#[doc = include_str!("../../../README.md")]
pub mod readme {}
