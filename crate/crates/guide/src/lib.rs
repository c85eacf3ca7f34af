//! The chapters of the lgsim guide. Each module is one chapter.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/superposition.md")]
pub mod superposition {}

#[doc = include_str!("../../../book/src/correlators.md")]
pub mod correlators {}

#[doc = include_str!("../../../book/src/ancilla.md")]
pub mod ancilla {}

#[doc = include_str!("../../../book/src/noise.md")]
pub mod noise {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
