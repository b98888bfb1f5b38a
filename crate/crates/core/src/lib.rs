//! Equivariant mod 2 chains on finite simplicial models.

pub mod catalog;
pub mod cellmodel;
pub mod equivariant;
pub mod error;
pub mod filtered;
pub mod gf2;
pub mod splitting;

pub use error::{Error, Result};
