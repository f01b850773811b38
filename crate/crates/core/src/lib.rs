//! Finite computations with modules over presented categories: submodule
//! lattices, Gabriel filters, torsion and localization.

pub mod cmodule;
pub mod error;
pub mod filters;
pub mod linalg;
pub mod localization;
pub mod presentation;
pub mod sample;

pub use error::{Error, Result};
