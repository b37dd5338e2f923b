//! Exact computation with finite-dimensional Hopf algebras given by
//! structure constants: smash products, two-sided and diagonal crossed
//! products, the algebras whose left modules are the Hopf bimodules over
//! `H*`, explicit isomorphisms between them, and verification of every
//! module correspondence.

pub mod actions;
pub mod algebra;
pub mod catalog;
pub mod bimodule;
pub mod check;
pub mod crossed;
pub mod error;
pub mod format;
pub mod iso;
pub mod linalg;
pub mod radical;
pub mod scalar;

pub use error::{Error, Result};
