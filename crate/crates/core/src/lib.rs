//! Exact computations with simple Lie algebras over the rationals:
//! nilpotent orbits, reachability, sheets, and the closure order of null-cone
//! strata of a visible representation.

pub mod cache;
pub mod convex;
pub mod error;
pub mod hwmod;
pub mod liealg;
pub mod linalg;
pub mod modp;
pub mod nullcone;
pub mod orbits;
pub mod rational;
pub mod rootsys;
pub mod sheets;
pub mod sparse;
pub mod subalg;

pub use error::{Error, Result};
pub use rational::Rat;
