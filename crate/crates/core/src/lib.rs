//! Exact evaluation and verification of Hankel-type determinants of Catalan
//! numbers, generalised Catalan numbers and ternary sequences.
//!
//! The crate builds each determinant family, evaluates it with several
//! independent exact engines, evaluates the matching closed form, and counts
//! the underlying non-intersecting lattice path families by brute force.

pub mod arith;
pub mod closed_forms;
pub mod determinants;
pub mod error;
pub mod harness;
pub mod lgv;
pub mod matrices;
pub mod sequences;

pub use arith::{Integer, Rational};
pub use error::{Error, Result};
