//! Exact construction and verification of the Clifford systems `C_1 … C_16`,
//! their invariant exterior forms, Lie-algebra spans, the rank-10 even
//! Clifford structure on ℝ³², and Hurwitz–Radon vector fields.
//!
//! Everything is exact: generators are signed permutation matrices, forms
//! carry rational coefficients, and linear algebra is fraction-free.

pub mod algebras;
pub mod clifford;
pub mod error;
pub mod evencliff;
pub mod exactmat;
pub mod forms;
pub mod liealg;
pub mod selftest;
pub mod spheres;

pub use error::{Error, Result};
