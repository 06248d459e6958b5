//! Exact matrix kernels: signed permutations for every generator, dense
//! rationals and sparse fraction-free echelon forms for linear solving.

mod rational;
mod signed_perm;
mod sparse;

pub use rational::RationalMatrix;
pub use signed_perm::{MatrixJson, MatrixKind, SignedPermMatrix};
pub use sparse::{SparseEchelon, SparseRow};
