//! Exact exterior algebra: k-forms, Kähler forms, `τ_k` invariants and the
//! canonical forms of the Clifford systems on ℝ⁸ and ℝ¹⁶.

mod action;
mod blade;
mod canonical;
pub(crate) mod kernel;
mod kform;
mod matrix;

pub use action::{lie_action, LieOperator};
pub use blade::{Blade, MAX_AMBIENT};
pub use canonical::{
    canonical_form, cayley_form, omega_l, psi_generators, psi_matrix, theta_matrix, CanonicalName, PsiFamily,
};
pub use kform::{FormJson, FormTermJson, KForm};
pub use matrix::{kaehler_form, FormMatrix};
