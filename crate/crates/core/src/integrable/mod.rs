//! Conserved-current towers, the Lax pair and perturbative solvers.

mod lax;
mod lightcone;
mod poincare;
mod solvers;
mod tower;

pub use lax::{lax_pair, LaxPair};
pub use lightcone::inverse_wave;
pub use poincare::{extract_potential, integrate_closed_one_form};
pub use solvers::{chiral_residual, solve_chiral_perturbative, solve_sigma_perturbative, SigmaSolution};
pub use tower::{
    build_tower, integrability_residual, lemma_residual, master_residuals, next_current, Certificate, Tower,
    DEFAULT_DEPTH,
};
