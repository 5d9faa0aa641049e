//! Modified double Poisson brackets: the double Leibniz extension of a
//! generator table, the induced Loday bracket, axiom sweeps, right
//! Casimirs and the Jacobiator decomposition.

mod bracket;
pub mod builtins;
mod jacobiator;
mod sweep;

pub use bracket::BracketDef;
pub use jacobiator::{apply_r, d1, d2, defect_sweep, jacobiator_defect, jacobiator_defect_closed_form, mu_d1_d2};
pub use sweep::{casimir_check, jacobiator, verify_axioms, JacobiC, Side};

#[cfg(test)]
mod tests;
