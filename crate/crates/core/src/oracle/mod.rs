//! Brute-force operators on `(C^d)^{⊗n}`: the ground truth every closed
//! form is checked against.

mod checks;
mod operators;
mod sparse;

use serde::Serialize;

pub use checks::{fidelity_bruteforce, sandwich_checks, spectrum, SandwichReport, SpectrumReport};
pub use operators::{
    flip_operator_dense, flip_projector_dense, group_projector, isotypic_projector, matrix_unit, pbt_rho,
    permutation_operator, projector_f_dense, vprime, ProjectorKind,
};
pub use sparse::SparseOperator;

/// Hard limits on brute-force work. Exceeding one is an error, never a
/// silent truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budgets {
    /// Largest allowed `d^n`.
    pub dim: usize,
    /// Largest allowed order of a group summed over.
    pub factorial: u128,
}

impl Default for Budgets {
    fn default() -> Self {
        Self {
            dim: 16384,
            factorial: 5040,
        }
    }
}

/// Eigenvalues closer than this are reported as one cluster.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-6;
