//! Closed-form matrices of the algebra generated by `V(S(n-1))` and the
//! partially transposed swap `V′`, labelled by `α ⊢ n-2`.

mod decomposition;
mod index;
mod mf;
pub(crate) mod spectrum;

pub use decomposition::{natural_decomposition, AlphaRecord, DecompositionReport, NuRecord};
pub use index::{BasisLabel, MfBlock, MfIndex};
pub use mf::{eigvecs_w, flip_matrix_form, mf_group_element, mf_projector, mf_vprime, FlipScale};
pub use spectrum::{
    build_q, build_z, eigenvalue_character, eigenvalue_content, eigenvalue_multiplicity_formula, q_spectrum,
    QEigenvalue, QMatrix, ZMatrix,
};
