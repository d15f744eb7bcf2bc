//! Young's orthogonal form and the PRIR block structure.

pub(crate) mod irrep;
pub(crate) mod sums;
mod tableau;

pub use irrep::{prir_block, yor, yor_transposition, IrrepMatrix, PrirBlock, PrirIndex};
pub use sums::{
    bilinear_transposition_sum, block_content, block_transposition_sum, conjugated_transposition_sum, coset_block_sum,
    weighted_block_sum,
};
pub use tableau::{standard_tableaux, YoungTableau};
