//! Partitions, permutations and the exact integer combinatorics of `S(m)`.

mod counting;
mod partition;
mod permutation;

pub use counting::{
    added_content, character, class_size, dim_irrep, factorial, multiplicity, multiplicity_character_sum,
    multiplicity_character_sum_with_limit, CharacterTable, DEFAULT_FACTORIAL_LIMIT,
};
pub use partition::{add_box, branch, inductions, partitions_of, remove_box, restrictions, BoxMove, Partition};
pub use permutation::Permutation;
