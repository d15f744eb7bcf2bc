use thiserror::Error;

use crate::symmetric::Partition;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} = {value} exceeds the configured limit {limit}")]
    LimitExceeded {
        what: &'static str,
        value: u128,
        limit: u128,
    },

    #[error("{what} = {value} exceeds the budget {budget}")]
    BudgetExceeded {
        what: &'static str,
        value: u128,
        budget: u128,
    },

    #[error("block {block} is not obtained by removing one box from {mu}")]
    InvalidBlock { mu: Partition, block: Partition },

    #[error("{nu} is not obtained by adding one box to {alpha}")]
    NotBranch { alpha: Partition, nu: Partition },

    #[error("multiplicity of {alpha} vanishes at d = {d}")]
    ZeroMultiplicity { alpha: Partition, d: u32 },

    #[error("{nu} is not kept in the reduced basis of {alpha} at d = {d}")]
    NotKept { alpha: Partition, nu: Partition, d: u32 },

    #[error("eigenvalue of {nu} over {alpha} is zero at d = {d}")]
    ZeroEigenvalue { alpha: Partition, nu: Partition, d: u32 },

    #[error("operator is not hermitian (asymmetry {0:e})")]
    NotHermitian(f64),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Budget errors map to a distinct process exit status in the CLI.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. } | Error::LimitExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
