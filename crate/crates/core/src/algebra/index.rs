use serde::Serialize;

use crate::error::{Error, Result};
use crate::symmetric::{branch, dim_irrep, inductions, Partition};

/// Basis vector `(ν, ξ_ν, j)`: tableau `j` (1-based) inside the `ξ_ν` block
/// of the irrep `ν`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BasisLabel {
    pub nu: Partition,
    pub xi: Partition,
    pub j: usize,
}

/// Contiguous run of rows belonging to one `ν`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MfBlock {
    pub nu: Partition,
    pub offset: usize,
    pub size: usize,
    /// `λ_ν(α) = d + c(ν/α)`.
    pub lambda: i64,
}

/// Reduced basis for the matrix forms over `α ⊢ n-2`: every `ν = α + □`
/// with `h(ν) ≤ d` and `λ_ν(α) > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MfIndex {
    pub alpha: Partition,
    pub n: usize,
    pub d: u32,
    pub blocks: Vec<MfBlock>,
    pub rows: Vec<BasisLabel>,
}

impl MfIndex {
    pub fn new(alpha: &Partition, n: usize, d: u32) -> Result<Self> {
        if n < 2 || alpha.size() + 2 != n {
            return Err(Error::InvalidArgument(format!(
                "alpha = {alpha} must be a partition of n - 2 (n = {n})"
            )));
        }
        let mut blocks = Vec::new();
        let mut offset = 0;
        for nu in inductions(alpha) {
            let lambda = d as i64 + branch(alpha, &nu).expect("induction").content;
            if !is_kept(&nu, lambda, d) {
                continue;
            }
            let size = dim_irrep(&nu) as usize;
            blocks.push(MfBlock {
                nu,
                offset,
                size,
                lambda,
            });
            offset += size;
        }
        let rows = crate::algebra::spectrum::induced_labels(alpha, |nu| blocks.iter().any(|b| &b.nu == nu));
        Ok(Self {
            alpha: alpha.clone(),
            n,
            d,
            blocks,
            rows,
        })
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn block(&self, nu: &Partition) -> Option<&MfBlock> {
        self.blocks.iter().find(|b| &b.nu == nu)
    }

    pub fn require(&self, nu: &Partition) -> Result<&MfBlock> {
        self.block(nu).ok_or_else(|| Error::NotKept {
            alpha: self.alpha.clone(),
            nu: nu.clone(),
            d: self.d,
        })
    }

    /// Row of `(ν, ξ_ν = α, i)`, `i` 1-based.
    pub fn alpha_row(&self, nu: &Partition, i: usize) -> Option<usize> {
        self.rows
            .iter()
            .position(|l| &l.nu == nu && l.xi == self.alpha && l.j == i)
    }
}

fn is_kept(nu: &Partition, lambda: i64, d: u32) -> bool {
    nu.height() <= d as usize && lambda > 0
}
