//! Small dense helpers on top of `nalgebra`.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

/// Row-major JSON form of a dense matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl From<&DMatrix<f64>> for MatrixJson {
    fn from(m: &DMatrix<f64>) -> Self {
        let data = (0..m.nrows())
            .flat_map(|i| (0..m.ncols()).map(move |j| m[(i, j)]))
            .collect();
        Self {
            rows: m.nrows(),
            cols: m.ncols(),
            data,
        }
    }
}

impl From<&MatrixJson> for DMatrix<f64> {
    fn from(m: &MatrixJson) -> Self {
        DMatrix::from_row_slice(m.rows, m.cols, &m.data)
    }
}

pub fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |acc, v| acc.max(v.abs()))
}

pub fn max_abs_diff(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch");
    a.iter().zip(b.iter()).fold(0.0, |acc, (x, y)| acc.max((x - y).abs()))
}

/// Largest entry of `m - m^T`.
pub fn asymmetry(m: &DMatrix<f64>) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in (i + 1)..m.ncols() {
            worst = worst.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    worst
}

/// Eigenvalues of a symmetric matrix, sorted descending.
pub fn symmetric_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let mut values: Vec<f64> = SymmetricEigen::new(m.clone()).eigenvalues.iter().copied().collect();
    values.sort_by(|a, b| b.total_cmp(a));
    values
}

/// Moore–Penrose pseudo-inverse square root of a positive semi-definite
/// matrix. Eigenvalues below `rel_cutoff * λ_max` count as zero.
pub fn pinv_sqrt(m: &DMatrix<f64>, rel_cutoff: f64) -> DMatrix<f64> {
    let eig = SymmetricEigen::new(m.clone());
    let lmax = eig.eigenvalues.iter().fold(0.0f64, |a, &b| a.max(b));
    let cutoff = rel_cutoff * lmax;
    let n = m.nrows();
    let mut out = DMatrix::zeros(n, n);
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda <= cutoff {
            continue;
        }
        let v = eig.eigenvectors.column(k);
        out += (v * v.transpose()) / lambda.sqrt();
    }
    out
}

/// Block-diagonal matrix from square blocks.
pub fn block_diagonal(blocks: &[DMatrix<f64>]) -> DMatrix<f64> {
    let n: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = DMatrix::zeros(n, n);
    let mut offset = 0;
    for b in blocks {
        out.view_mut((offset, offset), b.shape()).copy_from(b);
        offset += b.nrows();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::dmatrix;

    #[test]
    fn pinv_sqrt_on_a_rank_one_projector() {
        let p = dmatrix![2.0, 2.0; 2.0, 2.0];
        let r = pinv_sqrt(&p, 1e-9);
        // p = 4 |v><v| with |v> = (1,1)/√2, so p^{-1/2} = |v><v| / 2.
        assert!(max_abs_diff(&r, &dmatrix![0.25, 0.25; 0.25, 0.25]) < 1e-14);
    }

    #[test]
    fn json_round_trip() {
        let m = dmatrix![1.0, 2.0, 3.0; 4.0, 5.0, 6.0];
        let j = MatrixJson::from(&m);
        assert_eq!(j.data, vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        assert_eq!(DMatrix::from(&j), m);
    }
}
