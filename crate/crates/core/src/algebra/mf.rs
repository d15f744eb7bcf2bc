//! Matrix forms of algebra elements in the reduced basis `MfIndex`.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::algebra::index::MfIndex;
use crate::error::{Error, Result};
use crate::symmetric::{dim_irrep, multiplicity, Partition, Permutation};
use crate::young::irrep::{yor_matrix, PrirIndex};

/// Columns of `ψ^ν[σ]` restricted to the `α` block: `d_ν × d_α`.
fn alpha_columns(nu: &Partition, alpha: &Partition, sigma: &Permutation) -> Result<DMatrix<f64>> {
    let b = PrirIndex::new(nu).block(alpha)?.clone();
    let psi = yor_matrix(nu, sigma)?;
    Ok(psi.columns(b.offset, b.size).into_owned())
}

fn check_a(a: usize, n: usize) -> Result<()> {
    if a == 0 || a > n - 1 {
        return Err(Error::InvalidArgument(format!("a = {a} outside 1..={}", n - 1)));
    }
    Ok(())
}

/// Matrix form of `V′[(a,n)]`.
pub fn mf_vprime(alpha: &Partition, a: usize, n: usize, d: u32) -> Result<DMatrix<f64>> {
    let index = MfIndex::new(alpha, n, d)?;
    check_a(a, n)?;
    let k = n - 1;
    let t = Permutation::transposition(k, a, k);
    let da = dim_irrep(alpha) as f64;
    let cols: Vec<DMatrix<f64>> = index
        .blocks
        .iter()
        .map(|b| alpha_columns(&b.nu, alpha, &t))
        .collect::<Result<_>>()?;
    let mut out = DMatrix::zeros(index.dim(), index.dim());
    for (bw, aw) in index.blocks.iter().zip(&cols) {
        for (bv, av) in index.blocks.iter().zip(&cols) {
            // ψ^ν is orthogonal, so the (α, ·) rows of ψ^ν[t] are the
            // transposed (·, α) columns of ψ^ν[t⁻¹] = ψ^ν[t].
            let c = ((bw.size * bv.size) as f64).sqrt() / da / k as f64 * ((bw.lambda * bv.lambda) as f64).sqrt();
            let block = aw * av.transpose() * c;
            out.view_mut((bw.offset, bv.offset), (bw.size, bv.size))
                .copy_from(&block);
        }
    }
    Ok(out)
}

/// Matrix form of `V(σ)` for `σ ∈ S(n-1)`: block diagonal `ψ^ν(σ)`.
pub fn mf_group_element(alpha: &Partition, sigma: &Permutation, n: usize, d: u32) -> Result<DMatrix<f64>> {
    let index = MfIndex::new(alpha, n, d)?;
    if sigma.degree() != n - 1 {
        return Err(Error::InvalidArgument(format!(
            "expected a permutation of degree {}, got {}",
            n - 1,
            sigma.degree()
        )));
    }
    let mut out = DMatrix::zeros(index.dim(), index.dim());
    for b in &index.blocks {
        out.view_mut((b.offset, b.offset), (b.size, b.size))
            .copy_from(&yor_matrix(&b.nu, sigma)?);
    }
    Ok(out)
}

/// Matrix form of the projector `F_ν(α)`: ones on the rows of `ν`.
pub fn mf_projector(alpha: &Partition, nu: &Partition, n: usize, d: u32) -> Result<DMatrix<f64>> {
    let index = MfIndex::new(alpha, n, d)?;
    let b = index.require(nu)?;
    let mut out = DMatrix::zeros(index.dim(), index.dim());
    for r in b.offset..b.offset + b.size {
        out[(r, r)] = 1.0;
    }
    Ok(out)
}

/// Orthonormal eigenvectors of `mf_vprime(a)` for eigenvalue `d`, one column
/// per basis vector of `α`: entries `√(m_ρ/(d m_α)) ψ^ρ[(a,n-1)]^{ξ_ρ α}`.
pub fn eigvecs_w(alpha: &Partition, a: usize, n: usize, d: u32) -> Result<DMatrix<f64>> {
    let index = MfIndex::new(alpha, n, d)?;
    check_a(a, n)?;
    let m_alpha = multiplicity(alpha, d);
    if m_alpha == 0 {
        return Err(Error::ZeroMultiplicity {
            alpha: alpha.clone(),
            d,
        });
    }
    let k = n - 1;
    let t = Permutation::transposition(k, a, k);
    let da = dim_irrep(alpha) as usize;
    let mut out = DMatrix::zeros(index.dim(), da);
    for b in &index.blocks {
        let scale = (multiplicity(&b.nu, d) as f64 / (d as f64 * m_alpha as f64)).sqrt();
        out.view_mut((b.offset, 0), (b.size, da))
            .copy_from(&(alpha_columns(&b.nu, alpha, &t)? * scale));
    }
    Ok(out)
}

/// Normalisation of a flip-operator matrix form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FlipScale {
    /// The matrix unit `E^{μν}_{ij}(α)`.
    Unit,
    /// `√(m_μ m_ν)/m_α · E^{μν}_{ij}(α)`, the form of `P_μ E^α_{ij} V′ P_ν`.
    Dense,
}

/// Matrix form of the flip operator `E^{μν}_{ij}(α)`: a single entry at row
/// `(μ, α, i)` and column `(ν, α, j)`. Zero when `μ` or `ν` is not kept.
#[allow(clippy::too_many_arguments)]
pub fn flip_matrix_form(
    alpha: &Partition,
    mu: &Partition,
    nu: &Partition,
    i: usize,
    j: usize,
    n: usize,
    d: u32,
    scale: FlipScale,
) -> Result<DMatrix<f64>> {
    let index = MfIndex::new(alpha, n, d)?;
    let da = dim_irrep(alpha) as usize;
    if i == 0 || j == 0 || i > da || j > da {
        return Err(Error::InvalidArgument(format!(
            "basis indices ({i}, {j}) outside 1..={da}"
        )));
    }
    let mut out = DMatrix::zeros(index.dim(), index.dim());
    if let (Some(r), Some(c)) = (index.alpha_row(mu, i), index.alpha_row(nu, j)) {
        out[(r, c)] = match scale {
            FlipScale::Unit => 1.0,
            FlipScale::Dense => {
                let m = |p: &Partition| multiplicity(p, d) as f64;
                (m(mu) * m(nu)).sqrt() / m(alpha)
            }
        };
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;
    use nalgebra::dmatrix;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn vprime_examples() {
        let m = mf_vprime(&p("1"), 2, 3, 2).unwrap();
        let r3 = 3f64.sqrt();
        assert!(max_abs_diff(&m, &(dmatrix![3.0, r3; r3, 1.0] * 0.5)) < 1e-14);
        assert!((m.trace() - 2.0).abs() < 1e-14);
        assert_eq!(mf_vprime(&Partition::empty(), 1, 2, 4).unwrap(), dmatrix![4.0]);
    }

    #[test]
    fn group_element_examples() {
        let g = mf_group_element(&p("1"), &Permutation::transposition(2, 1, 2), 3, 2).unwrap();
        assert_eq!(g, dmatrix![1.0, 0.0; 0.0, -1.0]);
        let id = mf_group_element(&p("2,1"), &Permutation::identity(4), 5, 3).unwrap();
        assert_eq!(id, DMatrix::identity(id.nrows(), id.nrows()));
    }

    #[test]
    fn projector_examples() {
        assert_eq!(
            mf_projector(&p("1"), &p("2"), 3, 2).unwrap(),
            dmatrix![1.0, 0.0; 0.0, 0.0]
        );
        assert_eq!(
            mf_projector(&p("1"), &p("1,1"), 3, 2).unwrap(),
            dmatrix![0.0, 0.0; 0.0, 1.0]
        );
        assert!(matches!(
            mf_projector(&p("1,1"), &p("1,1,1"), 4, 2),
            Err(Error::NotKept { .. })
        ));
    }

    #[test]
    fn eigenvector_examples() {
        let w = eigvecs_w(&p("1"), 2, 3, 2).unwrap();
        assert!(max_abs_diff(&w, &dmatrix![3f64.sqrt() / 2.0; 0.5]) < 1e-14);
        let m = mf_vprime(&p("1"), 2, 3, 2).unwrap();
        assert!(max_abs_diff(&(&m * &w), &(&w * 2.0)) < 1e-14);
        assert!(max_abs_diff(&(w.transpose() * &w), &dmatrix![1.0]) < 1e-14);
        assert!(max_abs_diff(&(&w * w.transpose() * 2.0), &m) < 1e-14);
    }

    #[test]
    fn flip_examples() {
        let e = flip_matrix_form(&p("1"), &p("2"), &p("2"), 1, 1, 3, 2, FlipScale::Unit).unwrap();
        assert_eq!(e, dmatrix![1.0, 0.0; 0.0, 0.0]);
        let e = flip_matrix_form(&p("1"), &p("2"), &p("1,1"), 1, 1, 3, 2, FlipScale::Unit).unwrap();
        assert_eq!(e, dmatrix![0.0, 1.0; 0.0, 0.0]);
        let e = flip_matrix_form(&p("1"), &p("2"), &p("1,1"), 1, 1, 3, 2, FlipScale::Dense).unwrap();
        assert!((e[(0, 1)] - 3f64.sqrt() / 2.0).abs() < 1e-14);
        let e = flip_matrix_form(&p("1"), &p("3"), &p("2"), 1, 1, 3, 2, FlipScale::Unit).unwrap();
        assert_eq!(e, DMatrix::zeros(2, 2));
    }
}
