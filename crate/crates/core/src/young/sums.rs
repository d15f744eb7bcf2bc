//! Summation rules over transpositions `(a, m)` for matrices in the PRIR
//! basis. Each function computes the left-hand side numerically; the
//! closed forms live in the tests and in `verify`.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::symmetric::{added_content, character, dim_irrep, inductions, restrictions, Partition, Permutation};
use crate::young::irrep::{yor_matrix, PrirIndex};

fn diag_block(mu: &Partition, sigma: &Permutation, alpha: &Partition) -> Result<DMatrix<f64>> {
    let index = PrirIndex::new(mu);
    let b = index.block(alpha)?;
    let full = yor_matrix(mu, sigma)?;
    Ok(full.view((b.offset, b.offset), (b.size, b.size)).into_owned())
}

fn off_block(mu: &Partition, sigma: &Permutation, alpha: &Partition, beta: &Partition) -> Result<DMatrix<f64>> {
    let index = PrirIndex::new(mu);
    let (r, c) = (index.block(alpha)?, index.block(beta)?);
    let full = yor_matrix(mu, sigma)?;
    Ok(full.view((r.offset, c.offset), (r.size, c.size)).into_owned())
}

fn check_range(name: &str, v: usize, hi: usize) -> Result<()> {
    if v == 0 || v > hi {
        return Err(Error::InvalidArgument(format!("{name} = {v} outside 1..={hi}")));
    }
    Ok(())
}

/// `Σ_{a=1}^{m} ψ^μ[(a,m)]^{αβ} ψ^ν[(a,m)]^{βγ}`, with `(m,m)` the identity.
///
/// Equals `m (d_β / d_μ) δ_{μν} δ_{αγ} Id`.
pub fn bilinear_transposition_sum(
    mu: &Partition,
    nu: &Partition,
    alpha: &Partition,
    beta: &Partition,
    gamma: &Partition,
) -> Result<DMatrix<f64>> {
    let m = mu.size();
    if nu.size() != m {
        return Err(Error::InvalidArgument(format!(
            "{mu} and {nu} are partitions of different integers"
        )));
    }
    let mut acc: Option<DMatrix<f64>> = None;
    for a in 1..=m {
        let t = Permutation::transposition(m, a, m);
        let term = off_block(mu, &t, alpha, beta)? * off_block(nu, &t, beta, gamma)?;
        acc = Some(match acc {
            Some(s) => s + term,
            None => term,
        });
    }
    acc.ok_or_else(|| Error::InvalidArgument("empty partition".into()))
}

/// `χ(transposition) · #transpositions / d`, i.e. the central character of
/// the class sum of transpositions.
pub(crate) fn transposition_class_value(mu: &Partition) -> Rational {
    let m = mu.size();
    if m < 2 {
        return Rational::from_integer(0);
    }
    let mut class = vec![2];
    class.extend(std::iter::repeat_n(1, m - 2));
    let class = Partition::new(class).expect("valid cycle type");
    let pairs = (m * (m - 1) / 2) as i128;
    Rational::new(pairs * character(mu, &class) as i128, dim_irrep(mu) as i128)
}

/// `Σ_{a=1}^{m-1} ψ^μ[(a,m)]^{αα}` together with the scalar it is a multiple
/// of, computed from characters: the difference of the transposition class
/// values of `μ` and `α`.
pub fn block_transposition_sum(mu: &Partition, alpha: &Partition) -> Result<(DMatrix<f64>, i64)> {
    let m = mu.size();
    let size = PrirIndex::new(mu).block(alpha)?.size;
    let mut acc = DMatrix::zeros(size, size);
    for a in 1..m {
        acc += diag_block(mu, &Permutation::transposition(m, a, m), alpha)?;
    }
    let scalar = transposition_class_value(mu) - transposition_class_value(alpha);
    debug_assert!(scalar.is_integer());
    Ok((acc, scalar.to_integer() as i64))
}

/// `Σ_{ν = α + □} d_ν ψ^ν[γ (b,k)]^{αα}` for `α ⊢ k-1`, `γ ∈ S(k-1)` and
/// `b ∈ 1..=k`. Equals `k d_α δ_{b,k} φ^α(γ)`.
pub fn coset_block_sum(alpha: &Partition, gamma: &Permutation, b: usize) -> Result<DMatrix<f64>> {
    let k = alpha.size() + 1;
    if gamma.degree() > k - 1 {
        return Err(Error::InvalidArgument(format!(
            "permutation of degree {} does not fix {k}",
            gamma.degree()
        )));
    }
    check_range("b", b, k)?;
    let sigma = gamma.embed(k).compose(&Permutation::transposition(k, b, k));
    induced_block_sum(alpha, &sigma)
}

/// `Σ_{ν = α + □} d_ν ψ^ν[(a,k) σ (b,k)]^{αα}` for `α ⊢ k-1` and `σ ∈ S(k)`.
/// Equals `k d_α δ_{a,σ(b)} φ^α[(a,k) σ (b,k)]`.
pub fn conjugated_transposition_sum(
    alpha: &Partition,
    sigma: &Permutation,
    a: usize,
    b: usize,
) -> Result<DMatrix<f64>> {
    let k = alpha.size() + 1;
    if sigma.degree() != k {
        return Err(Error::InvalidArgument(format!(
            "expected a permutation of degree {k}, got {}",
            sigma.degree()
        )));
    }
    check_range("a", a, k)?;
    check_range("b", b, k)?;
    let t = Permutation::transposition(k, a, k)
        .compose(sigma)
        .compose(&Permutation::transposition(k, b, k));
    induced_block_sum(alpha, &t)
}

fn induced_block_sum(alpha: &Partition, sigma: &Permutation) -> Result<DMatrix<f64>> {
    let size = dim_irrep(alpha) as usize;
    let mut acc = DMatrix::zeros(size, size);
    for nu in inductions(alpha) {
        acc += diag_block(&nu, sigma, alpha)? * dim_irrep(&nu) as f64;
    }
    Ok(acc)
}

/// `Σ_{a=1}^{m} d^{δ_{a,m}} ψ^ν[(a,m)]^{αα}`: the transposition block sum
/// with the identity term weighted by `d`. Equals `(d + c(ν/α)) Id`.
pub fn weighted_block_sum(nu: &Partition, alpha: &Partition, d: u32) -> Result<DMatrix<f64>> {
    if d == 0 {
        return Err(Error::InvalidArgument("d must be positive".into()));
    }
    let (sum, _) = block_transposition_sum(nu, alpha)?;
    let n = sum.nrows();
    Ok(sum + DMatrix::identity(n, n) * d as f64)
}

/// Content of the box `ν / α`, or `InvalidBlock`.
pub fn block_content(nu: &Partition, alpha: &Partition) -> Result<i64> {
    if !restrictions(nu).contains(alpha) {
        return Err(Error::InvalidBlock {
            mu: nu.clone(),
            block: alpha.clone(),
        });
    }
    Ok(added_content(alpha, nu).expect("restriction is a branch"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;
    use crate::symmetric::partitions_of;
    use nalgebra::dmatrix;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn bilinear_examples() {
        let m = bilinear_transposition_sum(&p("2,1"), &p("2,1"), &p("2"), &p("2"), &p("2")).unwrap();
        assert!((m[(0, 0)] - 1.5).abs() < 1e-12);
        let z = bilinear_transposition_sum(&p("3"), &p("2,1"), &p("2"), &p("2"), &p("2")).unwrap();
        assert!(z[(0, 0)].abs() < 1e-12);
        let m = bilinear_transposition_sum(&p("2"), &p("2"), &p("1"), &p("1"), &p("1")).unwrap();
        assert!((m[(0, 0)] - 2.0).abs() < 1e-12);
        assert!(matches!(
            bilinear_transposition_sum(&p("2,1"), &p("2,1"), &p("3"), &p("2"), &p("2")),
            Err(Error::InvalidBlock { .. })
        ));
    }

    #[test]
    fn block_transposition_examples() {
        assert_eq!(block_transposition_sum(&p("2"), &p("1")).unwrap().1, 1);
        assert_eq!(block_transposition_sum(&p("1,1"), &p("1")).unwrap().1, -1);
        let (m, s) = block_transposition_sum(&p("2,1"), &p("1,1")).unwrap();
        assert_eq!(s, 1);
        assert!(max_abs_diff(&m, &dmatrix![1.0]) < 1e-12);
    }

    #[test]
    fn block_transposition_scalar_is_content() {
        for m in 1..=6 {
            for mu in partitions_of(m, None) {
                for alpha in restrictions(&mu) {
                    let (mat, s) = block_transposition_sum(&mu, &alpha).unwrap();
                    assert_eq!(s, block_content(&mu, &alpha).unwrap());
                    let id = DMatrix::identity(mat.nrows(), mat.ncols()) * s as f64;
                    assert!(max_abs_diff(&mat, &id) < 1e-10, "{mu} {alpha}");
                }
            }
        }
    }

    #[test]
    fn coset_examples() {
        let id1 = Permutation::identity(1);
        assert!(max_abs_diff(&coset_block_sum(&p("1"), &id1, 2).unwrap(), &dmatrix![2.0]) < 1e-12);
        assert!(max_abs_diff(&coset_block_sum(&p("1"), &id1, 1).unwrap(), &dmatrix![0.0]) < 1e-12);
        let g = Permutation::transposition(2, 1, 2);
        assert!(max_abs_diff(&coset_block_sum(&p("2"), &g, 3).unwrap(), &dmatrix![3.0]) < 1e-12);
    }

    #[test]
    fn conjugated_examples() {
        let id2 = Permutation::identity(2);
        let same = conjugated_transposition_sum(&p("1"), &id2, 1, 1).unwrap();
        assert!(max_abs_diff(&same, &dmatrix![2.0]) < 1e-12);
        let other = conjugated_transposition_sum(&p("1"), &id2, 1, 2).unwrap();
        assert!(max_abs_diff(&other, &dmatrix![0.0]) < 1e-12);
        let id3 = Permutation::identity(3);
        let s = conjugated_transposition_sum(&p("2"), &id3, 2, 2).unwrap();
        assert!(max_abs_diff(&s, &dmatrix![3.0]) < 1e-12);
        let tiny = conjugated_transposition_sum(&Partition::empty(), &Permutation::identity(1), 1, 1).unwrap();
        assert!(max_abs_diff(&tiny, &dmatrix![1.0]) < 1e-12);
    }

    #[test]
    fn weighted_examples() {
        assert!(max_abs_diff(&weighted_block_sum(&p("2"), &p("1"), 2).unwrap(), &dmatrix![3.0]) < 1e-12);
        assert!(max_abs_diff(&weighted_block_sum(&p("1,1"), &p("1"), 2).unwrap(), &dmatrix![1.0]) < 1e-12);
        assert!(max_abs_diff(&weighted_block_sum(&p("2,1"), &p("2"), 3).unwrap(), &dmatrix![2.0]) < 1e-12);
    }
}
