//! Explicit operators on `(C^d)^{⊗n}` built from permutations.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::oracle::sparse::SparseOperator;
use crate::oracle::Budgets;
use crate::symmetric::{branch, dim_irrep, factorial, multiplicity, CharacterTable, Partition, Permutation};
use crate::young::irrep::yor_matrix;

/// Permutations per parallel work unit. Fixed so that summation order, and
/// therefore every floating-point result, is independent of the thread count.
const CHUNK: usize = 64;

pub(crate) fn check_dim(n: usize, d: usize, budgets: &Budgets) -> Result<()> {
    let dim = (d as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if dim > budgets.dim as u128 {
        return Err(Error::BudgetExceeded {
            what: "tensor space dimension d^n",
            value: dim,
            budget: budgets.dim as u128,
        });
    }
    Ok(())
}

pub(crate) fn check_group(k: usize, budgets: &Budgets) -> Result<()> {
    let order = factorial(k).to_u128().unwrap_or(u128::MAX);
    if order > budgets.factorial {
        return Err(Error::BudgetExceeded {
            what: "group order",
            value: order,
            budget: budgets.factorial,
        });
    }
    Ok(())
}

/// Digits of a basis index, most significant (first factor) first.
fn digits(mut index: usize, n: usize, d: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for slot in out.iter_mut().rev() {
        *slot = index % d;
        index /= d;
    }
    out
}

/// Column `c` ↦ row of `V(σ)`: factor `k` moves to slot `σ(k)`.
fn permuted_index(sigma: &[usize], col: usize, n: usize, d: usize) -> usize {
    let src = digits(col, n, d);
    let mut dst = vec![0; n];
    for (k, &v) in src.iter().enumerate() {
        dst[sigma.get(k).copied().unwrap_or(k)] = v;
    }
    dst.iter().fold(0, |acc, &v| acc * d + v)
}

/// `V(σ)` acting on `n` factors; `σ` may have smaller degree, in which case
/// the remaining factors are fixed.
pub fn permutation_operator(sigma: &Permutation, n: usize, d: usize, budgets: &Budgets) -> Result<SparseOperator> {
    if sigma.degree() > n {
        return Err(Error::InvalidArgument(format!(
            "permutation of degree {} on {n} factors",
            sigma.degree()
        )));
    }
    check_dim(n, d, budgets)?;
    let dim = d.pow(n as u32);
    let images = sigma.images();
    Ok(SparseOperator::from_triplets(
        n,
        d,
        (0..dim).map(|c| (permuted_index(images, c, n, d), c, 1.0)),
    ))
}

/// `Σ_σ c(σ) V(σ)` over `S(k)` acting on the first `k` of `n` factors.
fn group_sum(
    k: usize,
    n: usize,
    d: usize,
    budgets: &Budgets,
    coef: impl Fn(&Permutation) -> f64 + Sync,
) -> Result<SparseOperator> {
    check_dim(n, d, budgets)?;
    check_group(k, budgets)?;
    let perms: Vec<Permutation> = Permutation::all(k).collect();
    let dim = d.pow(n as u32);
    let partials: Vec<Vec<BTreeMap<usize, f64>>> = perms
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut rows: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); dim];
            for sigma in chunk {
                let c = coef(sigma);
                if c == 0.0 {
                    continue;
                }
                for col in 0..dim {
                    let r = permuted_index(sigma.images(), col, n, d);
                    *rows[r].entry(col).or_insert(0.0) += c;
                }
            }
            rows
        })
        .collect();
    let mut rows: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); dim];
    for part in partials {
        for (acc, row) in rows.iter_mut().zip(part) {
            for (c, v) in row {
                *acc.entry(c).or_insert(0.0) += v;
            }
        }
    }
    Ok(SparseOperator::from_rows(n, d, rows))
}

/// `V′[(a,n)] = V[(a,n)]^{t_n}`.
pub fn vprime(a: usize, n: usize, d: usize, budgets: &Budgets) -> Result<SparseOperator> {
    Ok(permutation_operator(&Permutation::transposition(n, a, n), n, d, budgets)?.partial_transpose_last())
}

/// Which group-algebra element to build.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProjectorKind {
    /// Isotypic projector `P_μ` of `S(n-1)`.
    PMu(Partition),
    /// Isotypic projector `P_α` of `S(n-2)`.
    PAlpha(Partition),
    /// Matrix unit `E^α_{ij} = (d_α/(n-2)!) Σ_π φ^α_{ji}(π⁻¹) V(π)`, 1-based `i, j`.
    EAlpha { alpha: Partition, i: usize, j: usize },
}

pub fn group_projector(kind: &ProjectorKind, n: usize, d: usize, budgets: &Budgets) -> Result<SparseOperator> {
    match kind {
        ProjectorKind::PMu(mu) => {
            expect_size(mu, n - 1)?;
            isotypic_projector(mu, n, d, budgets)
        }
        ProjectorKind::PAlpha(alpha) => {
            expect_size(alpha, n.saturating_sub(2))?;
            isotypic_projector(alpha, n, d, budgets)
        }
        ProjectorKind::EAlpha { alpha, i, j } => {
            expect_size(alpha, n.saturating_sub(2))?;
            matrix_unit(alpha, *i, *j, n, d, budgets)
        }
    }
}

fn expect_size(p: &Partition, k: usize) -> Result<()> {
    if p.size() != k {
        return Err(Error::InvalidArgument(format!("{p} is not a partition of {k}")));
    }
    Ok(())
}

/// `(d_μ/k!) Σ_{σ ∈ S(k)} χ^μ(σ⁻¹) V(σ)` with `k = |μ|`.
pub fn isotypic_projector(mu: &Partition, n: usize, d: usize, budgets: &Budgets) -> Result<SparseOperator> {
    let k = mu.size();
    check_group(k, budgets)?;
    let scale = dim_irrep(mu) as f64 / factorial(k).to_f64().expect("small factorial");
    let mut table = CharacterTable::default();
    let chars: BTreeMap<Partition, f64> = crate::symmetric::partitions_of(k, None)
        .into_iter()
        .map(|c| {
            let v = table.value(mu, &c) as f64;
            (c, v)
        })
        .collect();
    group_sum(k, n, d, budgets, |s| scale * chars[&s.cycle_type()])
}

pub fn matrix_unit(
    alpha: &Partition,
    i: usize,
    j: usize,
    n: usize,
    d: usize,
    budgets: &Budgets,
) -> Result<SparseOperator> {
    let k = alpha.size();
    let da = dim_irrep(alpha) as usize;
    if i == 0 || j == 0 || i > da || j > da {
        return Err(Error::InvalidArgument(format!("indices ({i}, {j}) outside 1..={da}")));
    }
    check_group(k, budgets)?;
    let scale = da as f64 / factorial(k).to_f64().expect("small factorial");
    group_sum(k, n, d, budgets, |s| {
        let m = yor_matrix(alpha, &s.inverse()).expect("degree matches");
        scale * m[(j - 1, i - 1)]
    })
}

fn m(p: &Partition, d: usize) -> f64 {
    multiplicity(p, d as u32) as f64
}

/// `E^{μν}_{ij}(α) = (m_α/√(m_μ m_ν)) P_μ E^α_{ij} V′ P_ν`; zero unless both
/// `μ` and `ν` are `α` plus a box with nonzero multiplicity.
#[allow(clippy::too_many_arguments)]
pub fn flip_operator_dense(
    alpha: &Partition,
    mu: &Partition,
    nu: &Partition,
    i: usize,
    j: usize,
    n: usize,
    d: usize,
    budgets: &Budgets,
) -> Result<SparseOperator> {
    check_dim(n, d, budgets)?;
    if branch(alpha, mu).is_none() || branch(alpha, nu).is_none() || m(mu, d) == 0.0 || m(nu, d) == 0.0 {
        return Ok(SparseOperator::zero(n, d));
    }
    let pm = isotypic_projector(mu, n, d, budgets)?;
    let pn = isotypic_projector(nu, n, d, budgets)?;
    let e = matrix_unit(alpha, i, j, n, d, budgets)?;
    let v = vprime(n - 1, n, d, budgets)?;
    let c = m(alpha, d) / (m(mu, d) * m(nu, d)).sqrt();
    Ok(pm.mul(&e).mul(&v).mul(&pn).scale(c))
}

/// `P^{μν}(α) = (m_α/√(m_μ m_ν)) P_μ P_α V′ P_ν`.
pub fn flip_projector_dense(
    alpha: &Partition,
    mu: &Partition,
    nu: &Partition,
    n: usize,
    d: usize,
    budgets: &Budgets,
) -> Result<SparseOperator> {
    check_dim(n, d, budgets)?;
    if branch(alpha, mu).is_none() || branch(alpha, nu).is_none() || m(mu, d) == 0.0 || m(nu, d) == 0.0 {
        return Ok(SparseOperator::zero(n, d));
    }
    let pm = isotypic_projector(mu, n, d, budgets)?;
    let pa = isotypic_projector(alpha, n, d, budgets)?;
    let pn = isotypic_projector(nu, n, d, budgets)?;
    let v = vprime(n - 1, n, d, budgets)?;
    let c = m(alpha, d) / (m(mu, d) * m(nu, d)).sqrt();
    Ok(pm.mul(&pa).mul(&v).mul(&pn).scale(c))
}

/// `F_ν(α) = (1/λ)(d_ν/(n-1)!) Σ_b Σ_γ tr[ψ^ν(γ⁻¹)^{αα}] V′[(b,n)] V[(b,n-1) γ (b,n-1)]`.
pub fn projector_f_dense(
    alpha: &Partition,
    nu: &Partition,
    n: usize,
    d: usize,
    budgets: &Budgets,
) -> Result<SparseOperator> {
    let mv = branch(alpha, nu).ok_or_else(|| Error::NotBranch {
        alpha: alpha.clone(),
        nu: nu.clone(),
    })?;
    if alpha.size() + 2 != n {
        return Err(Error::InvalidArgument(format!(
            "{alpha} is not a partition of n - 2 = {}",
            n as i64 - 2
        )));
    }
    let lambda = d as i64 + mv.content;
    if lambda == 0 {
        return Err(Error::ZeroEigenvalue {
            alpha: alpha.clone(),
            nu: nu.clone(),
            d: d as u32,
        });
    }
    check_dim(n, d, budgets)?;
    let k = n - 1;
    let block = crate::young::PrirIndex::new(nu).block(alpha)?.clone();
    let g = group_sum(k, n, d, budgets, |s| {
        let psi = yor_matrix(nu, &s.inverse()).expect("degree matches");
        (block.offset..block.offset + block.size).map(|t| psi[(t, t)]).sum()
    })?;
    let mut acc = SparseOperator::zero(n, d);
    for b in 1..=k {
        let t = permutation_operator(&Permutation::transposition(k, b, k), n, d, budgets)?;
        acc = acc.add(&vprime(b, n, d, budgets)?.mul(&t).mul(&g).mul(&t));
    }
    let scale = dim_irrep(nu) as f64 / (lambda as f64 * factorial(k).to_f64().expect("small factorial"));
    Ok(acc.scale(scale))
}

/// Unnormalised PBT operator `ρ = Σ_{a=1}^{n-1} V′[(a,n)]`.
pub fn pbt_rho(n: usize, d: usize, budgets: &Budgets) -> Result<SparseOperator> {
    if n < 2 {
        return Err(Error::InvalidArgument("need n >= 2".into()));
    }
    check_dim(n, d, budgets)?;
    let mut acc = SparseOperator::zero(n, d);
    for a in 1..n {
        acc = acc.add(&vprime(a, n, d, budgets)?);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn permutation_traces() {
        let b = Budgets::default();
        let id = permutation_operator(&Permutation::identity(3), 3, 2, &b).unwrap();
        assert_eq!(id, SparseOperator::identity(3, 2));
        let swap = permutation_operator(&Permutation::transposition(2, 1, 2), 2, 2, &b).unwrap();
        assert_eq!(swap.trace(), 2.0);
        assert_eq!(swap.get(1, 2), 1.0);
        let cyc = Permutation::from_one_line(&[2, 3, 1]).unwrap();
        let op = permutation_operator(&cyc, 3, 2, &b).unwrap();
        assert_eq!(op.trace(), 2.0);
        assert_eq!(op.nnz(), 8);
    }

    #[test]
    fn partial_transpose_of_swap() {
        let b = Budgets::default();
        let v = vprime(1, 2, 2, &b).unwrap();
        // d |φ+><φ+| with |φ+> = (|00> + |11>)/√2.
        let expect = SparseOperator::from_triplets(2, 2, [(0, 0, 1.0), (0, 3, 1.0), (3, 0, 1.0), (3, 3, 1.0)]);
        assert_eq!(v, expect);
        let inner = permutation_operator(&Permutation::transposition(2, 1, 2), 3, 2, &b).unwrap();
        assert_eq!(inner.partial_transpose_last(), inner);
    }

    #[test]
    fn budgets_are_enforced() {
        let tight = Budgets { dim: 8, factorial: 6 };
        assert!(matches!(
            permutation_operator(&Permutation::identity(4), 4, 2, &tight),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(matches!(
            isotypic_projector(&p("4"), 3, 2, &tight),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn small_projectors() {
        let b = Budgets::default();
        let sym = group_projector(&ProjectorKind::PMu(p("2")), 3, 2, &b).unwrap();
        assert!((sym.trace() - 6.0).abs() < 1e-12);
        let f = projector_f_dense(&p("1"), &p("2"), 3, 2, &b).unwrap();
        assert!((f.trace() - 2.0).abs() < 1e-12);
        assert!(f.mul(&f).max_abs_diff(&f) < 1e-12);
        let rho = pbt_rho(4, 3, &b).unwrap();
        assert!((rho.trace() - 81.0).abs() < 1e-12);
    }
}
