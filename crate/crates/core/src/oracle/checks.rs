use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{asymmetry, max_abs, pinv_sqrt, symmetric_eigenvalues};
use crate::oracle::operators::{check_dim, isotypic_projector, pbt_rho, permutation_operator, vprime};
use crate::oracle::sparse::SparseOperator;
use crate::oracle::Budgets;
use crate::symmetric::{multiplicity, partitions_of, restrictions, Partition, Permutation};

/// Eigenvalues grouped into clusters, largest first.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub clusters: Vec<(f64, usize)>,
    pub tolerance: f64,
    pub trace: f64,
}

impl SpectrumReport {
    pub fn dim(&self) -> usize {
        self.clusters.iter().map(|c| c.1).sum()
    }

    /// Groups sorted (descending) eigenvalues: a value joins the current
    /// cluster while within `tol` of the cluster's first member.
    pub fn from_eigenvalues(values: &[f64], tol: f64) -> Self {
        let mut sorted = values.to_vec();
        sorted.sort_by(|a, b| b.total_cmp(a));
        let mut clusters: Vec<(f64, usize, f64)> = Vec::new();
        for v in sorted {
            match clusters.last_mut() {
                Some((head, count, sum)) if (*head - v).abs() <= tol => {
                    *count += 1;
                    *sum += v;
                }
                _ => clusters.push((v, 1, v)),
            }
        }
        Self {
            clusters: clusters.into_iter().map(|(_, c, s)| (s / c as f64, c)).collect(),
            tolerance: tol,
            trace: values.iter().sum(),
        }
    }
}

/// Dense symmetric eigensolve of `op`, clustered.
pub fn spectrum(op: &SparseOperator, cluster_tol: f64) -> Result<SpectrumReport> {
    let dense = op.to_dense();
    let skew = asymmetry(&dense);
    if skew > 1e-9 * max_abs(&dense).max(1.0) {
        return Err(Error::NotHermitian(skew));
    }
    Ok(SpectrumReport::from_eigenvalues(
        &symmetric_eigenvalues(&dense),
        cluster_tol,
    ))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SandwichReport {
    pub n: usize,
    pub d: usize,
    /// `‖V′ V[(a,n-1)] V′ − d^{δ_{a,n-1}} V′‖_max` per `a`.
    pub vprime_residuals: Vec<(usize, f64)>,
    /// `‖V′ P_ρ V′ − Σ_ξ (m_ρ/m_ξ) P_ξ V′‖_max` per `ρ ⊢ n-1`, `h(ρ) ≤ d`.
    pub projector_residuals: Vec<(Partition, f64)>,
}

impl SandwichReport {
    pub fn max_residual(&self) -> f64 {
        self.vprime_residuals
            .iter()
            .map(|r| r.1)
            .chain(self.projector_residuals.iter().map(|r| r.1))
            .fold(0.0, f64::max)
    }
}

pub fn sandwich_checks(n: usize, d: usize, budgets: &Budgets) -> Result<SandwichReport> {
    if n < 2 {
        return Err(Error::InvalidArgument("need n >= 2".into()));
    }
    check_dim(n, d, budgets)?;
    let v = vprime(n - 1, n, d, budgets)?;
    let k = n - 1;
    let mut vprime_residuals = Vec::new();
    for a in 1..=k {
        let t = permutation_operator(&Permutation::transposition(k, a, k), n, d, budgets)?;
        let lhs = v.mul(&t).mul(&v);
        let factor = if a == k { d as f64 } else { 1.0 };
        vprime_residuals.push((a, lhs.max_abs_diff(&v.scale(factor))));
    }
    let mut projector_residuals = Vec::new();
    for rho in partitions_of(k, Some(d)) {
        let lhs = v.mul(&isotypic_projector(&rho, n, d, budgets)?).mul(&v);
        let m_rho = multiplicity(&rho, d as u32) as f64;
        let mut rhs = SparseOperator::zero(n, d);
        for xi in restrictions(&rho) {
            let m_xi = multiplicity(&xi, d as u32) as f64;
            if m_xi == 0.0 {
                continue;
            }
            let p = isotypic_projector(&xi, n, d, budgets)?;
            rhs = rhs.add(&p.mul(&v).scale(m_rho / m_xi));
        }
        projector_residuals.push((rho, lhs.max_abs_diff(&rhs)));
    }
    Ok(SandwichReport {
        n,
        d,
        vprime_residuals,
        projector_residuals,
    })
}

/// `F = (1/d²) Σ_i tr[σ_i ρ̃^{-1/2} σ_i ρ̃^{-1/2}]` with `σ_i = V′[(i,n)]/d^N`
/// and the pseudo-inverse square root on the support of `ρ̃`.
pub fn fidelity_bruteforce(ports: usize, d: usize, budgets: &Budgets) -> Result<f64> {
    if ports == 0 {
        return Err(Error::InvalidArgument("need at least one port".into()));
    }
    let n = ports + 1;
    check_dim(n, d, budgets)?;
    let norm = (d as f64).powi(ports as i32);
    let rho = pbt_rho(n, d, budgets)?.to_dense() / norm;
    let r = pinv_sqrt(&rho, 1e-9);
    let mut total = 0.0;
    for i in 1..=ports {
        let s = vprime(i, n, d, budgets)?.to_dense() / norm;
        let prod = &s * &r;
        total += (&prod * &prod).trace();
    }
    Ok(total / (d * d) as f64)
}
