//! Closed-form quantities of deterministic port-based teleportation with
//! `N` ports; the algebra parameter is `n = N + 1`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{rational_to_f64, serialize_rational, RadicalSum, Rational};
use crate::symmetric::{
    add_box, class_size, dim_irrep, factorial, multiplicity, partitions_of, restrictions, Partition,
};

fn check(ports: usize, d: u32) -> Result<()> {
    if ports == 0 || d < 2 {
        return Err(Error::InvalidArgument(format!(
            "need N >= 1 ports and d >= 2 (N = {ports}, d = {d})"
        )));
    }
    Ok(())
}

/// `α ⊢ n-2` with `h(α) ≤ d`, each with its kept `μ = α + □` (`h(μ) ≤ d`).
fn kept_pairs(n: usize, d: u32) -> Vec<(Partition, Vec<(Partition, i64)>)> {
    partitions_of(n - 2, Some(d as usize))
        .into_iter()
        .map(|alpha| {
            let mus = add_box(&alpha)
                .into_iter()
                .filter(|mv| mv.target.height() <= d as usize && d as i64 + mv.content > 0)
                .map(|mv| (mv.target, d as i64 + mv.content))
                .collect();
            (alpha, mus)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlphaContribution {
    pub alpha: Partition,
    /// `(Σ_μ √(d_μ m_μ))²`.
    pub contribution: f64,
    pub exact: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FidelityReport {
    #[serde(rename = "N")]
    pub ports: usize,
    pub d: u32,
    #[serde(rename = "F")]
    pub fidelity: f64,
    /// `(Σ_α (Σ_μ √(d_μ m_μ))²) / d^{N+2}` with radicals kept symbolic;
    /// omitted when the sum has too many terms to be useful.
    pub exact: Option<String>,
    /// `N / (d² + N − 1)`.
    pub lower_bound: f64,
    #[serde(serialize_with = "serialize_rational")]
    pub lower_bound_exact: Rational,
    /// `1 − (1/d^n) Σ_{h(ν)<d} M_ν d_ν`.
    pub upper_gap: f64,
    pub per_alpha: Vec<AlphaContribution>,
}

const EXACT_TERM_LIMIT: usize = 48;

/// `F = (1/d^{N+2}) Σ_α (Σ_μ √(d_μ m_μ))²`.
pub fn fidelity_closed(ports: usize, d: u32) -> Result<FidelityReport> {
    check(ports, d)?;
    let n = ports + 1;
    let mut total = RadicalSum::zero();
    let mut per_alpha = Vec::new();
    for (alpha, mus) in kept_pairs(n, d) {
        let mut s = RadicalSum::zero();
        for (mu, _) in &mus {
            s.add_sqrt(
                BigUint::one(),
                BigUint::from(dim_irrep(mu)) * BigUint::from(multiplicity(mu, d)),
            );
        }
        let sq = s.square();
        total.add(&sq);
        per_alpha.push(AlphaContribution {
            alpha,
            contribution: sq.to_f64(),
            exact: sq.to_string(),
        });
    }
    let denom = BigUint::from(d).pow(n as u32 + 1);
    let fidelity = total.to_f64() / denom.to_f64().expect("finite");
    let lower = fidelity_lower_bound(ports, d)?;
    let exact = (total.terms().count() <= EXACT_TERM_LIMIT).then(|| format!("({total})/{denom}"));
    Ok(FidelityReport {
        ports,
        d,
        fidelity,
        exact,
        lower_bound: rational_to_f64(&lower),
        lower_bound_exact: lower,
        upper_gap: upper_bound(n, d),
        per_alpha,
    })
}

/// `N / (d² + N − 1)`.
pub fn fidelity_lower_bound(ports: usize, d: u32) -> Result<Rational> {
    check(ports, d)?;
    let n = ports as i128;
    Ok(Rational::new(n, (d as i128).pow(2) + n - 1))
}

/// `M_ν = d m_ν − Σ_{α = ν − □} m_α` for `ν ⊢ n-1`.
pub fn second_kind_multiplicity(nu: &Partition, d: u32) -> BigInt {
    let below: BigInt = restrictions(nu).iter().map(|a| BigInt::from(multiplicity(a, d))).sum();
    BigInt::from(d) * BigInt::from(multiplicity(nu, d)) - below
}

fn upper_bound_exact(n: usize, d: u32) -> BigRational {
    let sum: BigInt = partitions_of(n - 1, Some(d as usize - 1))
        .iter()
        .map(|nu| second_kind_multiplicity(nu, d) * BigInt::from(dim_irrep(nu)))
        .sum();
    BigRational::one() - BigRational::new(sum, BigInt::from(d).pow(n as u32))
}

fn upper_bound(n: usize, d: u32) -> f64 {
    let r = upper_bound_exact(n, d);
    // Numerator and denominator can exceed f64 range only far beyond any
    // practical n; divide as big integers scaled to 2^-60 precision.
    let scale = BigInt::one() << 60;
    let q: BigInt = (r.numer() * &scale) / r.denom();
    q.to_f64().expect("finite") / 2f64.powi(60)
}

/// Trace of `ρ^{-1/2} V′ ρ^{-1/2} V′` on the irrep `Φ^α`:
/// `(Σ_ν d_ν √λ_ν)² / ((n−1)² d_α)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IrrepTrace {
    pub alpha: Partition,
    pub n: usize,
    pub d: u32,
    pub value: f64,
    /// `(Σ_ν d_ν √λ_ν)²`, exact.
    pub numerator: String,
    /// `(n−1)² d_α`.
    pub denominator: String,
}

pub fn fidelity_irrep_trace(alpha: &Partition, n: usize, d: u32) -> Result<IrrepTrace> {
    if n < 2 || alpha.size() + 2 != n {
        return Err(Error::InvalidArgument(format!(
            "{alpha} is not a partition of n - 2 (n = {n})"
        )));
    }
    if multiplicity(alpha, d) == 0 {
        return Err(Error::ZeroMultiplicity {
            alpha: alpha.clone(),
            d,
        });
    }
    let mut s = RadicalSum::zero();
    for mv in add_box(alpha) {
        let lambda = d as i64 + mv.content;
        if mv.target.height() > d as usize || lambda <= 0 {
            continue;
        }
        s.add_sqrt(BigUint::from(dim_irrep(&mv.target)), BigUint::from(lambda as u64));
    }
    let sq = s.square();
    let den = BigUint::from((n - 1) * (n - 1)) * BigUint::from(dim_irrep(alpha));
    Ok(IrrepTrace {
        alpha: alpha.clone(),
        n,
        d,
        value: sq.to_f64() / den.to_f64().expect("finite"),
        numerator: sq.to_string(),
        denominator: den.to_string(),
    })
}

/// `F = ((n−1)/d^{n+1}) Σ_α m_α · tr_{Φ^α}[…]`, an independent route to the
/// closed form through the eigenvalues `λ_ν(α)`.
pub fn fidelity_from_irrep_traces(ports: usize, d: u32) -> Result<f64> {
    check(ports, d)?;
    let n = ports + 1;
    let mut total = 0.0;
    for alpha in partitions_of(n - 2, Some(d as usize)) {
        let t = fidelity_irrep_trace(&alpha, n, d)?;
        total += multiplicity(&alpha, d) as f64 * t.value;
    }
    Ok(total * (n - 1) as f64 / (d as f64).powi(n as i32 + 1))
}

/// Averaging step behind the lower bound, for one `α`: weights
/// `s_ν = d_ν λ_ν / (d (n−1) d_α)` sum to one, and
/// `(Σ s_ν λ_ν^{-1/2})² ≥ (Σ s_ν λ_ν)^{-1}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JensenCheck {
    pub alpha: Partition,
    #[serde(serialize_with = "serialize_rational")]
    pub weight_sum: Rational,
    pub lhs: f64,
    pub rhs: f64,
}

pub fn jensen_check(alpha: &Partition, n: usize, d: u32) -> Result<JensenCheck> {
    if n < 2 || alpha.size() + 2 != n {
        return Err(Error::InvalidArgument(format!(
            "{alpha} is not a partition of n - 2 (n = {n})"
        )));
    }
    let da = dim_irrep(alpha) as i128;
    let norm = d as i128 * (n as i128 - 1) * da;
    let mut weight_sum = Rational::zero();
    let mut mean_inv_sqrt = 0.0;
    let mut mean = 0.0;
    for mv in add_box(alpha) {
        let lambda = d as i64 + mv.content;
        if mv.target.height() > d as usize || lambda <= 0 {
            continue;
        }
        let w = Rational::new(dim_irrep(&mv.target) as i128 * lambda as i128, norm);
        weight_sum += w;
        let wf = *w.numer() as f64 / *w.denom() as f64;
        mean_inv_sqrt += wf / (lambda as f64).sqrt();
        mean += wf * lambda as f64;
    }
    Ok(JensenCheck {
        alpha: alpha.clone(),
        weight_sum,
        lhs: mean_inv_sqrt * mean_inv_sqrt,
        rhs: 1.0 / mean,
    })
}

/// Extremal nonzero eigenvalues of `ρ = Σ_a V′[(a,n)]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumSummary {
    pub n: usize,
    pub d: u32,
    pub lambda_max: i64,
    pub mult_max: u128,
    pub lambda_min: i64,
    pub mult_min: u128,
    /// `d − (n−2)` from the single-column `α`, reported only when that rule
    /// applies (`d ≥ n−1`).
    pub column_rule_lambda_min: Option<i64>,
    /// `(1/(n−2)!) Σ_σ sgn(σ) d^{l(σ)}`, the multiplicity paired with
    /// `column_rule_lambda_min`.
    pub column_rule_mult_min: Option<String>,
}

fn check_nd(n: usize, d: u32) -> Result<()> {
    if n < 2 || d < 2 {
        return Err(Error::InvalidArgument(format!(
            "need n >= 2 and d >= 2 (n = {n}, d = {d})"
        )));
    }
    Ok(())
}

/// `(1/k!) Σ_{σ ∈ S(k)} sgn(σ) d^{l(σ)}`, summed over conjugacy classes.
pub fn sign_weighted_count(k: usize, d: u32) -> BigInt {
    let mut total = BigInt::zero();
    for class in partitions_of(k, None) {
        let h = class.height();
        let term = BigInt::from(class_size(&class)) * BigInt::from(d).pow(h as u32);
        if (k - h).is_multiple_of(2) {
            total += term;
        } else {
            total -= term;
        }
    }
    total / BigInt::from(factorial(k))
}

pub fn extremal_eigenvalues(n: usize, d: u32) -> Result<SpectrumSummary> {
    check_nd(n, d)?;
    let theory = rho_spectrum_theory(n, d)?;
    let top = theory.eigenvalues.first().expect("ρ is nonzero");
    let bottom = theory.eigenvalues.last().expect("ρ is nonzero");
    let (column_rule_lambda_min, column_rule_mult_min) = if d as usize + 1 >= n {
        let m = sign_weighted_count(n - 2, d);
        (Some(d as i64 - (n as i64 - 2)), Some(m.abs().to_string()))
    } else {
        (None, None)
    };
    Ok(SpectrumSummary {
        n,
        d,
        lambda_max: top.lambda,
        mult_max: top.multiplicity,
        lambda_min: bottom.lambda,
        mult_min: bottom.multiplicity,
        column_rule_lambda_min,
        column_rule_mult_min,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoryEigenvalue {
    pub lambda: i64,
    pub multiplicity: u128,
    /// `λ / d^{n-1}`, the eigenvalue of the normalised operator `ρ̃`.
    pub normalized: f64,
}

/// Spectrum of `ρ` from the closed forms: `λ_ν(α)` with multiplicity
/// `m_α d_ν`, merged over equal values, plus the zero eigenvalue.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheorySpectrum {
    pub n: usize,
    pub d: u32,
    /// Nonzero eigenvalues, largest first.
    pub eigenvalues: Vec<TheoryEigenvalue>,
    pub zero_multiplicity: u128,
}

impl TheorySpectrum {
    /// `(value, multiplicity)` including the zero cluster.
    pub fn clusters(&self) -> Vec<(f64, u128)> {
        let mut out: Vec<(f64, u128)> = self
            .eigenvalues
            .iter()
            .map(|e| (e.lambda as f64, e.multiplicity))
            .collect();
        if self.zero_multiplicity > 0 {
            out.push((0.0, self.zero_multiplicity));
        }
        out
    }

    pub fn trace(&self) -> u128 {
        self.eigenvalues.iter().map(|e| e.lambda as u128 * e.multiplicity).sum()
    }
}

pub fn rho_spectrum_theory(n: usize, d: u32) -> Result<TheorySpectrum> {
    check_nd(n, d)?;
    let mut by_value: BTreeMap<i64, u128> = BTreeMap::new();
    for (alpha, mus) in kept_pairs(n, d) {
        let m_alpha = multiplicity(&alpha, d);
        for (nu, lambda) in mus {
            *by_value.entry(lambda).or_default() += m_alpha * dim_irrep(&nu);
        }
    }
    let total = (d as u128).pow(n as u32);
    let support: u128 = by_value.values().sum();
    let norm = (d as f64).powi(n as i32 - 1);
    Ok(TheorySpectrum {
        n,
        d,
        eigenvalues: by_value
            .into_iter()
            .rev()
            .map(|(lambda, multiplicity)| TheoryEigenvalue {
                lambda,
                multiplicity,
                normalized: lambda as f64 / norm,
            })
            .collect(),
        zero_multiplicity: total - support,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableRow {
    #[serde(rename = "N")]
    pub ports: usize,
    pub d: u32,
    #[serde(rename = "F")]
    pub fidelity: f64,
    pub lower_bound: f64,
    pub upper_gap: f64,
}

/// Fidelity sweep; rows ordered by `d`, then `N`.
pub fn fidelity_table(ports: &[usize], dims: &[u32]) -> Result<Vec<TableRow>> {
    let cells: Vec<(usize, u32)> = dims.iter().flat_map(|&d| ports.iter().map(move |&p| (p, d))).collect();
    cells
        .par_iter()
        .map(|&(p, d)| {
            let r = fidelity_closed(p, d)?;
            Ok(TableRow {
                ports: p,
                d,
                fidelity: r.fidelity,
                lower_bound: r.lower_bound,
                upper_gap: r.upper_gap,
            })
        })
        .collect()
}

pub fn table_csv(rows: &[TableRow]) -> String {
    let mut out = String::from("N,d,F,lower_bound,upper_gap\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.ports, r.d, r.fidelity, r.lower_bound, r.upper_gap
        ));
    }
    out
}
