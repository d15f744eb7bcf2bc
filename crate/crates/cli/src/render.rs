//! Plain-text and CSV renderings. JSON goes through serde directly.

use std::fmt::Write as _;

use nalgebra::DMatrix;

use ptalg::algebra::{DecompositionReport, QEigenvalue, QMatrix, ZMatrix};
use ptalg::oracle::SpectrumReport;
use ptalg::pbt::{FidelityReport, TheorySpectrum};
use ptalg::verify::VerifyReport;

/// Fixed-point with `prec` digits, without the sign of a rounded-away zero.
fn fixed(v: f64, prec: usize) -> String {
    let s = format!("{v:.prec$}");
    match s.strip_prefix('-') {
        Some(rest) if rest.chars().all(|c| c == '0' || c == '.') => rest.to_string(),
        _ => s,
    }
}

fn matrix(m: &DMatrix<f64>) -> String {
    let mut out = String::new();
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|j| format!("{:>9}", fixed(m[(i, j)], 5))).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn qmatrix(q: &QMatrix, spectrum: &[QEigenvalue], numeric: &[f64]) -> String {
    let mut out = format!(
        "Q(α) for α = {}, n = {}, d = {}: {} blocks of size {}\n",
        q.alpha,
        q.n,
        q.d,
        q.n - 1,
        q.block_size()
    );
    out.push_str(&matrix(&q.values));
    out.push_str("spectrum (ν, λ, multiplicity):\n");
    for e in spectrum {
        writeln!(out, "  {:<12} {:>4} {:>6}", e.nu.to_string(), e.lambda, e.multiplicity).unwrap();
    }
    let shown: Vec<String> = numeric.iter().map(|v| fixed(*v, 12)).collect();
    writeln!(out, "numeric eigenvalues: {}", shown.join(" ")).unwrap();
    out
}

pub fn zmatrix(z: &ZMatrix, orth: f64, diag: f64) -> String {
    let mut out = format!("Z(α) for α = {}, n = {}, d = {}\n", z.alpha, z.n, z.d);
    out.push_str("columns (ν, ξ, j, λ):\n");
    for (label, lambda) in z.column_index.iter().zip(&z.column_eigenvalues) {
        writeln!(
            out,
            "  {:<10} {:<10} {:>3} {:>6}",
            label.nu.to_string(),
            label.xi.to_string(),
            label.j,
            lambda
        )
        .unwrap();
    }
    out.push_str(&matrix(&z.values));
    writeln!(out, "max |ZᵀZ − I|     = {orth:.3e}").unwrap();
    writeln!(out, "max |ZᵀQZ − diag| = {diag:.3e}").unwrap();
    out
}

pub fn spectrum_text(theory: &TheorySpectrum, oracle: Option<&SpectrumReport>) -> String {
    let mut out = format!("ρ spectrum for n = {}, d = {}\n", theory.n, theory.d);
    out.push_str("  eigenvalue   theory    dense\n");
    let t = theory.clusters();
    let rows = t.len().max(oracle.map_or(0, |o| o.clusters.len()));
    for i in 0..rows {
        let th = t.get(i).map_or("-".to_string(), |c| format!("{}×{}", c.0, c.1));
        let de = match oracle {
            None => "skipped".to_string(),
            Some(o) => o
                .clusters
                .get(i)
                .map_or("-".to_string(), |c| format!("{}×{}", fixed(c.0, 10), c.1)),
        };
        let value = t.get(i).map_or(String::new(), |c| c.0.to_string());
        writeln!(out, "  {value:>10}   {th:<8}  {de}").unwrap();
    }
    writeln!(out, "trace (theory) = {}", theory.trace()).unwrap();
    out
}

pub fn spectrum_csv(theory: &TheorySpectrum, oracle: Option<&SpectrumReport>) -> String {
    let mut out = String::from("source,eigenvalue,multiplicity\n");
    for (v, m) in theory.clusters() {
        writeln!(out, "theory,{v},{m}").unwrap();
    }
    if let Some(o) = oracle {
        for (v, m) in &o.clusters {
            writeln!(out, "dense,{v},{m}").unwrap();
        }
    }
    out
}

pub fn fidelity(r: &FidelityReport) -> String {
    let mut out = format!("N = {}, d = {}\n", r.ports, r.d);
    writeln!(out, "F           = {}", r.fidelity).unwrap();
    if let Some(exact) = &r.exact {
        writeln!(out, "exact       = {exact}").unwrap();
    }
    writeln!(out, "lower bound = {} = {}", r.lower_bound_exact, r.lower_bound).unwrap();
    writeln!(out, "upper bound = {}", r.upper_gap).unwrap();
    out
}

pub fn verify_csv(r: &VerifyReport) -> String {
    let mut out = String::from("suite,name,residual,tol,passed\n");
    for c in &r.checks {
        writeln!(out, "{},{},{:e},{:e},{}", c.suite, c.name, c.residual, c.tol, c.passed).unwrap();
    }
    out
}

pub fn decomposition(r: &DecompositionReport) -> String {
    let mut out = format!("(C^{})^⊗{}\n", r.d, r.n);
    out.push_str("first kind (α ⊢ n−2): α, m_α, dim Φ^α\n");
    for a in &r.alphas {
        writeln!(out, "  {:<12} {:>10} {:>8}", a.alpha.to_string(), a.m_alpha, a.dim_phi).unwrap();
    }
    out.push_str("second kind (ν ⊢ n−1): ν, d_ν, M_ν\n");
    for v in &r.nus {
        writeln!(out, "  {:<12} {:>10} {:>8}", v.nu.to_string(), v.d_nu, v.big_m).unwrap();
    }
    writeln!(out, "kernel of ρ (m₀)              = {}", r.m_zero).unwrap();
    writeln!(out, "d^n − tr ρ = d^(n−1)(d−n+1) = {}", r.m_zero_naive).unwrap();
    writeln!(out, "total                          = {}", r.total).unwrap();
    out
}
