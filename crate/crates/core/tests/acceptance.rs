//! End-to-end acceptance run: one PASS/FAIL line per criterion.

use std::io::Write;
use std::time::{Duration, Instant};

use ptalg::algebra::{build_q, natural_decomposition};
use ptalg::oracle::{fidelity_bruteforce, pbt_rho, projector_f_dense, spectrum, Budgets, DEFAULT_CLUSTER_TOL};
use ptalg::pbt::{fidelity_closed, fidelity_lower_bound, rho_spectrum_theory};
use ptalg::symmetric::{add_box, dim_irrep, multiplicity, partitions_of};
use ptalg::verify::{eigenvalue_agreement, flip_algebra_checks, prir_checks, z_residuals, VerifyConfig};

const ORACLE_CASES: [(usize, u32); 7] = [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2), (4, 3), (5, 2)];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

/// Lines go straight to the stdout handle so they survive output capture.
fn report(id: usize, title: &str, limit: Option<Duration>, run: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let mut o = run();
    let elapsed = start.elapsed();
    if let Some(limit) = limit {
        if elapsed > limit {
            o.passed = false;
            o.detail.push_str(&format!("; over the {limit:?} limit"));
        }
    }
    let verdict = if o.passed { "PASS" } else { "FAIL" };
    let line = format!("criterion {id}: {verdict}  {title} — {} ({:.2?})\n", o.detail, elapsed);
    std::io::stdout().write_all(line.as_bytes()).unwrap();
    o.passed
}

fn eigenvalue_agreement_small() -> Outcome {
    let mut cases = 0;
    let mut bad = 0;
    for d in [2u32, 3, 4] {
        for m in 0..=4 {
            for alpha in partitions_of(m, Some(d as usize)) {
                // Restrict to ν with h(ν) ≤ d by checking each branch on its own.
                let kept = add_box(&alpha)
                    .iter()
                    .filter(|mv| mv.target.height() <= d as usize)
                    .count();
                cases += kept;
                bad += eigenvalue_agreement(&alpha, d).unwrap();
            }
        }
    }
    outcome(bad == 0, format!("{cases} (α, ν, d) cases, {bad} disagreements"))
}

fn q_diagonalization() -> Outcome {
    let mut worst = 0.0f64;
    let mut count = 0;
    for d in [2u32, 3, 4] {
        for m in 0..=4 {
            for alpha in partitions_of(m, Some(d as usize)) {
                let (o, g) = z_residuals(&alpha, m + 2, d).unwrap();
                worst = worst.max(o).max(g);
                count += 1;
            }
        }
    }
    outcome(
        worst < 1e-9,
        format!("{count} matrices, max residual {worst:.2e} (< 1e-9)"),
    )
}

fn oracle_spectra() -> Outcome {
    let b = Budgets::default();
    let mut worst = 0.0f64;
    let mut mult_ok = true;
    for (n, d) in ORACLE_CASES {
        let dense = spectrum(&pbt_rho(n, d as usize, &b).unwrap(), DEFAULT_CLUSTER_TOL).unwrap();
        let theory = rho_spectrum_theory(n, d).unwrap();
        let t = theory.clusters();
        if t.len() != dense.clusters.len() {
            mult_ok = false;
            continue;
        }
        for (a, g) in t.iter().zip(&dense.clusters) {
            mult_ok &= a.1 == g.1 as u128;
            worst = worst.max((a.0 - g.0).abs());
        }
        mult_ok &= theory.zero_multiplicity + theory.eigenvalues.iter().map(|e| e.multiplicity).sum::<u128>()
            == (d as u128).pow(n as u32);
    }
    outcome(
        mult_ok && worst < 1e-8,
        format!(
            "{} cases, multiplicities exact: {mult_ok}, max eigenvalue error {worst:.2e} (< 1e-8)",
            ORACLE_CASES.len()
        ),
    )
}

fn trace_identities() -> Outcome {
    let b = Budgets::default();
    let mut worst = 0.0f64;
    for (n, d) in ORACLE_CASES {
        let du = d as usize;
        let rho = pbt_rho(n, du, &b).unwrap();
        worst = worst.max((rho.trace() - ((n - 1) * du.pow(n as u32 - 1)) as f64).abs());
        for alpha in partitions_of(n - 2, None) {
            let q = build_q(&alpha, n, d).unwrap().values;
            let da = dim_irrep(&alpha) as f64;
            worst = worst.max((q.trace() - d as f64 * (n - 1) as f64 * da).abs());
            let sq = (n - 1) as f64 * da * ((du * du + n - 2) as f64);
            worst = worst.max(((&q * &q).trace() - sq).abs());
        }
        for alpha in partitions_of(n - 2, Some(du)) {
            for mv in add_box(&alpha) {
                if mv.target.height() > du || d as i64 + mv.content <= 0 {
                    continue;
                }
                let f = projector_f_dense(&alpha, &mv.target, n, du, &b).unwrap();
                let expect = multiplicity(&alpha, d) as f64 * dim_irrep(&mv.target) as f64;
                worst = worst.max((f.trace() - expect).abs());
            }
        }
    }
    outcome(
        worst < 1e-8,
        format!("tr ρ, tr Q, tr Q², tr F_ν(α): max deviation {worst:.2e} (< 1e-8)"),
    )
}

fn prir_suite() -> Outcome {
    let cfg = VerifyConfig {
        n: 5,
        seed: 2024,
        samples: 20,
        ..VerifyConfig::default()
    };
    let checks = prir_checks(&cfg).unwrap();
    let worst = checks.iter().map(|c| c.residual).fold(0.0, f64::max);
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    outcome(
        failed.is_empty() && worst < 1e-9,
        format!(
            "{} identities, m ≤ 5, max residual {worst:.2e}, failed {failed:?}",
            checks.len()
        ),
    )
}

fn flip_algebra() -> Outcome {
    let b = Budgets::default();
    let mut worst = 0.0f64;
    for (n, d) in [(3, 2), (3, 3), (4, 2)] {
        let (product, diag, recon) = flip_algebra_checks(n, d, &b).unwrap();
        worst = worst.max(product).max(diag).max(recon);
    }
    outcome(
        worst < 1e-9,
        format!("product rule, P^μν composition, V′ reconstruction: max residual {worst:.2e}"),
    )
}

fn fidelity_values() -> Outcome {
    let b = Budgets::default();
    let mut worst = 0.0f64;
    for (ports, d) in [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2), (4, 2)] {
        let closed = fidelity_closed(ports, d).unwrap().fidelity;
        let brute = fidelity_bruteforce(ports, d as usize, &b).unwrap();
        worst = worst.max((closed - brute).abs());
    }
    let f1 = fidelity_closed(1, 2).unwrap().fidelity;
    let f2 = fidelity_closed(2, 2).unwrap().fidelity;
    let f3 = fidelity_closed(3, 2).unwrap().fidelity;
    let exact = f1 == 0.25 && (f2 - (2.0 + 3f64.sqrt()) / 8.0).abs() < 1e-12 && f3 == 0.625;
    let mut bounds = true;
    let mut computed = 0;
    for d in 2..=6u32 {
        for ports in 1..=40 {
            let r = fidelity_closed(ports, d).unwrap();
            bounds &= r.lower_bound <= r.fidelity + 1e-15 && r.fidelity < 1.0;
            computed += 1;
        }
        let lb = fidelity_lower_bound(1, d).unwrap();
        let f = fidelity_closed(1, d).unwrap();
        bounds &= lb == ptalg::exact::Rational::new(1, (d * d) as i128) && f.fidelity == 1.0 / (d * d) as f64;
    }
    outcome(
        worst < 1e-9 && exact && bounds,
        format!(
            "closed vs dense max error {worst:.2e}; exact values {exact}; bounds on {computed} values and N = 1 equality {bounds}"
        ),
    )
}

fn asymptotic_trend() -> Outcome {
    let mut ok = true;
    let mut shown = Vec::new();
    for d in [2u32, 3] {
        let gaps: Vec<f64> = [10, 20, 30, 40]
            .iter()
            .map(|&p| 1.0 - fidelity_closed(p, d).unwrap().fidelity)
            .collect();
        ok &= gaps.windows(2).all(|w| w[1] < w[0]);
        let f40 = 1.0 - gaps[3];
        ok &= f40 > 0.95;
        shown.push(format!("F(40,{d}) = {f40:.6}"));
    }
    outcome(
        ok,
        format!("1 − F strictly decreasing over N = 10..40; {}", shown.join(", ")),
    )
}

fn kernel_dimension_divergence() -> Outcome {
    let r = natural_decomposition(3, 3).unwrap();
    let dense = spectrum(&pbt_rho(3, 3, &Budgets::default()).unwrap(), DEFAULT_CLUSTER_TOL).unwrap();
    let kernel = dense.clusters.iter().find(|c| c.0.abs() < 1e-8).map_or(0, |c| c.1);
    let complement: usize = r.m_zero.parse().unwrap();
    let naive: i64 = r.m_zero_naive.parse().unwrap();
    let diverges = naive != kernel as i64;
    outcome(
        diverges && complement == kernel,
        format!(
            "(n, d) = (3, 3): dense kernel {kernel}, complement {complement}, d^(n−1)(d−n+1) = {naive} — expected divergence recorded"
        ),
    )
}

#[test]
fn acceptance_criteria() {
    let s = Duration::from_secs;
    let results = [
        report(1, "eigenvalue formulas agree", Some(s(1)), eigenvalue_agreement_small),
        report(2, "Q diagonalization", Some(s(5)), q_diagonalization),
        report(3, "oracle spectrum matches closed form", Some(s(60)), oracle_spectra),
        report(4, "trace identities", None, trace_identities),
        report(5, "PRIR identity suite", Some(s(30)), prir_suite),
        report(6, "flip-operator algebra", None, flip_algebra),
        report(7, "fidelity", Some(s(60)), fidelity_values),
        report(8, "asymptotic trend", Some(s(5)), asymptotic_trend),
        report(9, "kernel dimension ledger", None, kernel_dimension_divergence),
    ];
    let failed: Vec<usize> = (1..=9).zip(results).filter(|(_, ok)| !ok).map(|(i, _)| i).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
