use crate::error::Result;
use crate::exact::{rational_to_f64, Rational};
use crate::oracle::fidelity_bruteforce;
use crate::pbt::{
    extremal_eigenvalues, fidelity_closed, fidelity_from_irrep_traces, fidelity_lower_bound, jensen_check,
    rho_spectrum_theory,
};
use crate::symmetric::{multiplicity, partitions_of};
use crate::verify::{Check, VerifyConfig};

const SUITE: &str = "pbt";

/// Dense brute force is skipped above this dimension.
const BRUTE_FORCE_DIM: usize = 1024;

/// Ports swept by the bound checks.
const BOUND_PORTS: usize = 30;

fn worst(acc: &mut f64, r: f64) {
    if r.is_nan() || r > *acc {
        *acc = r;
    }
}

/// Closed forms against each other, against the dense oracle where it fits,
/// and against the bounds.
pub fn pbt_checks(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let (d, tol) = (cfg.d, cfg.tol);
    let (mut brute, mut traces) = (0.0f64, 0.0f64);
    let mut brute_ports = Vec::new();
    for ports in 1..cfg.n {
        let f = fidelity_closed(ports, d)?.fidelity;
        worst(&mut traces, (fidelity_from_irrep_traces(ports, d)? - f).abs());
        if (d as usize).pow(ports as u32 + 1) <= BRUTE_FORCE_DIM {
            match fidelity_bruteforce(ports, d as usize, &cfg.budgets) {
                Ok(b) => {
                    worst(&mut brute, (b - f).abs());
                    brute_ports.push(ports);
                }
                Err(e) if e.is_budget() => {}
                Err(e) => return Err(e),
            }
        }
    }

    let mut bound_violations = 0;
    for ports in 1..=BOUND_PORTS {
        let r = fidelity_closed(ports, d)?;
        let lower = r.lower_bound;
        if r.fidelity < lower - tol || r.fidelity > r.upper_gap + tol || r.fidelity > 1.0 {
            bound_violations += 1;
        }
    }
    let one_port = (fidelity_closed(1, d)?.fidelity - 1.0 / (d * d) as f64).abs()
        + (rational_to_f64(&fidelity_lower_bound(1, d)?) - 1.0 / (d * d) as f64).abs();

    let (mut jensen_bad, mut gap) = (0usize, 0.0f64);
    let (mut extremal_bad, mut trace_bad) = (0usize, 0usize);
    for n in 2..=cfg.n {
        for alpha in partitions_of(n - 2, Some(d as usize)) {
            if multiplicity(&alpha, d) == 0 {
                continue;
            }
            let j = jensen_check(&alpha, n, d)?;
            if j.weight_sum != Rational::from(1) {
                jensen_bad += 1;
            }
            worst(&mut gap, j.rhs - j.lhs);
        }
        let s = extremal_eigenvalues(n, d)?;
        if s.lambda_max != d as i64 + n as i64 - 2 {
            extremal_bad += 1;
        }
        if let (Some(l), Some(mult)) = (s.column_rule_lambda_min, &s.column_rule_mult_min) {
            if l != s.lambda_min || *mult != s.mult_min.to_string() {
                extremal_bad += 1;
            }
        }
        let theory = rho_spectrum_theory(n, d)?;
        if theory.trace() != (n as u128 - 1) * (d as u128).pow(n as u32 - 1) {
            trace_bad += 1;
        }
    }

    let brute_note = if brute_ports.is_empty() {
        "no port count fits the brute-force budget".to_string()
    } else {
        format!("N = {brute_ports:?}")
    };
    Ok(vec![
        Check::numeric(SUITE, "closed_form_vs_bruteforce", brute, 1e3 * tol).with_note(brute_note),
        Check::numeric(SUITE, "closed_form_vs_irrep_traces", traces, tol),
        Check::exact(SUITE, "bounds_hold", bound_violations),
        Check::numeric(SUITE, "one_port_equality", one_port, tol),
        Check::exact(SUITE, "averaging_weights_sum_to_one", jensen_bad),
        Check::numeric(SUITE, "averaging_inequality", gap.max(0.0), tol),
        Check::exact(SUITE, "extremal_eigenvalues", extremal_bad),
        Check::exact(SUITE, "theory_trace", trace_bad),
    ])
}
