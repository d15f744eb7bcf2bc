use std::collections::BTreeMap;

use crate::error::Result;
use crate::oracle::{
    flip_operator_dense, flip_projector_dense, isotypic_projector, matrix_unit, pbt_rho, permutation_operator,
    projector_f_dense, sandwich_checks, spectrum, vprime, Budgets, SparseOperator, DEFAULT_CLUSTER_TOL,
};
use crate::pbt::rho_spectrum_theory;
use crate::symmetric::{branch, dim_irrep, inductions, multiplicity, partitions_of, Partition, Permutation};
use crate::verify::{Check, VerifyConfig};

const SUITE: &str = "oracle";

/// Largest `n` at which the flip-operator algebra is checked exhaustively.
pub const FLIP_MAX_N: usize = 5;

fn worst(acc: &mut f64, r: f64) {
    if r.is_nan() || r > *acc {
        *acc = r;
    }
}

fn m(p: &Partition, d: usize) -> f64 {
    multiplicity(p, d as u32) as f64
}

/// Trace and orthogonality identities of the group projectors and matrix
/// units on `n` factors. Traces carry the factor `d` (resp. `d²`) from the
/// untouched trailing factors.
pub fn trace_checks(n: usize, d: usize, b: &Budgets) -> Result<(f64, f64, f64)> {
    let (mut traces, mut orth, mut units) = (0.0f64, 0.0f64, 0.0f64);
    let id = SparseOperator::identity(n, d);
    for k in [n - 1, n - 2] {
        let extra = (d as f64).powi((n - k) as i32);
        let parts = partitions_of(k, None);
        let ps: Vec<SparseOperator> = parts
            .iter()
            .map(|p| isotypic_projector(p, n, d, b))
            .collect::<Result<_>>()?;
        let mut sum = SparseOperator::zero(n, d);
        for (p, op) in parts.iter().zip(&ps) {
            let expect = extra * m(p, d) * dim_irrep(p) as f64;
            worst(&mut traces, (op.trace() - expect).abs());
            sum = sum.add(op);
        }
        worst(&mut orth, sum.max_abs_diff(&id));
        for (i, a) in ps.iter().enumerate() {
            for (j, c) in ps.iter().enumerate() {
                let prod = a.mul(c);
                let r = if i == j { prod.max_abs_diff(a) } else { prod.max_abs() };
                worst(&mut orth, r);
            }
        }
    }
    if n >= 2 {
        for alpha in partitions_of(n - 2, Some(d)) {
            let da = dim_irrep(&alpha) as usize;
            let mut es = BTreeMap::new();
            for i in 1..=da {
                for j in 1..=da {
                    es.insert((i, j), matrix_unit(&alpha, i, j, n, d, b)?);
                }
            }
            let expect = (d * d) as f64 * m(&alpha, d);
            for i in 1..=da {
                worst(&mut units, (es[&(i, i)].trace() - expect).abs());
                for j in 1..=da {
                    for k in 1..=da {
                        for l in 1..=da {
                            let prod = es[&(i, j)].mul(&es[&(k, l)]);
                            let r = if j == k {
                                prod.max_abs_diff(&es[&(i, l)])
                            } else {
                                prod.max_abs()
                            };
                            worst(&mut units, r);
                        }
                    }
                }
            }
        }
    }
    Ok((traces, orth, units))
}

/// `(product rule, diagonal sum = P^{μν}, reconstruction of P_α V′)` for the
/// flip operators at `n`.
pub fn flip_algebra_checks(n: usize, d: usize, b: &Budgets) -> Result<(f64, f64, f64)> {
    let (mut product, mut diag, mut recon) = (0.0f64, 0.0f64, 0.0f64);
    let v = vprime(n - 1, n, d, b)?;
    for alpha in partitions_of(n - 2, Some(d)) {
        if m(&alpha, d) == 0.0 {
            continue;
        }
        let da = dim_irrep(&alpha) as usize;
        let kept: Vec<Partition> = inductions(&alpha).into_iter().filter(|nu| m(nu, d) > 0.0).collect();
        let mut e = BTreeMap::new();
        for mu in &kept {
            for nu in &kept {
                for i in 1..=da {
                    for j in 1..=da {
                        e.insert(
                            (mu.clone(), nu.clone(), i, j),
                            flip_operator_dense(&alpha, mu, nu, i, j, n, d, b)?,
                        );
                    }
                }
            }
        }
        for ((mu, nu, i, j), left) in &e {
            for ((nu2, kappa, k, l), right) in &e {
                let prod = left.mul(right);
                let r = if nu == nu2 && j == k {
                    prod.max_abs_diff(&e[&(mu.clone(), kappa.clone(), *i, *l)])
                } else {
                    prod.max_abs()
                };
                worst(&mut product, r);
            }
        }
        let pa = isotypic_projector(&alpha, n, d, b)?;
        let mut total = SparseOperator::zero(n, d);
        for mu in &kept {
            for nu in &kept {
                let p = flip_projector_dense(&alpha, mu, nu, n, d, b)?;
                let mut s = SparseOperator::zero(n, d);
                for i in 1..=da {
                    s = s.add(&e[&(mu.clone(), nu.clone(), i, i)]);
                }
                worst(&mut diag, s.max_abs_diff(&p));
                total = total.add(&p.scale((m(mu, d) * m(nu, d)).sqrt() / m(&alpha, d)));
            }
        }
        worst(&mut recon, total.max_abs_diff(&pa.mul(&v)));
    }
    Ok((product, diag, recon))
}

struct FResiduals {
    idempotent: f64,
    trace: f64,
    orthogonal: f64,
    eigen: f64,
    support: f64,
}

fn f_residuals(n: usize, d: usize, b: &Budgets, rho: &SparseOperator) -> Result<FResiduals> {
    let mut r = FResiduals {
        idempotent: 0.0,
        trace: 0.0,
        orthogonal: 0.0,
        eigen: 0.0,
        support: 0.0,
    };
    let mut fs = Vec::new();
    for alpha in partitions_of(n - 2, Some(d)) {
        for nu in inductions(&alpha) {
            let lambda = d as i64 + branch(&alpha, &nu).expect("induction").content;
            if nu.height() > d || lambda <= 0 {
                continue;
            }
            let f = projector_f_dense(&alpha, &nu, n, d, b)?;
            worst(&mut r.idempotent, f.mul(&f).max_abs_diff(&f));
            worst(&mut r.trace, (f.trace() - m(&alpha, d) * dim_irrep(&nu) as f64).abs());
            worst(&mut r.eigen, rho.mul(&f).max_abs_diff(&f.scale(lambda as f64)));
            fs.push(f);
        }
    }
    let mut sum = SparseOperator::zero(n, d);
    for (i, a) in fs.iter().enumerate() {
        for c in &fs[i + 1..] {
            worst(&mut r.orthogonal, a.mul(c).max_abs());
        }
        sum = sum.add(a);
    }
    worst(&mut r.support, rho.mul(&sum).max_abs_diff(rho));
    worst(&mut r.support, sum.mul(&sum).max_abs_diff(&sum));
    Ok(r)
}

/// Identities of the tensor-space operators at `(config.n, config.d)`.
pub fn oracle_checks(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let (n, d, b, tol) = (cfg.n, cfg.d as usize, &cfg.budgets, cfg.tol);
    let mut rng = cfg.rng(3);
    let (mut rep, mut ptrace, mut cov) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..cfg.samples {
        let s = Permutation::random(n, &mut rng);
        let t = Permutation::random(n, &mut rng);
        let vs = permutation_operator(&s, n, d, b)?;
        let lhs = vs.mul(&permutation_operator(&t, n, d, b)?);
        worst(
            &mut rep,
            lhs.max_abs_diff(&permutation_operator(&s.compose(&t), n, d, b)?),
        );
        worst(
            &mut ptrace,
            (vs.trace() - (d as f64).powi(s.cycle_count() as i32)).abs(),
        );

        let g = Permutation::random(n - 1, &mut rng);
        let vg = permutation_operator(&g, n, d, b)?;
        let vgi = permutation_operator(&g.inverse(), n, d, b)?;
        for a in 1..n {
            let lhs = vg.mul(&vprime(a, n, d, b)?).mul(&vgi);
            worst(&mut cov, lhs.max_abs_diff(&vprime(g.apply(a), n, d, b)?));
        }
    }

    let rho = pbt_rho(n, d, b)?;
    let got = spectrum(&rho, DEFAULT_CLUSTER_TOL)?;
    let theory = rho_spectrum_theory(n, d as u32)?.clusters();
    let spec =
        if got.clusters.len() == theory.len() && got.clusters.iter().zip(&theory).all(|(g, t)| g.1 as u128 == t.1) {
            got.clusters
                .iter()
                .zip(&theory)
                .fold(0.0, |acc, (g, t)| f64::max(acc, (g.0 - t.0).abs()))
        } else {
            f64::INFINITY
        };
    let rho_trace = (rho.trace() - ((n - 1) * d.pow(n as u32 - 1)) as f64).abs();

    let (traces, orth, units) = trace_checks(n, d, b)?;
    let f = f_residuals(n, d, b, &rho)?;
    let sandwich = sandwich_checks(n, d, b)?.max_residual();

    let n_flip = n.min(FLIP_MAX_N);
    let (product, diag, recon) = flip_algebra_checks(n_flip, d, b)?;
    let flip_note = (n_flip < n).then(|| format!("checked at n = {n_flip}"));
    let with = |c: Check| match &flip_note {
        Some(note) => c.with_note(note.clone()),
        None => c,
    };

    Ok(vec![
        Check::numeric(SUITE, "permutation_representation", rep, tol),
        Check::numeric(SUITE, "permutation_trace", ptrace, tol),
        Check::numeric(SUITE, "vprime_covariance", cov, tol),
        Check::numeric(SUITE, "rho_spectrum_matches_theory", spec, 1e3 * tol),
        Check::numeric(SUITE, "rho_trace", rho_trace, tol),
        Check::numeric(SUITE, "projector_traces", traces, 1e3 * tol),
        Check::numeric(SUITE, "projectors_orthogonal_complete", orth, tol),
        Check::numeric(SUITE, "matrix_units", units, 1e3 * tol),
        Check::numeric(SUITE, "f_idempotent", f.idempotent, tol),
        Check::numeric(SUITE, "f_trace", f.trace, 1e3 * tol),
        Check::numeric(SUITE, "f_orthogonal", f.orthogonal, tol),
        Check::numeric(SUITE, "f_eigenprojector", f.eigen, tol),
        Check::numeric(SUITE, "f_sum_is_support", f.support, tol),
        Check::numeric(SUITE, "vprime_sandwich", sandwich, tol),
        with(Check::numeric(SUITE, "flip_product_rule", product, tol)),
        with(Check::numeric(SUITE, "flip_diagonal_sum", diag, tol)),
        with(Check::numeric(SUITE, "vprime_flip_decomposition", recon, tol)),
    ])
}
