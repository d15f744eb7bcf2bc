use nalgebra::{DMatrix, DVector};
use num_bigint::BigUint;

use crate::algebra::{
    build_q, build_z, eigenvalue_character, eigenvalue_content, eigenvalue_multiplicity_formula, eigvecs_w,
    flip_matrix_form, mf_group_element, mf_projector, mf_vprime, natural_decomposition, q_spectrum, FlipScale, MfIndex,
};
use crate::error::{Error, Result};
use crate::exact::{rational_to_f64, Rational};
use crate::linalg::{max_abs_diff, symmetric_eigenvalues};
use crate::symmetric::{add_box, dim_irrep, multiplicity, partitions_of, Partition, Permutation};
use crate::verify::{Check, VerifyConfig};

const SUITE: &str = "algebra";

fn worst(acc: &mut f64, r: f64) {
    if r.is_nan() || r > *acc {
        *acc = r;
    }
}

/// Number of `ν = α + □` on which the content, character and multiplicity
/// routes to `λ_ν(α)` disagree. The multiplicity route is skipped when
/// `m_α = 0`.
pub fn eigenvalue_agreement(alpha: &Partition, d: u32) -> Result<usize> {
    let mut bad = 0;
    for mv in add_box(alpha) {
        let by_content = Rational::from(eigenvalue_content(alpha, &mv, d)? as i128);
        let by_character = eigenvalue_character(alpha, &mv.target, d)?;
        if by_content != by_character {
            bad += 1;
            continue;
        }
        match eigenvalue_multiplicity_formula(alpha, &mv.target, d) {
            Ok(v) if v != by_content => bad += 1,
            Ok(_) | Err(Error::ZeroMultiplicity { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(bad)
}

/// `(‖ZᵀZ − I‖, ‖ZᵀQZ − diag λ‖)` for `α ⊢ n-2`.
pub fn z_residuals(alpha: &Partition, n: usize, d: u32) -> Result<(f64, f64)> {
    let q = build_q(alpha, n, d)?;
    let z = build_z(alpha, n, d)?;
    let size = z.values.nrows();
    let orth = max_abs_diff(&(z.values.transpose() * &z.values), &DMatrix::identity(size, size));
    let lambdas = DVector::from_iterator(size, z.column_eigenvalues.iter().map(rational_to_f64));
    let diag = max_abs_diff(
        &(z.values.transpose() * &q.values * &z.values),
        &DMatrix::from_diagonal(&lambdas),
    );
    Ok((orth, diag))
}

fn q_spectrum_residual(alpha: &Partition, n: usize, d: u32) -> Result<f64> {
    let q = build_q(alpha, n, d)?;
    let got = symmetric_eigenvalues(&q.values);
    let mut expect: Vec<f64> = q_spectrum(alpha, d)
        .iter()
        .flat_map(|e| std::iter::repeat_n(e.lambda as f64, e.multiplicity))
        .collect();
    expect.sort_by(|a, b| b.total_cmp(a));
    if got.len() != expect.len() {
        return Ok(f64::INFINITY);
    }
    Ok(got.iter().zip(&expect).fold(0.0, |m, (a, b)| m.max((a - b).abs())))
}

struct MfResiduals {
    covariance: f64,
    rank_one: f64,
    w_orthonormal: f64,
    idempotent: f64,
    rho_diagonal: f64,
    projector_trace: usize,
    flip_algebra: f64,
}

fn mf_residuals(
    alpha: &Partition,
    n: usize,
    cfg: &VerifyConfig,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> Result<MfResiduals> {
    let d = cfg.d;
    let index = MfIndex::new(alpha, n, d)?;
    let k = n - 1;
    let dimf = index.dim();
    let mut r = MfResiduals {
        covariance: 0.0,
        rank_one: 0.0,
        w_orthonormal: 0.0,
        idempotent: 0.0,
        rho_diagonal: 0.0,
        projector_trace: 0,
        flip_algebra: 0.0,
    };
    let vp: Vec<DMatrix<f64>> = (1..=k).map(|a| mf_vprime(alpha, a, n, d)).collect::<Result<_>>()?;
    for _ in 0..cfg.samples {
        let s = Permutation::random(k, rng);
        let g = mf_group_element(alpha, &s, n, d)?;
        let gi = mf_group_element(alpha, &s.inverse(), n, d)?;
        for a in 1..=k {
            worst(
                &mut r.covariance,
                max_abs_diff(&(&g * &vp[a - 1] * &gi), &vp[s.apply(a) - 1]),
            );
        }
    }
    let da = dim_irrep(alpha) as usize;
    for a in 1..=k {
        let m = &vp[a - 1];
        let w = eigvecs_w(alpha, a, n, d)?;
        worst(&mut r.rank_one, max_abs_diff(m, &(&w * w.transpose() * d as f64)));
        worst(
            &mut r.w_orthonormal,
            max_abs_diff(&(w.transpose() * &w), &DMatrix::identity(da, da)),
        );
        worst(&mut r.idempotent, max_abs_diff(&(m * m), &(m * d as f64)));
    }
    let rho = vp.iter().fold(DMatrix::zeros(dimf, dimf), |acc, m| acc + m);
    let mut expect = DMatrix::zeros(dimf, dimf);
    for b in &index.blocks {
        let p = mf_projector(alpha, &b.nu, n, d)?;
        if (p.trace() - b.size as f64).abs() > 0.0 {
            r.projector_trace += 1;
        }
        expect += p * b.lambda as f64;
    }
    worst(&mut r.rho_diagonal, max_abs_diff(&rho, &expect));

    // E^{μν}_{ij} E^{ν'κ}_{kl} = δ_{νν'} δ_{jk} E^{μκ}_{il}.
    let labels: Vec<&Partition> = index.blocks.iter().map(|b| &b.nu).collect();
    let unit = |mu: &Partition, nu: &Partition, i, j| flip_matrix_form(alpha, mu, nu, i, j, n, d, FlipScale::Unit);
    for mu in &labels {
        for nu in &labels {
            for i in 1..=da {
                for j in 1..=da {
                    let left = unit(mu, nu, i, j)?;
                    for nu2 in &labels {
                        for kappa in &labels {
                            for kk in 1..=da {
                                for l in 1..=da {
                                    let prod = &left * unit(nu2, kappa, kk, l)?;
                                    let expect = if nu == nu2 && j == kk {
                                        unit(mu, kappa, i, l)?
                                    } else {
                                        DMatrix::zeros(dimf, dimf)
                                    };
                                    worst(&mut r.flip_algebra, max_abs_diff(&prod, &expect));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(r)
}

/// Exact and numerical identities of `Q(α)`, `Z(α)`, the reduced matrix
/// forms and the dimension count, for every `n' ≤ config.n`.
pub fn algebra_checks(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let tol = cfg.tol;
    let d = cfg.d;
    let mut rng = cfg.rng(2);
    let mut agreement = 0;
    let (mut qspec, mut qtrace, mut zorth, mut zdiag) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let (mut cov, mut rank_one, mut worth, mut idem, mut rho_diag, mut flip) =
        (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let mut ptrace = 0;
    let mut dim_mismatch = 0;

    for n in 2..=cfg.n {
        for alpha in partitions_of(n - 2, None) {
            agreement += eigenvalue_agreement(&alpha, d)?;
            worst(&mut qspec, q_spectrum_residual(&alpha, n, d)?);
            let q = build_q(&alpha, n, d)?;
            let expect: i64 = q_spectrum(&alpha, d)
                .iter()
                .map(|e| e.lambda * e.multiplicity as i64)
                .sum();
            worst(&mut qtrace, (q.values.trace() - expect as f64).abs());
            let da = dim_irrep(&alpha) as f64;
            let expect_sq = (n - 1) as f64 * da * ((d * d) as usize + n - 2) as f64;
            worst(&mut qtrace, ((&q.values * &q.values).trace() - expect_sq).abs());
            let (o, g) = z_residuals(&alpha, n, d)?;
            worst(&mut zorth, o);
            worst(&mut zdiag, g);
            if multiplicity(&alpha, d) > 0 {
                let r = mf_residuals(&alpha, n, cfg, &mut rng)?;
                worst(&mut cov, r.covariance);
                worst(&mut rank_one, r.rank_one);
                worst(&mut worth, r.w_orthonormal);
                worst(&mut idem, r.idempotent);
                worst(&mut rho_diag, r.rho_diagonal);
                worst(&mut flip, r.flip_algebra);
                ptrace += r.projector_trace;
            }
        }
        let report = natural_decomposition(n, d)?;
        if report.dimension_sum() != BigUint::from(d).pow(n as u32) {
            dim_mismatch += 1;
        }
    }

    Ok(vec![
        Check::exact(SUITE, "eigenvalue_formulas_agree", agreement),
        Check::numeric(SUITE, "q_spectrum", qspec, 1e3 * tol),
        Check::numeric(SUITE, "q_traces", qtrace, tol),
        Check::numeric(SUITE, "z_orthogonal", zorth, tol),
        Check::numeric(SUITE, "z_diagonalizes_q", zdiag, tol),
        Check::numeric(SUITE, "mf_conjugation_covariance", cov, tol),
        Check::numeric(SUITE, "mf_vprime_rank_factorization", rank_one, tol),
        Check::numeric(SUITE, "mf_eigvecs_orthonormal", worth, tol),
        Check::numeric(SUITE, "mf_vprime_square", idem, tol),
        Check::numeric(SUITE, "mf_rho_diagonal", rho_diag, tol),
        Check::exact(SUITE, "mf_projector_trace", ptrace),
        Check::numeric(SUITE, "flip_unit_algebra", flip, tol),
        Check::exact(SUITE, "decomposition_dimension_count", dim_mismatch),
    ])
}
