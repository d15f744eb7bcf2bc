use nalgebra::DMatrix;

use crate::error::Result;
use crate::linalg::max_abs_diff;
use crate::symmetric::{dim_irrep, partitions_of, restrictions, Permutation};
use crate::verify::{Check, VerifyConfig};
use crate::young::irrep::{yor_matrix, PrirIndex};
use crate::young::{
    bilinear_transposition_sum, block_content, block_transposition_sum, conjugated_transposition_sum, coset_block_sum,
    weighted_block_sum,
};

const SUITE: &str = "prir";

fn worst(acc: &mut f64, r: f64) {
    if r.is_nan() || r > *acc {
        *acc = r;
    }
}

/// Every identity of Young's orthogonal form and the PRIR summation rules
/// for `m ≤ config.n`.
pub fn prir_checks(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let tol = cfg.tol;
    let mut rng = cfg.rng(1);
    let (mut rep, mut orth, mut restr) = (0.0f64, 0.0f64, 0.0f64);
    let (mut bil, mut blk, mut coset, mut conj, mut weighted) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let mut content_mismatch = 0;

    for m in 1..=cfg.n {
        let parts = partitions_of(m, None);
        for mu in &parts {
            for _ in 0..cfg.samples {
                let s = Permutation::random(m, &mut rng);
                let t = Permutation::random(m, &mut rng);
                let lhs = yor_matrix(mu, &s)? * yor_matrix(mu, &t)?;
                worst(&mut rep, max_abs_diff(&lhs, &yor_matrix(mu, &s.compose(&t))?));
            }
            for a in 1..=m {
                for b in a + 1..=m {
                    let x = yor_matrix(mu, &Permutation::transposition(m, a, b))?;
                    worst(&mut orth, max_abs_diff(&x, &x.transpose()));
                    let id = DMatrix::identity(x.nrows(), x.nrows());
                    worst(&mut orth, max_abs_diff(&(&x * x.transpose()), &id));
                }
            }
            if m >= 2 {
                let index = PrirIndex::new(mu);
                for _ in 0..cfg.samples {
                    let s = Permutation::random(m - 1, &mut rng);
                    let full = yor_matrix(mu, &s.embed(m))?;
                    for bi in &index.blocks {
                        for bj in &index.blocks {
                            let block = full.view((bi.offset, bj.offset), (bi.size, bj.size));
                            let r = if bi.alpha == bj.alpha {
                                max_abs_diff(&block.into_owned(), &yor_matrix(&bi.alpha, &s)?)
                            } else {
                                block.iter().fold(0.0f64, |acc, v| acc.max(v.abs()))
                            };
                            worst(&mut restr, r);
                        }
                    }
                }
                for alpha in restrictions(mu) {
                    let (mat, scalar) = block_transposition_sum(mu, &alpha)?;
                    let id = DMatrix::identity(mat.nrows(), mat.nrows());
                    worst(&mut blk, max_abs_diff(&mat, &(&id * scalar as f64)));
                    if scalar != block_content(mu, &alpha)? {
                        content_mismatch += 1;
                    }
                    let w = weighted_block_sum(mu, &alpha, cfg.d)?;
                    worst(&mut weighted, max_abs_diff(&w, &(&id * (cfg.d as i64 + scalar) as f64)));
                }
            }
        }
        if m >= 2 {
            for mu in &parts {
                for nu in &parts {
                    for alpha in restrictions(mu) {
                        for beta in restrictions(mu).into_iter().filter(|b| restrictions(nu).contains(b)) {
                            for gamma in restrictions(nu) {
                                let got = bilinear_transposition_sum(mu, nu, &alpha, &beta, &gamma)?;
                                let mut expect = DMatrix::zeros(got.nrows(), got.ncols());
                                if mu == nu && alpha == gamma {
                                    let c = m as f64 * dim_irrep(&beta) as f64 / dim_irrep(mu) as f64;
                                    expect = DMatrix::identity(got.nrows(), got.ncols()) * c;
                                }
                                worst(&mut bil, max_abs_diff(&got, &expect));
                            }
                        }
                    }
                }
            }
        }
        // α ⊢ m - 1, transpositions into the point m.
        {
            for alpha in partitions_of(m - 1, None) {
                let da = dim_irrep(&alpha) as f64;
                for _ in 0..cfg.samples {
                    let g = Permutation::random(m - 1, &mut rng);
                    let phi = yor_matrix(&alpha, &g)?;
                    for b in 1..=m {
                        let got = coset_block_sum(&alpha, &g, b)?;
                        let expect = if b == m { &phi * (m as f64 * da) } else { &phi * 0.0 };
                        worst(&mut coset, max_abs_diff(&got, &expect));
                    }
                    let s = Permutation::random(m, &mut rng);
                    for a in 1..=m {
                        for b in 1..=m {
                            let got = conjugated_transposition_sum(&alpha, &s, a, b)?;
                            let expect = if s.apply(b) == a {
                                let t = Permutation::transposition(m, a, m)
                                    .compose(&s)
                                    .compose(&Permutation::transposition(m, b, m));
                                let inner = t.restrict(m - 1).expect("fixes m");
                                yor_matrix(&alpha, &inner)? * (m as f64 * da)
                            } else {
                                DMatrix::zeros(got.nrows(), got.ncols())
                            };
                            worst(&mut conj, max_abs_diff(&got, &expect));
                        }
                    }
                }
            }
        }
    }

    Ok(vec![
        Check::numeric(SUITE, "representation_property", rep, tol),
        Check::numeric(SUITE, "transpositions_symmetric_orthogonal", orth, tol),
        Check::numeric(SUITE, "restriction_block_diagonal", restr, tol),
        Check::numeric(SUITE, "bilinear_transposition_sum", bil, tol),
        Check::numeric(SUITE, "block_transposition_sum", blk, tol),
        Check::exact(SUITE, "block_transposition_scalar_is_content", content_mismatch),
        Check::numeric(SUITE, "weighted_block_sum", weighted, tol),
        Check::numeric(SUITE, "coset_block_sum", coset, tol),
        Check::numeric(SUITE, "conjugated_transposition_sum", conj, tol),
    ])
}
