//! Bookkeeping for the decomposition of `(C^d)^{⊗n}` under the algebra
//! generated by `V(S(n-1))` and `V′`.

use num_bigint::BigUint;
use serde::Serialize;

use crate::algebra::index::MfIndex;
use crate::error::{Error, Result};
use crate::symmetric::{dim_irrep, multiplicity, partitions_of, restrictions, Partition};

/// Irreps of the first kind, labelled by `α ⊢ n-2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaRecord {
    pub alpha: Partition,
    pub m_alpha: u128,
    /// `dim Φ^α = Σ_{ν kept} d_ν`, the rank of `Q(α)`.
    pub dim_phi: u128,
}

/// Irreps of the second kind, labelled by `ν ⊢ n-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NuRecord {
    pub nu: Partition,
    pub d_nu: u128,
    /// `M_ν = d m_ν − Σ_{α: ν = α + □} m_α`.
    pub big_m: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub n: usize,
    pub d: u32,
    pub alphas: Vec<AlphaRecord>,
    pub nus: Vec<NuRecord>,
    /// `d^n − Σ_α m_α dim Φ^α`.
    pub m_zero: String,
    /// `d^{n-1}(d − n + 1)`, often quoted as the kernel dimension; it is `d^n − tr ρ`,
    /// not the kernel dimension. Negative values are reported as such.
    pub m_zero_naive: String,
    pub total: String,
}

impl DecompositionReport {
    pub fn m_zero_value(&self) -> BigUint {
        self.m_zero.parse().expect("decimal")
    }

    /// `Σ_α m_α dim Φ^α + Σ_ν M_ν d_ν`, which must equal `d^n`.
    pub fn dimension_sum(&self) -> BigUint {
        let first: BigUint = self
            .alphas
            .iter()
            .map(|r| BigUint::from(r.m_alpha) * BigUint::from(r.dim_phi))
            .sum();
        let second: BigUint = self
            .nus
            .iter()
            .map(|r| BigUint::from(r.big_m) * BigUint::from(r.d_nu))
            .sum();
        first + second
    }
}

pub fn natural_decomposition(n: usize, d: u32) -> Result<DecompositionReport> {
    if n < 2 || d < 2 {
        return Err(Error::InvalidArgument(format!(
            "decomposition needs n >= 2 and d >= 2 (n = {n}, d = {d})"
        )));
    }
    let mut alphas = Vec::new();
    for alpha in partitions_of(n - 2, Some(d as usize)) {
        let index = MfIndex::new(&alpha, n, d)?;
        let dim_phi = index.blocks.iter().map(|b| b.size as u128).sum();
        alphas.push(AlphaRecord {
            m_alpha: multiplicity(&alpha, d),
            dim_phi,
            alpha,
        });
    }
    let mut nus = Vec::new();
    for nu in partitions_of(n - 1, Some(d as usize)) {
        let below: u128 = restrictions(&nu).iter().map(|a| multiplicity(a, d)).sum();
        let big_m = (d as u128 * multiplicity(&nu, d))
            .checked_sub(below)
            .expect("d m_ν dominates the restricted multiplicities");
        nus.push(NuRecord {
            d_nu: dim_irrep(&nu),
            big_m,
            nu,
        });
    }
    let total = BigUint::from(d).pow(n as u32);
    let support: BigUint = alphas
        .iter()
        .map(|r| BigUint::from(r.m_alpha) * BigUint::from(r.dim_phi))
        .sum();
    let m_zero = &total - support;
    let naive = {
        let base = BigUint::from(d).pow(n as u32 - 1);
        let factor = d as i64 - n as i64 + 1;
        let mag = base * BigUint::from(factor.unsigned_abs());
        if factor < 0 {
            format!("-{mag}")
        } else {
            mag.to_string()
        }
    };
    Ok(DecompositionReport {
        n,
        d,
        alphas,
        nus,
        m_zero: m_zero.to_string(),
        m_zero_naive: naive,
        total: total.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn small_examples() {
        let r = natural_decomposition(3, 3).unwrap();
        assert_eq!(
            r.alphas,
            vec![AlphaRecord {
                alpha: p("1"),
                m_alpha: 3,
                dim_phi: 2
            }]
        );
        let big: Vec<(String, u128)> = r.nus.iter().map(|x| (x.nu.to_string(), x.big_m)).collect();
        assert_eq!(big, [("2".to_string(), 15), ("1,1".to_string(), 6)]);
        assert_eq!(r.dimension_sum(), BigUint::from(27u32));
        assert_eq!(r.m_zero, "21");
        assert_eq!(r.m_zero_naive, "9");

        let r = natural_decomposition(2, 2).unwrap();
        assert_eq!(r.alphas[0].m_alpha, 1);
        assert_eq!(r.alphas[0].dim_phi, 1);
        assert_eq!(r.m_zero, "3");

        let r = natural_decomposition(3, 2).unwrap();
        assert_eq!((r.alphas[0].m_alpha, r.alphas[0].dim_phi), (2, 2));
        assert_eq!(r.m_zero, "4");
    }

    #[test]
    fn dimensions_add_up() {
        for n in 2..=7 {
            for d in 2..=4 {
                let r = natural_decomposition(n, d).unwrap();
                assert_eq!(r.dimension_sum(), BigUint::from(d).pow(n as u32), "n={n} d={d}");
            }
        }
    }
}
