//! `Q(α)`, its reducing matrix `Z(α)`, and three independent formulas for
//! the eigenvalues `λ_ν(α)`.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::algebra::index::BasisLabel;
use crate::error::{Error, Result};
use crate::exact::{serialize_rational, Rational};
use crate::linalg::MatrixJson;
use crate::symmetric::{branch, dim_irrep, inductions, multiplicity, BoxMove, Partition, Permutation};
use crate::young::irrep::{yor_matrix, PrirIndex};
use crate::young::sums::transposition_class_value;

/// Block matrix on `(n-1)` copies of the irrep `α ⊢ n-2`.
#[derive(Clone, Debug, PartialEq)]
pub struct QMatrix {
    pub alpha: Partition,
    pub n: usize,
    pub d: u32,
    pub values: DMatrix<f64>,
}

impl QMatrix {
    pub fn block_size(&self) -> usize {
        self.values.nrows() / (self.n - 1)
    }

    pub fn block(&self, a: usize, b: usize) -> DMatrix<f64> {
        let s = self.block_size();
        self.values.view(((a - 1) * s, (b - 1) * s), (s, s)).into_owned()
    }
}

impl Serialize for QMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            alpha: &'a Partition,
            n: usize,
            d: u32,
            blocks: usize,
            block_size: usize,
            matrix: MatrixJson,
        }
        Repr {
            alpha: &self.alpha,
            n: self.n,
            d: self.d,
            blocks: self.n - 1,
            block_size: self.block_size(),
            matrix: MatrixJson::from(&self.values),
        }
        .serialize(serializer)
    }
}

fn check_n(alpha: &Partition, n: usize) -> Result<()> {
    if n < 2 || alpha.size() + 2 != n {
        return Err(Error::InvalidArgument(format!(
            "alpha = {alpha} must be a partition of n - 2 with n >= 2 (n = {n})"
        )));
    }
    Ok(())
}

/// `Q(α)` with blocks `d^{δ_ab} φ^α[(a,n-1)(a,b)(b,n-1)]`.
pub fn build_q(alpha: &Partition, n: usize, d: u32) -> Result<QMatrix> {
    check_n(alpha, n)?;
    let s = dim_irrep(alpha) as usize;
    let k = n - 1;
    let mut values = DMatrix::zeros(k * s, k * s);
    for a in 1..=k {
        for b in 1..=k {
            let block = if a == b {
                DMatrix::identity(s, s) * d as f64
            } else {
                let sigma = Permutation::transposition(k, a, k)
                    .compose(&Permutation::transposition(k, a, b))
                    .compose(&Permutation::transposition(k, b, k));
                let inner = sigma.restrict(k - 1).expect("fixes n - 1");
                yor_matrix(alpha, &inner)?
            };
            values.view_mut(((a - 1) * s, (b - 1) * s), (s, s)).copy_from(&block);
        }
    }
    Ok(QMatrix {
        alpha: alpha.clone(),
        n,
        d,
        values,
    })
}

/// `d + c(ν/α)`.
pub fn eigenvalue_content(alpha: &Partition, mv: &BoxMove, d: u32) -> Result<i64> {
    if &mv.source != alpha {
        return Err(Error::NotBranch {
            alpha: alpha.clone(),
            nu: mv.target.clone(),
        });
    }
    Ok(d as i64 + mv.content)
}

/// `d + C(ν) − C(α)`, with `C(μ)` the transposition class sum's central
/// character `binom(m,2) χ^μ[(1,2)] / d_μ`.
pub fn eigenvalue_character(alpha: &Partition, nu: &Partition, d: u32) -> Result<Rational> {
    branch(alpha, nu).ok_or_else(|| Error::NotBranch {
        alpha: alpha.clone(),
        nu: nu.clone(),
    })?;
    Ok(Rational::from_integer(d as i128) + transposition_class_value(nu) - transposition_class_value(alpha))
}

/// `(n-1) m_ν d_α / (m_α d_ν)`, with `n - 2 = |α|`.
pub fn eigenvalue_multiplicity_formula(alpha: &Partition, nu: &Partition, d: u32) -> Result<Rational> {
    branch(alpha, nu).ok_or_else(|| Error::NotBranch {
        alpha: alpha.clone(),
        nu: nu.clone(),
    })?;
    let m_alpha = multiplicity(alpha, d);
    if m_alpha == 0 {
        return Err(Error::ZeroMultiplicity {
            alpha: alpha.clone(),
            d,
        });
    }
    let n1 = BigInt::from(alpha.size() + 1);
    let num = n1 * BigInt::from(multiplicity(nu, d)) * BigInt::from(dim_irrep(alpha));
    let den = BigInt::from(m_alpha) * BigInt::from(dim_irrep(nu));
    let r = BigRational::new(num, den);
    let (p, q) = (r.numer().to_i128(), r.denom().to_i128());
    match (p, q) {
        (Some(p), Some(q)) => Ok(Rational::new(p, q)),
        _ => Err(Error::InvalidArgument(format!(
            "eigenvalue of {nu} over {alpha} does not fit in 128 bits"
        ))),
    }
}

/// One eigenvalue `λ_ν(α)` with its multiplicity in `Q(α)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QEigenvalue {
    pub nu: Partition,
    pub lambda: i64,
    pub multiplicity: usize,
}

/// Closed-form spectrum of `Q(α)`: `d + c(ν/α)` with multiplicity `d_ν` for
/// every `ν = α + □`.
pub fn q_spectrum(alpha: &Partition, d: u32) -> Vec<QEigenvalue> {
    inductions(alpha)
        .into_iter()
        .map(|nu| {
            let mv = branch(alpha, &nu).expect("induction");
            QEigenvalue {
                lambda: d as i64 + mv.content,
                multiplicity: dim_irrep(&nu) as usize,
                nu,
            }
        })
        .collect()
}

/// Orthogonal matrix reducing `Q(α)`; columns labelled `(ν, ξ_ν, j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZMatrix {
    pub alpha: Partition,
    pub n: usize,
    pub d: u32,
    pub values: DMatrix<f64>,
    pub column_index: Vec<BasisLabel>,
    /// `λ_ν(α)` for each column.
    pub column_eigenvalues: Vec<Rational>,
}

impl Serialize for ZMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Column<'a> {
            #[serde(flatten)]
            label: &'a BasisLabel,
            #[serde(serialize_with = "serialize_rational")]
            lambda: &'a Rational,
        }
        #[derive(Serialize)]
        struct Repr<'a> {
            alpha: &'a Partition,
            n: usize,
            d: u32,
            columns: Vec<Column<'a>>,
            matrix: MatrixJson,
        }
        Repr {
            alpha: &self.alpha,
            n: self.n,
            d: self.d,
            columns: self
                .column_index
                .iter()
                .zip(&self.column_eigenvalues)
                .map(|(label, lambda)| Column { label, lambda })
                .collect(),
            matrix: MatrixJson::from(&self.values),
        }
        .serialize(serializer)
    }
}

/// Columns `(ν, ξ_ν, j)` for `ν = α + □` in canonical order.
pub(crate) fn induced_labels(alpha: &Partition, keep: impl Fn(&Partition) -> bool) -> Vec<BasisLabel> {
    let mut out = Vec::new();
    for nu in inductions(alpha).into_iter().filter(|nu| keep(nu)) {
        for block in PrirIndex::new(&nu).blocks {
            for j in 1..=block.size {
                out.push(BasisLabel {
                    nu: nu.clone(),
                    xi: block.alpha.clone(),
                    j,
                });
            }
        }
    }
    out
}

/// `z_{(a,k),(ν,j)} = (1/√(n-1)) √(d_ν/d_α) ψ^ν[(a,n-1)]^{α·}_{k j}`.
pub fn build_z(alpha: &Partition, n: usize, d: u32) -> Result<ZMatrix> {
    check_n(alpha, n)?;
    let s = dim_irrep(alpha) as usize;
    let k = n - 1;
    let size = k * s;
    let mut values = DMatrix::zeros(size, size);
    let mut col = 0;
    let mut column_eigenvalues = Vec::with_capacity(size);
    for nu in inductions(alpha) {
        let dn = dim_irrep(&nu) as usize;
        let row_block = PrirIndex::new(&nu).block(alpha)?.clone();
        let scale = (dn as f64 / s as f64).sqrt() / (k as f64).sqrt();
        for a in 1..=k {
            let psi = yor_matrix(&nu, &Permutation::transposition(k, a, k))?;
            let rows = psi.view((row_block.offset, 0), (s, dn));
            values.view_mut(((a - 1) * s, col), (s, dn)).copy_from(&(rows * scale));
        }
        let lambda = eigenvalue_character(alpha, &nu, d)?;
        column_eigenvalues.extend(std::iter::repeat_n(lambda, dn));
        col += dn;
    }
    Ok(ZMatrix {
        alpha: alpha.clone(),
        n,
        d,
        values,
        column_index: induced_labels(alpha, |_| true),
        column_eigenvalues,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{max_abs_diff, symmetric_eigenvalues};
    use crate::symmetric::add_box;
    use nalgebra::dmatrix;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn q_examples() {
        assert_eq!(build_q(&Partition::empty(), 2, 5).unwrap().values, dmatrix![5.0]);
        assert_eq!(build_q(&p("1"), 3, 2).unwrap().values, dmatrix![2.0, 1.0; 1.0, 2.0]);
        // Blocks touching n - 1 are φ(id); the rest are φ^{(1,1)}[(1,2)] = -1.
        let q = build_q(&p("1,1"), 4, 2).unwrap().values;
        assert_eq!(q, dmatrix![2.0, -1.0, 1.0; -1.0, 2.0, 1.0; 1.0, 1.0, 2.0]);
        // Up to the sign flip of the last block this is the all -1 pattern.
        let s = DMatrix::from_diagonal(&nalgebra::dvector![1.0, 1.0, -1.0]);
        assert_eq!(&s * q * &s, dmatrix![2.0, -1.0, -1.0; -1.0, 2.0, -1.0; -1.0, -1.0, 2.0]);
        assert!(build_q(&p("1"), 4, 2).is_err());
    }

    #[test]
    fn eigenvalue_examples() {
        let moves = add_box(&p("1"));
        let row = moves.iter().find(|m| m.target == p("2")).unwrap();
        let col = moves.iter().find(|m| m.target == p("1,1")).unwrap();
        assert_eq!(eigenvalue_content(&p("1"), row, 2).unwrap(), 3);
        assert_eq!(eigenvalue_content(&p("1"), col, 2).unwrap(), 1);
        assert_eq!(eigenvalue_content(&p("1"), col, 3).unwrap(), 2);
        let empty = &add_box(&Partition::empty())[0];
        assert_eq!(eigenvalue_content(&Partition::empty(), empty, 7).unwrap(), 7);

        assert_eq!(eigenvalue_character(&p("1"), &p("2"), 2).unwrap(), Rational::from(3));
        assert_eq!(eigenvalue_character(&p("1"), &p("1,1"), 2).unwrap(), Rational::from(1));
        assert_eq!(eigenvalue_character(&p("2"), &p("2,1"), 5).unwrap(), Rational::from(4));
        assert!(matches!(
            eigenvalue_character(&p("2"), &p("1,1,1"), 5),
            Err(Error::NotBranch { .. })
        ));

        assert_eq!(
            eigenvalue_multiplicity_formula(&p("1"), &p("2"), 2).unwrap(),
            Rational::from(3)
        );
        assert_eq!(
            eigenvalue_multiplicity_formula(&p("1"), &p("1,1"), 2).unwrap(),
            Rational::from(1)
        );
        assert_eq!(
            eigenvalue_multiplicity_formula(&p("1,1"), &p("1,1,1"), 2).unwrap(),
            Rational::from(0)
        );
        assert!(matches!(
            eigenvalue_multiplicity_formula(&p("1,1,1"), &p("1,1,1,1"), 2),
            Err(Error::ZeroMultiplicity { .. })
        ));
    }

    #[test]
    fn z_examples() {
        let z = build_z(&Partition::empty(), 2, 3).unwrap();
        assert_eq!(z.values, dmatrix![1.0]);
        let z = build_z(&p("1"), 3, 2).unwrap();
        let h = 0.5f64.sqrt();
        assert!(max_abs_diff(&z.values, &dmatrix![h, -h; h, h]) < 1e-15);
        let q = build_q(&p("1"), 3, 2).unwrap();
        let diag = z.values.transpose() * q.values * &z.values;
        assert!(max_abs_diff(&diag, &dmatrix![3.0, 0.0; 0.0, 1.0]) < 1e-12);
    }

    #[test]
    fn q_spectrum_matches_closed_form() {
        for alpha in [p("2,1"), p("2,2"), p("3,1"), p("1,1,1")] {
            let n = alpha.size() + 2;
            for d in 2..=4 {
                let q = build_q(&alpha, n, d).unwrap();
                let mut expect: Vec<f64> = q_spectrum(&alpha, d)
                    .iter()
                    .flat_map(|e| std::iter::repeat_n(e.lambda as f64, e.multiplicity))
                    .collect();
                expect.sort_by(|a, b| b.total_cmp(a));
                let got = symmetric_eigenvalues(&q.values);
                for (g, e) in got.iter().zip(&expect) {
                    assert!((g - e).abs() < 1e-9, "{alpha} d={d}: {got:?} vs {expect:?}");
                }
            }
        }
    }
}
