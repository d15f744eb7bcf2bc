use std::collections::HashMap;
use std::sync::{Arc, LazyLock, RwLock};

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::MatrixJson;
use crate::symmetric::{restrictions, Partition, Permutation};
use crate::young::tableau::young_basis;

/// Real orthogonal matrix of a permutation in Young's orthogonal form.
#[derive(Clone, Debug, PartialEq)]
pub struct IrrepMatrix {
    pub mu: Partition,
    pub values: DMatrix<f64>,
}

impl Serialize for IrrepMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            mu: &'a Partition,
            basis_order: &'static str,
            matrix: MatrixJson,
        }
        Repr {
            mu: &self.mu,
            basis_order: "last-letter",
            matrix: MatrixJson::from(&self.values),
        }
        .serialize(serializer)
    }
}

/// One diagonal block of the restriction of `mu` to `S(m-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrirBlock {
    pub alpha: Partition,
    pub offset: usize,
    pub size: usize,
}

/// Block layout of the basis of `mu` over the irreps of `S(m-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrirIndex {
    pub mu: Partition,
    pub blocks: Vec<PrirBlock>,
}

impl PrirIndex {
    pub fn new(mu: &Partition) -> Self {
        let mut offset = 0;
        let blocks = restrictions(mu)
            .into_iter()
            .map(|alpha| {
                let size = young_basis(&alpha).tableaux.len();
                let block = PrirBlock { alpha, offset, size };
                offset += size;
                block
            })
            .collect();
        Self { mu: mu.clone(), blocks }
    }

    pub fn block(&self, alpha: &Partition) -> Result<&PrirBlock> {
        self.blocks
            .iter()
            .find(|b| &b.alpha == alpha)
            .ok_or_else(|| Error::InvalidBlock {
                mu: self.mu.clone(),
                block: alpha.clone(),
            })
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.size).sum()
    }
}

/// Sparse action of `s_k = (k, k+1)`: each basis vector maps to a diagonal
/// part plus at most one partner.
#[derive(Debug)]
struct Generator {
    diag: Vec<f64>,
    partner: Vec<Option<(usize, f64)>>,
}

impl Generator {
    fn dense(&self) -> DMatrix<f64> {
        let n = self.diag.len();
        let mut m = DMatrix::zeros(n, n);
        for (t, &d) in self.diag.iter().enumerate() {
            m[(t, t)] = d;
            if let Some((u, off)) = self.partner[t] {
                m[(t, u)] = off;
            }
        }
        m
    }

    /// `self · target`, in place.
    fn apply_left(&self, target: &mut DMatrix<f64>) {
        let src = target.clone();
        for t in 0..self.diag.len() {
            for c in 0..src.ncols() {
                let mut v = self.diag[t] * src[(t, c)];
                if let Some((u, off)) = self.partner[t] {
                    v += off * src[(u, c)];
                }
                target[(t, c)] = v;
            }
        }
    }
}

type GeneratorCache = RwLock<HashMap<(Partition, usize), Arc<Generator>>>;

static GENERATORS: LazyLock<GeneratorCache> = LazyLock::new(|| RwLock::new(HashMap::new()));

fn generator(mu: &Partition, k: usize) -> Arc<Generator> {
    let key = (mu.clone(), k);
    if let Some(g) = GENERATORS.read().unwrap().get(&key) {
        return g.clone();
    }
    let basis = young_basis(mu);
    let n = basis.tableaux.len();
    let mut diag = vec![0.0; n];
    let mut partner = vec![None; n];
    for t in 0..n {
        let axial = basis.contents[t][k] - basis.contents[t][k - 1];
        let inv = 1.0 / axial as f64;
        diag[t] = inv;
        if let Some(u) = basis.swapped[t][k - 1] {
            partner[t] = Some((u, (1.0 - inv * inv).sqrt()));
        }
    }
    let g = Arc::new(Generator { diag, partner });
    GENERATORS.write().unwrap().entry(key).or_insert(g).clone()
}

/// Matrix of the adjacent transposition `(k, k+1)` in Young's orthogonal form.
pub fn yor_transposition(mu: &Partition, k: usize) -> Result<IrrepMatrix> {
    let m = mu.size();
    if k == 0 || k >= m {
        return Err(Error::InvalidArgument(format!(
            "adjacent transposition index {k} outside 1..{m}"
        )));
    }
    Ok(IrrepMatrix {
        mu: mu.clone(),
        values: generator(mu, k).dense(),
    })
}

/// Matrix of `sigma` in Young's orthogonal form of `mu`.
pub fn yor(mu: &Partition, sigma: &Permutation) -> Result<IrrepMatrix> {
    Ok(IrrepMatrix {
        mu: mu.clone(),
        values: yor_matrix(mu, sigma)?,
    })
}

pub(crate) fn yor_matrix(mu: &Partition, sigma: &Permutation) -> Result<DMatrix<f64>> {
    if sigma.degree() != mu.size() {
        return Err(Error::InvalidArgument(format!(
            "permutation of degree {} applied to irrep {mu} of S({})",
            sigma.degree(),
            mu.size()
        )));
    }
    let n = young_basis(mu).tableaux.len();
    let mut acc = DMatrix::identity(n, n);
    for &k in sigma.adjacent_word().iter().rev() {
        generator(mu, k).apply_left(&mut acc);
    }
    Ok(acc)
}

/// The `(alpha, beta)` block of `yor(mu, sigma)` in the PRIR layout.
pub fn prir_block(mu: &Partition, sigma: &Permutation, alpha: &Partition, beta: &Partition) -> Result<DMatrix<f64>> {
    let index = PrirIndex::new(mu);
    let (row, col) = (index.block(alpha)?, index.block(beta)?);
    let full = yor_matrix(mu, sigma)?;
    Ok(full.view((row.offset, col.offset), (row.size, col.size)).into_owned())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;
    use nalgebra::dmatrix;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn transposition_examples() {
        assert_eq!(yor_transposition(&p("2"), 1).unwrap().values, dmatrix![1.0]);
        assert_eq!(yor_transposition(&p("1,1"), 1).unwrap().values, dmatrix![-1.0]);
        let half_root3 = 3f64.sqrt() / 2.0;
        let expected = dmatrix![-0.5, half_root3; half_root3, 0.5];
        let got = yor_transposition(&p("2,1"), 2).unwrap().values;
        assert!(max_abs_diff(&got, &expected) < 1e-15);
        assert!(yor_transposition(&p("2,1"), 3).is_err());
        assert!(yor_transposition(&p("2,1"), 0).is_err());
    }

    #[test]
    fn permutation_examples() {
        let id = yor(&p("3,1"), &Permutation::identity(4)).unwrap();
        assert_eq!(id.values, DMatrix::identity(3, 3));
        let swap12 = yor(&p("2,1"), &Permutation::transposition(3, 1, 2)).unwrap();
        assert_eq!(swap12.values, dmatrix![1.0, 0.0; 0.0, -1.0]);
        for sigma in Permutation::all(4) {
            let m = yor(&p("1,1,1,1"), &sigma).unwrap().values;
            assert!((m[(0, 0)] - sigma.sign() as f64).abs() < 1e-12);
        }
        assert!(yor(&p("2,1"), &Permutation::identity(4)).is_err());
    }

    #[test]
    fn prir_block_examples() {
        let mu = p("2,1");
        let id = Permutation::identity(3);
        assert_eq!(prir_block(&mu, &id, &p("2"), &p("2")).unwrap(), dmatrix![1.0]);
        assert_eq!(prir_block(&mu, &id, &p("2"), &p("1,1")).unwrap(), dmatrix![0.0]);
        let b = prir_block(&mu, &Permutation::transposition(3, 2, 3), &p("2"), &p("1,1")).unwrap();
        assert!((b[(0, 0)] - 3f64.sqrt() / 2.0).abs() < 1e-15);
        let err = prir_block(&mu, &id, &p("3"), &p("2")).unwrap_err();
        assert!(matches!(err, Error::InvalidBlock { .. }));
    }

    #[test]
    fn prir_index_layout() {
        let idx = PrirIndex::new(&p("3,2,1"));
        let shown: Vec<(String, usize, usize)> = idx
            .blocks
            .iter()
            .map(|b| (b.alpha.to_string(), b.offset, b.size))
            .collect();
        assert_eq!(
            shown,
            vec![
                ("3,2".to_string(), 0, 5),
                ("3,1,1".to_string(), 5, 6),
                ("2,2,1".to_string(), 11, 5)
            ]
        );
        assert_eq!(idx.dim(), 16);
    }
}
