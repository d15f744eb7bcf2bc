use std::collections::BTreeMap;
use std::fmt::Write as _;

use nalgebra::DMatrix;

/// Real operator on `(C^d)^{⊗n}` in compressed sparse row form.
///
/// Basis index `i_1 i_2 … i_n` is read as a base-`d` number with `i_1` the
/// most significant digit, so the last tensor factor is the fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseOperator {
    pub n: usize,
    pub d: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    values: Vec<f64>,
}

impl SparseOperator {
    pub fn dim(&self) -> usize {
        self.indptr.len() - 1
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn zero(n: usize, d: usize) -> Self {
        let dim = d.pow(n as u32);
        Self {
            n,
            d,
            indptr: vec![0; dim + 1],
            indices: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn identity(n: usize, d: usize) -> Self {
        let dim = d.pow(n as u32);
        Self {
            n,
            d,
            indptr: (0..=dim).collect(),
            indices: (0..dim).collect(),
            values: vec![1.0; dim],
        }
    }

    /// Builds from `(row, col, value)` triplets; duplicates are summed in the
    /// order given and exact zeros dropped.
    pub fn from_triplets(n: usize, d: usize, triplets: impl IntoIterator<Item = (usize, usize, f64)>) -> Self {
        let dim = d.pow(n as u32);
        let mut rows: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); dim];
        for (r, c, v) in triplets {
            *rows[r].entry(c).or_insert(0.0) += v;
        }
        Self::from_rows(n, d, rows)
    }

    pub(crate) fn from_rows(n: usize, d: usize, rows: Vec<BTreeMap<usize, f64>>) -> Self {
        let mut indptr = Vec::with_capacity(rows.len() + 1);
        let mut indices = Vec::new();
        let mut values = Vec::new();
        indptr.push(0);
        for row in rows {
            for (c, v) in row {
                if v != 0.0 {
                    indices.push(c);
                    values.push(v);
                }
            }
            indptr.push(indices.len());
        }
        Self {
            n,
            d,
            indptr,
            indices,
            values,
        }
    }

    pub fn from_dense(n: usize, d: usize, m: &DMatrix<f64>) -> Self {
        let rows = (0..m.nrows())
            .map(|i| {
                (0..m.ncols())
                    .filter(|&j| m[(i, j)] != 0.0)
                    .map(|j| (j, m[(i, j)]))
                    .collect()
            })
            .collect();
        Self::from_rows(n, d, rows)
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let span = self.indptr[r]..self.indptr[r + 1];
        self.indices[span.clone()]
            .iter()
            .copied()
            .zip(self.values[span].iter().copied())
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.dim()).flat_map(move |r| self.row(r).map(move |(c, v)| (r, c, v)))
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.row(r).find(|&(j, _)| j == c).map_or(0.0, |(_, v)| v)
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim(), self.dim());
        for (r, c, v) in self.triplets() {
            m[(r, c)] = v;
        }
        m
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|r| self.get(r, r)).sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = self.clone();
        out.values.iter_mut().for_each(|v| *v *= s);
        if s == 0.0 {
            return Self::zero(self.n, self.d);
        }
        out
    }

    fn same_space(&self, other: &Self) {
        assert_eq!((self.n, self.d), (other.n, other.d), "operators on different spaces");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_space(other);
        let rows = (0..self.dim())
            .map(|r| {
                let mut row: BTreeMap<usize, f64> = self.row(r).collect();
                for (c, v) in other.row(r) {
                    *row.entry(c).or_insert(0.0) += v;
                }
                row
            })
            .collect();
        Self::from_rows(self.n, self.d, rows)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_space(other);
        let dim = self.dim();
        // Row-by-row product with a dense accumulator.
        let mut acc = vec![0.0; dim];
        let mut touched = vec![false; dim];
        let mut cols: Vec<usize> = Vec::new();
        let mut indptr = Vec::with_capacity(dim + 1);
        let mut indices = Vec::new();
        let mut values = Vec::new();
        indptr.push(0);
        for r in 0..dim {
            for (k, a) in self.row(r) {
                for (c, b) in other.row(k) {
                    if !touched[c] {
                        touched[c] = true;
                        cols.push(c);
                    }
                    acc[c] += a * b;
                }
            }
            cols.sort_unstable();
            for &c in &cols {
                if acc[c] != 0.0 {
                    indices.push(c);
                    values.push(acc[c]);
                }
                acc[c] = 0.0;
                touched[c] = false;
            }
            cols.clear();
            indptr.push(indices.len());
        }
        Self {
            n: self.n,
            d: self.d,
            indptr,
            indices,
            values,
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(self.n, self.d, self.triplets().map(|(r, c, v)| (c, r, v)))
    }

    /// Transposition of the last tensor factor only:
    /// `((r, a), (c, b)) ↦ ((r, b), (c, a))`.
    pub fn partial_transpose_last(&self) -> Self {
        let d = self.d;
        Self::from_triplets(
            self.n,
            d,
            self.triplets().map(|(r, c, v)| {
                let (rh, a) = (r / d, r % d);
                let (ch, b) = (c / d, c % d);
                (rh * d + b, ch * d + a, v)
            }),
        )
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.sub(other).max_abs()
    }

    /// Text dump: header `n d nnz`, then one `row col value` line per entry.
    pub fn dump(&self) -> String {
        let mut out = format!("{} {} {}\n", self.n, self.d, self.nnz());
        for (r, c, v) in self.triplets() {
            writeln!(out, "{r} {c} {v:e}").expect("writing to a string");
        }
        out
    }

    pub fn parse_dump(text: &str) -> Option<Self> {
        let mut lines = text.lines();
        let header: Vec<usize> = lines
            .next()?
            .split_whitespace()
            .map(|t| t.parse().ok())
            .collect::<Option<_>>()?;
        let [n, d, nnz] = header[..] else { return None };
        let mut trip = Vec::with_capacity(nnz);
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let mut it = line.split_whitespace();
            let r = it.next()?.parse().ok()?;
            let c = it.next()?.parse().ok()?;
            let v = it.next()?.parse().ok()?;
            trip.push((r, c, v));
        }
        (trip.len() == nnz).then(|| Self::from_triplets(n, d, trip))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_dump_round_trip() {
        let a = SparseOperator::from_triplets(1, 3, [(0, 1, 2.0), (2, 0, -1.0), (0, 1, 1.0)]);
        assert_eq!(a.get(0, 1), 3.0);
        assert_eq!(a.nnz(), 2);
        let id = SparseOperator::identity(1, 3);
        assert_eq!(a.mul(&id), a);
        assert_eq!(a.transpose().get(1, 0), 3.0);
        assert_eq!(a.sub(&a).nnz(), 0);
        let back = SparseOperator::parse_dump(&a.dump()).unwrap();
        assert_eq!(back, a);
        assert!(a.dump().starts_with("1 3 2\n"));
    }

    #[test]
    fn partial_transpose_is_an_involution() {
        let a = SparseOperator::from_triplets(2, 2, [(1, 2, 1.0), (3, 0, 5.0)]);
        let t = a.partial_transpose_last();
        // (0,1),(1,0) -> (0,0),(1,1)
        assert_eq!(t.get(0, 3), 1.0);
        assert_eq!(t.partial_transpose_last(), a);
        assert_eq!(t.trace(), a.trace());
    }
}
