use std::collections::HashMap;
use std::sync::{Arc, LazyLock, RwLock};

use serde::Serialize;

use crate::symmetric::{restrictions, Partition};

/// A standard filling of a Young diagram with `1..=m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct YoungTableau {
    pub shape: Partition,
    pub rows: Vec<Vec<usize>>,
}

impl YoungTableau {
    /// 0-based `(row, col)` of every entry, indexed by `entry - 1`.
    pub fn positions(&self) -> Vec<(usize, usize)> {
        let mut pos = vec![(0, 0); self.shape.size()];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                pos[v - 1] = (i, j);
            }
        }
        pos
    }

    pub fn is_standard(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]));
        let cols_ok = self
            .rows
            .windows(2)
            .all(|pair| pair[1].iter().enumerate().all(|(j, &below)| pair[0][j] < below));
        rows_ok && cols_ok
    }

    /// Content `col - row` of the box holding `entry` (1-based).
    pub fn content_of(&self, entry: usize) -> i64 {
        for (i, row) in self.rows.iter().enumerate() {
            if let Some(j) = row.iter().position(|&v| v == entry) {
                return j as i64 - i as i64;
            }
        }
        panic!("entry {entry} not in tableau");
    }
}

/// All standard tableaux of shape `mu` in last-letter order: grouped by the
/// shape left after deleting `m` (canonical partition order), then recursively.
pub fn standard_tableaux(mu: &Partition) -> Vec<YoungTableau> {
    young_basis(mu).tableaux.clone()
}

/// Tableaux of one shape together with the data Young's orthogonal form needs.
#[derive(Debug)]
pub(crate) struct YoungBasis {
    pub tableaux: Vec<YoungTableau>,
    /// `contents[t][v - 1]` is the content of entry `v` in tableau `t`.
    pub contents: Vec<Vec<i64>>,
    /// `swapped[t][k - 1]` is the index of the tableau with `k` and `k + 1`
    /// exchanged, when that tableau is standard.
    pub swapped: Vec<Vec<Option<usize>>>,
}

static BASES: LazyLock<RwLock<HashMap<Partition, Arc<YoungBasis>>>> = LazyLock::new(|| RwLock::new(HashMap::new()));

pub(crate) fn young_basis(mu: &Partition) -> Arc<YoungBasis> {
    if let Some(b) = BASES.read().unwrap().get(mu) {
        return b.clone();
    }
    let basis = Arc::new(build_basis(mu));
    // Racing builders produce identical values; keep whichever landed first.
    BASES.write().unwrap().entry(mu.clone()).or_insert(basis).clone()
}

fn build_basis(mu: &Partition) -> YoungBasis {
    let tableaux = enumerate(mu);
    let m = mu.size();
    let index: HashMap<&Vec<Vec<usize>>, usize> = tableaux.iter().enumerate().map(|(i, t)| (&t.rows, i)).collect();
    let contents: Vec<Vec<i64>> = tableaux
        .iter()
        .map(|t| t.positions().into_iter().map(|(i, j)| j as i64 - i as i64).collect())
        .collect();
    let swapped = tableaux
        .iter()
        .map(|t| {
            (1..m)
                .map(|k| {
                    let rows: Vec<Vec<usize>> = t
                        .rows
                        .iter()
                        .map(|r| {
                            r.iter()
                                .map(|&v| match v {
                                    v if v == k => k + 1,
                                    v if v == k + 1 => k,
                                    v => v,
                                })
                                .collect()
                        })
                        .collect();
                    index.get(&rows).copied()
                })
                .collect()
        })
        .collect();
    YoungBasis {
        tableaux,
        contents,
        swapped,
    }
}

fn enumerate(mu: &Partition) -> Vec<YoungTableau> {
    let m = mu.size();
    if m == 0 {
        return vec![YoungTableau {
            shape: mu.clone(),
            rows: Vec::new(),
        }];
    }
    let mut out = Vec::new();
    for alpha in restrictions(mu) {
        let row = (0..mu.height())
            .find(|&i| alpha.row_len(i) != mu.row_len(i))
            .expect("restriction differs in one row");
        for sub in young_basis(&alpha).tableaux.iter() {
            let mut rows = sub.rows.clone();
            if row == rows.len() {
                rows.push(vec![m]);
            } else {
                rows[row].push(m);
            }
            out.push(YoungTableau {
                shape: mu.clone(),
                rows,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetric::{dim_irrep, partitions_of};

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn small_shapes() {
        assert_eq!(standard_tableaux(&p("2")).len(), 1);
        let t = standard_tableaux(&p("2,1"));
        assert_eq!(t.len(), 2);
        assert_eq!(t[0].rows, vec![vec![1, 2], vec![3]]);
        assert_eq!(t[1].rows, vec![vec![1, 3], vec![2]]);
        assert_eq!(standard_tableaux(&p("2,2")).len(), 2);
    }

    #[test]
    fn counts_match_hook_length_and_are_standard() {
        for m in 0..=7 {
            for mu in partitions_of(m, None) {
                let tabs = standard_tableaux(&mu);
                assert_eq!(tabs.len() as u128, dim_irrep(&mu), "{mu}");
                assert!(tabs.iter().all(YoungTableau::is_standard));
            }
        }
    }

    #[test]
    fn removing_the_largest_entry_lands_in_a_restriction() {
        for mu in partitions_of(6, None) {
            let allowed = restrictions(&mu);
            for t in standard_tableaux(&mu) {
                let rows: Vec<Vec<usize>> = t
                    .rows
                    .iter()
                    .map(|r| r.iter().copied().filter(|&v| v != 6).collect::<Vec<_>>())
                    .filter(|r: &Vec<usize>| !r.is_empty())
                    .collect();
                let shape = Partition::new(rows.iter().map(Vec::len).collect()).unwrap();
                assert!(allowed.contains(&shape));
            }
        }
    }
}
