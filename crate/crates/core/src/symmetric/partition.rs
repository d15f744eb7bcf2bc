use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
///
/// Labels irreducible representations of the symmetric group and Young
/// diagrams. The empty partition labels the trivial group `S(0)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has an interior zero")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Self { parts })
    }

    /// Builds a partition from parts already known to be valid.
    pub(crate) fn from_parts_unchecked(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]) && parts.iter().all(|&p| p > 0));
        Self { parts }
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    /// The one-row partition `(m)`.
    pub fn row(m: usize) -> Self {
        if m == 0 {
            Self::empty()
        } else {
            Self { parts: vec![m] }
        }
    }

    /// The one-column partition `(1^m)`.
    pub fn column(m: usize) -> Self {
        Self { parts: vec![1; m] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The integer partitioned.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of rows.
    pub fn height(&self) -> usize {
        self.parts.len()
    }

    /// Length of the main diagonal of the Young diagram.
    pub fn rank(&self) -> usize {
        self.parts.iter().enumerate().take_while(|(i, &p)| p > *i).count()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Length of row `i` (0-based), zero past the last row.
    pub fn row_len(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Self {
        let width = self.row_len(0);
        let parts = (0..width)
            .map(|j| self.parts.iter().take_while(|&&p| p > j).count())
            .collect();
        Self { parts }
    }

    /// Hook length of the box in row `i`, column `j` (both 0-based).
    pub fn hook(&self, i: usize, j: usize) -> usize {
        let arm = self.parts[i] - j - 1;
        let leg = self.parts[i + 1..].iter().take_while(|&&p| p > j).count();
        arm + leg + 1
    }

    /// Boxes as `(row, col)` pairs, 0-based, row by row.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (0..p).map(move |j| (i, j)))
    }

    /// Canonical order: reverse lexicographic, so `(3) < (2,1) < (1,1,1)`.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        other.parts.cmp(&self.parts)
    }

    /// Partition with one box added in row `row` (0-based), if that is valid.
    pub fn with_box_in_row(&self, row: usize) -> Option<Self> {
        if row > self.parts.len() {
            return None;
        }
        if row > 0 && self.parts[row - 1] == self.row_len(row) {
            return None;
        }
        let mut parts = self.parts.clone();
        if row == parts.len() {
            parts.push(1);
        } else {
            parts[row] += 1;
        }
        Some(Self { parts })
    }

    /// Partition with the last box of row `row` (0-based) removed, if that is valid.
    pub fn without_box_in_row(&self, row: usize) -> Option<Self> {
        if row >= self.parts.len() || self.row_len(row + 1) == self.parts[row] {
            return None;
        }
        let mut parts = self.parts.clone();
        parts[row] -= 1;
        if parts[row] == 0 {
            parts.pop();
        }
        Some(Self { parts })
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size().cmp(&other.size()).then_with(|| self.canonical_cmp(other))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("[]");
        }
        let mut first = true;
        for p in &self.parts {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s);
        if inner == "[]" || inner.is_empty() {
            return Ok(Self::empty());
        }
        let parts = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::InvalidPartition(format!("{s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{s:?} contains a zero part")));
        }
        Self::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Adding or removing a single box between `source` (of `m`) and `target` (of `m + 1`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoxMove {
    pub source: Partition,
    pub target: Partition,
    /// 1-based row of the box that distinguishes the two diagrams.
    pub row: usize,
    /// Content `column - row` of that box.
    pub content: i64,
}

/// All partitions of `m` with at most `max_rows` rows, in reverse lexicographic order.
pub fn partitions_of(m: usize, max_rows: Option<usize>) -> Vec<Partition> {
    let max_rows = max_rows.unwrap_or(m);
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(m, m, max_rows, &mut current, &mut out);
    out
}

fn fill(remaining: usize, cap: usize, rows_left: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition::from_parts_unchecked(current.clone()));
        return;
    }
    if rows_left == 0 {
        return;
    }
    for part in (1..=cap.min(remaining)).rev() {
        current.push(part);
        fill(remaining - part, part, rows_left - 1, current, out);
        current.pop();
    }
}

/// Every way to add one box to `alpha`, ordered by row.
pub fn add_box(alpha: &Partition) -> Vec<BoxMove> {
    (0..=alpha.height())
        .filter_map(|row| {
            alpha.with_box_in_row(row).map(|target| BoxMove {
                source: alpha.clone(),
                target,
                row: row + 1,
                content: alpha.row_len(row) as i64 - row as i64,
            })
        })
        .collect()
}

/// Every way to remove one box from `mu`, ordered by row. The moves point
/// from the smaller diagram to `mu`, exactly as `add_box` would report them.
pub fn remove_box(mu: &Partition) -> Vec<BoxMove> {
    (0..mu.height())
        .filter_map(|row| {
            mu.without_box_in_row(row).map(|source| BoxMove {
                content: source.row_len(row) as i64 - row as i64,
                source,
                target: mu.clone(),
                row: row + 1,
            })
        })
        .collect()
}

/// Partitions reachable from `mu` by removing a box, in canonical order.
pub fn restrictions(mu: &Partition) -> Vec<Partition> {
    let mut out: Vec<Partition> = remove_box(mu).into_iter().map(|m| m.source).collect();
    out.sort_by(|a, b| a.canonical_cmp(b));
    out
}

/// Partitions reachable from `alpha` by adding a box, in canonical order.
pub fn inductions(alpha: &Partition) -> Vec<Partition> {
    let mut out: Vec<Partition> = add_box(alpha).into_iter().map(|m| m.target).collect();
    out.sort_by(|a, b| a.canonical_cmp(b));
    out
}

/// The move from `alpha` to `nu`, if `nu` is `alpha` plus one box.
pub fn branch(alpha: &Partition, nu: &Partition) -> Option<BoxMove> {
    add_box(alpha).into_iter().find(|m| &m.target == nu)
}
