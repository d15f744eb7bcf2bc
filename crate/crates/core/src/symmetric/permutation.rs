use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::symmetric::Partition;

/// A permutation of `{1..m}` stored 0-based as its image array.
///
/// Composition follows functions: `(s * t)(i) = s(t(i))`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// From 0-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    /// From 1-based images, as written in one-line notation.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidPermutation(format!("{images:?} is not 1-based")));
        }
        Self::from_images(images.iter().map(|&i| i - 1).collect())
    }

    pub fn identity(m: usize) -> Self {
        Self {
            images: (0..m).collect(),
        }
    }

    /// The transposition of the 1-based points `a` and `b` in `S(m)`.
    /// `a == b` gives the identity.
    pub fn transposition(m: usize, a: usize, b: usize) -> Self {
        assert!(
            a >= 1 && b >= 1 && a <= m && b <= m,
            "transposition ({a},{b}) outside S({m})"
        );
        let mut images: Vec<usize> = (0..m).collect();
        images.swap(a - 1, b - 1);
        Self { images }
    }

    /// Uniformly random permutation of degree `m`.
    pub fn random<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Self {
        let mut images: Vec<usize> = (0..m).collect();
        images.shuffle(rng);
        Self { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Image of the 1-based point `i`, 1-based.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Self { images }
    }

    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(
            self.degree(),
            other.degree(),
            "composing permutations of different degree"
        );
        Self {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    /// Same permutation acting on `{1..m}` with the extra points fixed.
    pub fn embed(&self, m: usize) -> Self {
        assert!(m >= self.degree());
        let mut images = self.images.clone();
        images.extend(self.degree()..m);
        Self { images }
    }

    /// Drops the trailing fixed points down to degree `m`, if they are fixed.
    pub fn restrict(&self, m: usize) -> Option<Self> {
        if m > self.degree() || (m..self.degree()).any(|i| self.images[i] != i) {
            return None;
        }
        Some(Self {
            images: self.images[..m].to_vec(),
        })
    }

    pub fn cycle_type(&self) -> Partition {
        let mut seen = vec![false; self.images.len()];
        let mut lengths = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
                len += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        Partition::from_parts_unchecked(lengths)
    }

    /// Number of cycles, fixed points included.
    pub fn cycle_count(&self) -> usize {
        self.cycle_type().height()
    }

    pub fn sign(&self) -> i64 {
        let m = self.degree();
        if (m - self.cycle_count()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Adjacent transpositions `k` (meaning `(k, k+1)`, 1-based) such that
    /// `self = s_{k_1} s_{k_2} ... s_{k_r}`.
    pub fn adjacent_word(&self) -> Vec<usize> {
        // Bubble sort: each swap at position j right-multiplies by s_j, and
        // w s_{j_1} ... s_{j_r} = e gives w = s_{j_r} ... s_{j_1}.
        let mut w = self.images.clone();
        let mut swaps = Vec::new();
        let m = w.len();
        for pass in 0..m {
            let mut swapped = false;
            for j in 0..m.saturating_sub(1 + pass) {
                if w[j] > w[j + 1] {
                    w.swap(j, j + 1);
                    swaps.push(j + 1);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        swaps.reverse();
        swaps
    }

    /// Iterates over all `m!` permutations of degree `m` (Heap's algorithm).
    pub fn all(m: usize) -> impl Iterator<Item = Permutation> {
        AllPermutations::new(m)
    }
}

impl std::ops::Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one_line: Vec<usize> = self.images.iter().map(|i| i + 1).collect();
        write!(f, "Perm{one_line:?}")
    }
}

struct AllPermutations {
    current: Vec<usize>,
    counters: Vec<usize>,
    index: usize,
    started: bool,
    done: bool,
}

impl AllPermutations {
    fn new(m: usize) -> Self {
        Self {
            current: (0..m).collect(),
            counters: vec![0; m],
            index: 1,
            started: false,
            done: false,
        }
    }
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(Permutation {
                images: self.current.clone(),
            });
        }
        let m = self.current.len();
        while self.index < m {
            if self.counters[self.index] < self.index {
                if self.index.is_multiple_of(2) {
                    self.current.swap(0, self.index);
                } else {
                    self.current.swap(self.counters[self.index], self.index);
                }
                self.counters[self.index] += 1;
                self.index = 1;
                return Some(Permutation {
                    images: self.current.clone(),
                });
            }
            self.counters[self.index] = 0;
            self.index += 1;
        }
        self.done = true;
        None
    }
}
