//! Exact integer counting: irrep dimensions, Schur–Weyl multiplicities and
//! characters of the symmetric group.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::symmetric::{Partition, Permutation};

/// Default cap on `m` for routines that enumerate all of `S(m)`.
pub const DEFAULT_FACTORIAL_LIMIT: usize = 10;

pub fn factorial(m: usize) -> BigUint {
    (1..=m).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

fn to_u128(value: BigUint, what: &str) -> u128 {
    value
        .to_u128()
        .unwrap_or_else(|| panic!("{what} does not fit in 128 bits"))
}

/// Number of standard Young tableaux of shape `mu` (hook-length formula).
pub fn dim_irrep(mu: &Partition) -> u128 {
    let hooks = mu
        .boxes()
        .fold(BigUint::one(), |acc, (i, j)| acc * BigUint::from(mu.hook(i, j)));
    to_u128(factorial(mu.size()) / hooks, "irrep dimension")
}

/// Multiplicity of the irrep `mu` of `S(m)` in `(C^d)^{⊗m}`, by the
/// hook-content product `∏ (d + j - i) / hook(i, j)`.
pub fn multiplicity(mu: &Partition, d: u32) -> u128 {
    if mu.height() > d as usize {
        return 0;
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for (i, j) in mu.boxes() {
        num *= BigUint::from(d as usize + j - i);
        den *= BigUint::from(mu.hook(i, j));
    }
    let (q, r) = num.div_rem(&den);
    debug_assert!(r == BigUint::ZERO);
    to_u128(q, "multiplicity")
}

/// The same multiplicity computed as `(1/m!) Σ_σ χ^μ(σ⁻¹) d^{l(σ)}` by
/// walking every permutation of `S(m)`.
pub fn multiplicity_character_sum(mu: &Partition, d: u32) -> Result<u128> {
    multiplicity_character_sum_with_limit(mu, d, DEFAULT_FACTORIAL_LIMIT)
}

pub fn multiplicity_character_sum_with_limit(mu: &Partition, d: u32, limit: usize) -> Result<u128> {
    let m = mu.size();
    if m > limit {
        return Err(Error::LimitExceeded {
            what: "symmetric group degree",
            value: m as u128,
            limit: limit as u128,
        });
    }
    let mut table = CharacterTable::default();
    let mut total: i128 = 0;
    for sigma in Permutation::all(m) {
        // σ and σ⁻¹ share a cycle type.
        let class = sigma.cycle_type();
        let chi = table.value(mu, &class) as i128;
        total += chi * (d as i128).pow(class.height() as u32);
    }
    let order = factorial(m).to_i128().expect("m! fits for enumerable m");
    debug_assert_eq!(total % order, 0);
    Ok((total / order) as u128)
}

/// Character value `χ^μ` on the conjugacy class with cycle type `class`.
pub fn character(mu: &Partition, class: &Partition) -> i64 {
    assert_eq!(mu.size(), class.size(), "character of {mu} on class {class}");
    CharacterTable::default().value(mu, class)
}

/// Memoised Murnaghan–Nakayama evaluation.
#[derive(Default)]
pub struct CharacterTable {
    memo: HashMap<(Vec<usize>, Vec<usize>), i64>,
}

impl CharacterTable {
    pub fn value(&mut self, mu: &Partition, class: &Partition) -> i64 {
        self.eval(mu.parts().to_vec(), class.parts())
    }

    fn eval(&mut self, shape: Vec<usize>, class: &[usize]) -> i64 {
        let Some((&hook_len, rest)) = class.split_first() else {
            return 1;
        };
        let key = (shape, class.to_vec());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let shape = key.0.clone();
        // Beta-set: β_i = λ_i + (ℓ - 1 - i). Removing a rim hook of length r
        // moves one bead from β to β - r onto an empty position.
        let len = shape.len();
        let beta: Vec<usize> = shape.iter().enumerate().map(|(i, &p)| p + len - 1 - i).collect();
        let mut total = 0i64;
        for (idx, &b) in beta.iter().enumerate() {
            if b < hook_len {
                continue;
            }
            let target = b - hook_len;
            if beta.contains(&target) {
                continue;
            }
            let crossed = beta.iter().filter(|&&x| x > target && x < b).count();
            let sign = if crossed % 2 == 0 { 1 } else { -1 };
            let mut next_beta = beta.clone();
            next_beta[idx] = target;
            next_beta.sort_unstable_by(|a, b| b.cmp(a));
            let next_shape: Vec<usize> = next_beta
                .iter()
                .enumerate()
                .map(|(i, &x)| x - (len - 1 - i))
                .filter(|&p| p > 0)
                .collect();
            total += sign * self.eval(next_shape, rest);
        }
        self.memo.insert(key, total);
        total
    }
}

/// Size of the conjugacy class with the given cycle type: `m! / z_ρ`.
pub fn class_size(class: &Partition) -> BigUint {
    let mut z = BigUint::one();
    let mut counts: HashMap<usize, usize> = HashMap::new();
    for &part in class.parts() {
        *counts.entry(part).or_default() += 1;
    }
    for (part, count) in counts {
        z *= BigUint::from(part).pow(count as u32) * factorial(count);
    }
    factorial(class.size()) / z
}

/// Content of the box `nu / alpha`, when `nu` is `alpha` plus one box.
pub fn added_content(alpha: &Partition, nu: &Partition) -> Option<i64> {
    crate::symmetric::branch(alpha, nu).map(|m| m.content)
}
