//! Exact scalars: rationals, and sums of square roots of integers.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::LazyLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

pub type Rational = num_rational::Ratio<i128>;

/// JSON form `{"num": .., "den": ..}` for exact rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RationalJson {
    pub num: i128,
    pub den: i128,
}

impl From<Rational> for RationalJson {
    fn from(r: Rational) -> Self {
        Self {
            num: *r.numer(),
            den: *r.denom(),
        }
    }
}

pub fn serialize_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    RationalJson::from(*r).serialize(s)
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

const SMALL_PRIMES_BOUND: u32 = 200;

static SMALL_PRIMES: LazyLock<Vec<u32>> = LazyLock::new(|| {
    (2..SMALL_PRIMES_BOUND)
        .filter(|&p| (2..p).take_while(|q| q * q <= p).all(|q| p % q != 0))
        .collect()
});

/// `Σ c_r √r` with nonnegative integer coefficients, radicands stored with
/// small square factors pulled into the coefficient.
///
/// Radicands are only partially reduced (square factors of primes below
/// 200 are extracted, and perfect squares collapse to 1), so two equal
/// values may occasionally be stored under different radicands. Every
/// stored term is still exact.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RadicalSum {
    terms: BTreeMap<BigUint, BigUint>,
}

impl RadicalSum {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `√value`.
    pub fn sqrt_of(value: BigUint) -> Self {
        let mut s = Self::zero();
        s.add_sqrt(BigUint::one(), value);
        s
    }

    /// Adds `coef · √value`.
    pub fn add_sqrt(&mut self, coef: BigUint, value: BigUint) {
        if coef.is_zero() || value.is_zero() {
            return;
        }
        let (outside, inside) = extract_square(value);
        *self.terms.entry(inside).or_default() += coef * outside;
    }

    pub fn add(&mut self, other: &Self) {
        for (r, c) in &other.terms {
            *self.terms.entry(r.clone()).or_default() += c;
        }
    }

    /// `(Σ c_r √r)²`, again as a radical sum.
    pub fn square(&self) -> Self {
        let terms: Vec<(&BigUint, &BigUint)> = self.terms.iter().collect();
        let mut out = Self::zero();
        for (i, (r, c)) in terms.iter().enumerate() {
            *out.terms.entry(BigUint::one()).or_default() += *c * *c * *r;
            for (s, e) in &terms[i + 1..] {
                // √r √s = g √(r/g · s/g) with g = gcd(r, s).
                let g = r.gcd(s);
                let coef = BigUint::from(2u32) * *c * *e * &g;
                out.add_sqrt(coef, (*r / &g) * (*s / &g));
            }
        }
        out
    }

    pub fn to_f64(&self) -> f64 {
        // Integer part first so exact results stay exact in floating point.
        let integer: BigUint = self
            .terms
            .iter()
            .filter(|(r, _)| r.is_one())
            .map(|(_, c)| c.clone())
            .sum();
        let mut acc = integer.to_f64().unwrap_or(f64::INFINITY);
        for (r, c) in self.terms.iter().filter(|(r, _)| !r.is_one()) {
            acc += c.to_f64().unwrap_or(f64::INFINITY) * r.to_f64().unwrap_or(f64::INFINITY).sqrt();
        }
        acc
    }

    /// Integer value, when no irrational terms remain.
    pub fn as_integer(&self) -> Option<BigUint> {
        if self.terms.keys().all(|r| r.is_one()) {
            Some(self.terms.values().cloned().sum())
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigUint, &BigUint)> {
        self.terms.iter().map(|(r, c)| (c, r))
    }
}

impl fmt::Display for RadicalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (r, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (c.is_one(), r.is_one()) {
                (_, true) => write!(f, "{c}")?,
                (true, false) => write!(f, "√{r}")?,
                (false, false) => write!(f, "{c}√{r}")?,
            }
        }
        Ok(())
    }
}

fn extract_square(mut value: BigUint) -> (BigUint, BigUint) {
    let root = value.sqrt();
    if &root * &root == value {
        return (root, BigUint::one());
    }
    let mut outside = BigUint::one();
    for &p in SMALL_PRIMES.iter() {
        let p2 = BigUint::from(p * p);
        while (&value % &p2).is_zero() {
            value /= &p2;
            outside *= p;
        }
    }
    (outside, value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squares_collapse() {
        let s = RadicalSum::sqrt_of(BigUint::from(16u32));
        assert_eq!(s.as_integer(), Some(BigUint::from(4u32)));
        let s = RadicalSum::sqrt_of(BigUint::from(12u32));
        assert_eq!(s.to_string(), "2√3");
    }

    #[test]
    fn square_of_a_sum() {
        let mut s = RadicalSum::sqrt_of(BigUint::from(3u32));
        s.add_sqrt(BigUint::one(), BigUint::one());
        let sq = s.square();
        assert_eq!(sq.to_string(), "4 + 2√3");
        assert!((sq.to_f64() - (4.0 + 2.0 * 3f64.sqrt())).abs() < 1e-14);

        let mut s = RadicalSum::sqrt_of(BigUint::from(6u32));
        s.add_sqrt(BigUint::one(), BigUint::from(10u32));
        // (√6 + √10)² = 16 + 2√60 = 16 + 4√15
        assert_eq!(s.square().to_string(), "16 + 4√15");
    }

    #[test]
    fn rational_json() {
        let r = Rational::new(6, 4);
        assert_eq!(
            serde_json::to_string(&RationalJson::from(r)).unwrap(),
            r#"{"num":3,"den":2}"#
        );
    }
}
