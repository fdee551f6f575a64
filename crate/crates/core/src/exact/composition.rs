//! Compositions (ordered partitions), their bit-string encoding, and the
//! weak majorization order.

use std::fmt;

use super::path::{Path, Step};
use super::{caps, check_cap};
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::domain("composition needs at least one part"));
        }
        if parts.contains(&0) {
            return Err(Error::domain(format!("parts must be positive: {parts:?}")));
        }
        Ok(Composition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn total(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p)).sum()
    }

    /// Each part `u_i` becomes `u_i - 1` zeros and each comma a one; the
    /// result has length `n - 1`.
    pub fn encode(&self) -> Vec<bool> {
        let mut bits = Vec::with_capacity(self.total() as usize);
        for (i, &p) in self.parts.iter().enumerate() {
            if i > 0 {
                bits.push(true);
            }
            bits.extend(std::iter::repeat_n(false, p as usize - 1));
        }
        bits
    }

    pub fn decode(bits: &[bool]) -> Self {
        let mut parts = vec![1u32];
        for &b in bits {
            if b {
                parts.push(1);
            } else {
                *parts.last_mut().expect("nonempty") += 1;
            }
        }
        Composition { parts }
    }

    fn prefix_sums(&self) -> Vec<u64> {
        self.parts
            .iter()
            .scan(0u64, |acc, &p| {
                *acc += u64::from(p);
                Some(*acc)
            })
            .collect()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

pub fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

pub fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::Parse(format!("invalid bit {other:?}"))),
        })
        .collect()
}

/// All `2^(n-1)` compositions of `n`, in bit-mask order.
pub fn all_compositions(n: u32) -> impl Iterator<Item = Composition> {
    assert!((1..=32).contains(&n), "composition size out of range");
    let len = (n - 1) as usize;
    (0..1u64 << len).map(move |mask| {
        let bits: Vec<bool> = (0..len).map(|i| mask >> i & 1 == 1).collect();
        Composition::decode(&bits)
    })
}

/// Position-wise comparison of two bit strings: `U` where `s < s'`, `H`
/// where they agree, `D` where `s > s'`.
pub fn motzkin_from_bitpair(s: &[bool], s_prime: &[bool]) -> Result<Path> {
    if s.len() != s_prime.len() {
        return Err(Error::domain(format!(
            "bit strings differ in length ({} vs {})",
            s.len(),
            s_prime.len()
        )));
    }
    Ok(Path::new(
        s.iter()
            .zip(s_prime)
            .map(|(a, b)| match a.cmp(b) {
                std::cmp::Ordering::Less => Step::Up,
                std::cmp::Ordering::Equal => Step::Flat,
                std::cmp::Ordering::Greater => Step::Down,
            })
            .collect(),
    ))
}

/// `u` weakly majorizes `v`: prefix sums of `u` are `>=` those of `v` up to
/// the shorter length.
pub fn majorizes_weak(u: &Composition, v: &Composition) -> Result<bool> {
    if u.total() != v.total() {
        return Err(Error::domain(format!("{u} and {v} have different totals")));
    }
    Ok(u.prefix_sums()
        .iter()
        .zip(v.prefix_sums())
        .all(|(a, b)| *a >= b))
}

/// Exact fraction of ordered pairs of compositions of `n` in which the first
/// weakly majorizes the second.
pub fn majorization_probability_exact(n: u64) -> Result<Rational> {
    majorization_probability_exact_capped(n, caps::MAJORIZATION)
}

pub fn majorization_probability_exact_capped(n: u64, cap: u64) -> Result<Rational> {
    if n == 0 {
        return Err(Error::domain("n must be at least 1"));
    }
    check_cap("majorization n", n, cap, caps::MAJORIZATION_HARD)?;
    use rayon::prelude::*;
    let prefixes: Vec<Vec<u64>> = all_compositions(n as u32).map(|c| c.prefix_sums()).collect();
    let hits: u64 = prefixes
        .par_iter()
        .map(|u| {
            prefixes
                .iter()
                .filter(|v| u.iter().zip(v.iter()).all(|(a, b)| a >= b))
                .count() as u64
        })
        .sum();
    let total = (prefixes.len() as u64).pow(2);
    Ok(Rational::new(hits.into(), total.into()))
}
