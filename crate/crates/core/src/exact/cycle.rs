//! Zero-sum cyclic sequences and the tied-race dominance count.

use num_traits::{Signed, Zero};

use super::{caps, check_cap};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Rationals summing to zero with no proper cyclic substring summing to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleSequence {
    entries: Vec<Rational>,
}

impl CycleSequence {
    pub fn new(entries: Vec<Rational>) -> Result<Self> {
        let m = entries.len();
        if m == 0 {
            return Err(Error::domain("cycle sequence must be nonempty"));
        }
        if !entries.iter().sum::<Rational>().is_zero() {
            return Err(Error::domain("entries must sum to zero"));
        }
        for start in 0..m {
            let mut acc = Rational::zero();
            for len in 1..m {
                acc += &entries[(start + len - 1) % m];
                if acc.is_zero() {
                    return Err(Error::domain(format!(
                        "cyclic substring of length {len} starting at {} sums to zero",
                        start + 1
                    )));
                }
            }
        }
        Ok(CycleSequence { entries })
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The rotation starting at the 1-based index `k`.
    pub fn rotation(&self, k: usize) -> Vec<Rational> {
        let m = self.entries.len();
        (0..m).map(|i| self.entries[(k - 1 + i) % m].clone()).collect()
    }
}

fn prefixes_nonneg(seq: &[Rational]) -> bool {
    let mut acc = Rational::zero();
    seq.iter().all(|v| {
        acc += v;
        !acc.is_negative()
    })
}

/// 1-based start of the unique rotation whose partial sums are all `>= 0`.
///
/// Computed as one past the argmin of the partial sums `P_0 = 0, ..., P_{m-1}`,
/// then checked against all `m` rotations.
pub fn spitzer_rotation(z: &CycleSequence) -> Result<usize> {
    let mut best = (Rational::zero(), 0usize);
    let mut acc = Rational::zero();
    for (j, v) in z.entries[..z.len() - 1].iter().enumerate() {
        acc += v;
        if acc < best.0 {
            best = (acc.clone(), j + 1);
        }
    }
    let k = best.1 + 1;
    let good: Vec<usize> = (1..=z.len())
        .filter(|&r| prefixes_nonneg(&z.rotation(r)))
        .collect();
    if good != [k] {
        return Err(Error::verification(format!(
            "argmin rotation {k} disagrees with exhaustive search {good:?}"
        )));
    }
    Ok(k)
}

/// Interleavings of `m` U-labels and `m` V-labels in which the `i`-th V
/// precedes the `i`-th U for every `i`, counted over all `C(2m, m)` merges.
pub fn dominance_count(m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::domain("m must be at least 1"));
    }
    check_cap("dominance m", m, caps::DOMINANCE, caps::DOMINANCE)?;
    let len = 2 * m as u32;
    // bit set = V label; Gosper's hack walks every mask with m bits set
    let mut mask: u64 = (1 << m) - 1;
    let limit: u64 = 1 << len;
    let mut count = 0;
    while mask < limit {
        let mut seen_v = 0u32;
        let mut seen_u = 0u32;
        let mut ok = true;
        for pos in 0..len {
            if mask >> pos & 1 == 1 {
                seen_v += 1;
            } else {
                seen_u += 1;
                if seen_u > seen_v {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            count += 1;
        }
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn cyc(v: &[(i64, i64)]) -> CycleSequence {
        CycleSequence::new(v.iter().map(|&(n, d)| ratio(n, d)).collect()).unwrap()
    }

    #[test]
    fn rotation_examples() {
        assert_eq!(spitzer_rotation(&cyc(&[(1, 1), (-1, 1)])).unwrap(), 1);
        assert_eq!(spitzer_rotation(&cyc(&[(3, 10), (-7, 10), (4, 10)])).unwrap(), 3);
        assert_eq!(spitzer_rotation(&cyc(&[(-2, 1), (3, 1), (-1, 1)])).unwrap(), 2);
    }

    #[test]
    fn invalid_cycles_rejected() {
        assert!(CycleSequence::new(vec![int(1), int(1)]).is_err());
        assert!(CycleSequence::new(vec![int(1), int(-1), int(2), int(-2)]).is_err());
        assert!(CycleSequence::new(vec![]).is_err());
    }

    #[test]
    fn dominance_examples() {
        assert_eq!(dominance_count(1).unwrap(), 1);
        assert_eq!(dominance_count(2).unwrap(), 2);
        assert_eq!(dominance_count(3).unwrap(), 5);
        assert!(dominance_count(0).is_err());
        assert!(dominance_count(15).is_err());
    }
}
