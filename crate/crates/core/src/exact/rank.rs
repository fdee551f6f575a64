//! Exact event probabilities when all `2n` step sizes live on widely
//! separated scales, so each prefix comparison is decided by the largest
//! scale present.

use super::{caps, check_cap};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Fraction of the `(2n)!` rank assignments to `X_1..X_n, Y_1..Y_n` for
/// which `ahead(k, x_leads)` holds at every `k` (1-based), where `x_leads`
/// tells whether X's prefix holds the largest rank among the first `k`
/// steps of both racers.
fn rank_oracle(n: usize, ahead: impl Fn(usize, bool) -> bool) -> Rational {
    let slots = 2 * n;
    let mut ranks: Vec<usize> = (0..slots).collect();
    let mut hits: u64 = 0;
    let mut total: u64 = 0;
    let mut check = |r: &[usize]| {
        total += 1;
        let (mut mx, mut my) = (0usize, 0usize);
        for k in 0..n {
            mx = mx.max(r[k] + 1);
            my = my.max(r[n + k] + 1);
            if !ahead(k + 1, mx > my) {
                return;
            }
        }
        hits += 1;
    };
    // Heap's algorithm
    let mut c = vec![0usize; slots];
    check(&ranks);
    let mut i = 0;
    while i < slots {
        if c[i] < i {
            if i % 2 == 0 {
                ranks.swap(0, i);
            } else {
                ranks.swap(c[i], i);
            }
            check(&ranks);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Rational::new(hits.into(), total.into())
}

/// Probability that X is ahead after every odd step and Y after every even
/// step, under strict scale separation.
pub fn alternation_rank_oracle(n: u64) -> Result<Rational> {
    alternation_rank_oracle_capped(n, caps::RANK_ORACLE)
}

pub fn alternation_rank_oracle_capped(n: u64, cap: u64) -> Result<Rational> {
    if n == 0 {
        return Err(Error::domain("n must be at least 1"));
    }
    check_cap("rank oracle n", n, cap, caps::RANK_ORACLE_HARD)?;
    Ok(rank_oracle(n as usize, |k, x_leads| x_leads == (k % 2 == 1)))
}

/// Probability that X leads after every step, under strict scale separation.
pub fn lead_rank_oracle(n: u64) -> Result<Rational> {
    if n == 0 {
        return Err(Error::domain("n must be at least 1"));
    }
    check_cap("rank oracle n", n, caps::RANK_ORACLE, caps::RANK_ORACLE_HARD)?;
    Ok(rank_oracle(n as usize, |_, x_leads| x_leads))
}
