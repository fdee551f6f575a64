//! Closed-form probabilities and counts, in exact rational arithmetic.
//!
//! Every function here is the "formula side" of a cross-check: the
//! enumeration engines in [`crate::exact`] and the Monte Carlo engine in
//! [`crate::simulate`] are compared against these values.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::rational::{central_binomial, factorial, pow2, ratio, Rational};

fn require_positive(name: &str, n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::domain(format!("{name} must be at least 1")));
    }
    Ok(())
}

/// Probability that one racer leads after every one of `n` steps when all
/// steps are i.i.d. from a continuous law: `C(2n, n) / 4^n`.
pub fn lead_prob(n: u64) -> Result<Rational> {
    require_positive("n", n)?;
    Ok(Rational::new(central_binomial(n), pow2(2 * n)))
}

/// Number of signed permutations of a generic `n`-set whose prefix sums are
/// all positive: `n! C(2n, n) / 2^n`, which equals `(2n - 1)!!`.
pub fn ballot_signed_perm_count(n: u64) -> Result<BigInt> {
    require_positive("n", n)?;
    let num = factorial(n) * central_binomial(n);
    let den = pow2(n);
    debug_assert!((&num % &den) == BigInt::from(0));
    Ok(num / den)
}

/// Probability that the first racer is strictly ahead after steps
/// `1..m-1` of an `m`-step race conditioned to end in a tie.
///
/// By the cycle lemma exactly one of the `m` rotations of the step
/// differences qualifies, so the value is `1/m`.
pub fn tied_lead_prob(m: u64) -> Result<Rational> {
    if m < 2 {
        return Err(Error::domain("tied race needs m >= 2 steps"));
    }
    Ok(ratio(1, m))
}

/// Probability that a simple ±1 random walk of `steps` steps never goes
/// below zero. Walks of length `2n` and `2n - 1` share the value `C(2n, n)/4^n`.
pub fn srw_nonneg_prob(steps: u64) -> Result<Rational> {
    require_positive("steps", steps)?;
    lead_prob(steps.div_ceil(2))
}

/// Ballot counting with `a` votes for the winner and `b` for the loser, in
/// uniformly random order: probability the loser is never strictly ahead.
pub fn ballot_never_behind_prob(a: u64, b: u64) -> Result<Rational> {
    if a < b {
        return Err(Error::domain(format!("ballot needs a >= b, got a={a}, b={b}")));
    }
    Ok(ratio(a - b + 1, a + 1))
}

/// Probability that a uniformly random ±1 walk of length `n` ending at
/// height `t` never dips below zero: `2(t + 1) / (n + t + 2)`.
pub fn walk_nonneg_given_end_prob(n: u64, t: u64) -> Result<Rational> {
    require_positive("n", n)?;
    if t > n {
        return Err(Error::domain(format!("end height t={t} exceeds length n={n}")));
    }
    if !(n - t).is_multiple_of(2) {
        return Err(Error::domain(format!("n={n} and t={t} differ in parity")));
    }
    Ok(ratio(2 * (t + 1), n + t + 2))
}

/// Probability that a Motzkin path of length `len` with step law
/// `P(U) = P(D) = 1/4`, `P(H) = 1/2` never dips below zero:
/// `C(2len + 2, len + 1) / 2^(2len + 1)`.
pub fn motzkin_nonneg_prob(len: u64) -> Rational {
    Rational::new(central_binomial(len + 1), pow2(2 * len + 1))
}

/// Probability that one uniformly random composition of `n` weakly
/// majorizes another: `C(2n, n) / 2^(2n - 1)`.
pub fn composition_majorization_prob(n: u64) -> Result<Rational> {
    require_positive("n", n)?;
    Ok(motzkin_nonneg_prob(n - 1))
}

/// Alternation probability (first racer ahead at odd times, second at even
/// times) for exponential steps: `4^-n`.
pub fn alternation_exponential_prob(n: u64) -> Result<Rational> {
    require_positive("n", n)?;
    Ok(Rational::new(BigInt::from(1), pow2(2 * n)))
}

/// Probability that two i.i.d. continuous vectors in `R^n` are comparable in
/// the coordinatewise order: `2^(1 - n)`.
pub fn comparable_vectors_prob(n: u64) -> Result<Rational> {
    require_positive("n", n)?;
    Ok(Rational::new(BigInt::from(1), pow2(n - 1)))
}

/// `n`-th Catalan number, used by the tied-race dominance counts.
pub fn catalan(n: u64) -> BigInt {
    central_binomial(n) / BigInt::from(n + 1)
}

/// `lead_prob(n) * sqrt(pi n)`, which tends to 1; equivalently the
/// comparability probability `2 lead_prob(n)` behaves like `2 / sqrt(pi n)`.
pub fn lead_prob_asymptotic_ratio(n: u64) -> Result<f64> {
    let p = lead_prob(n)?;
    Ok(crate::rational::to_f64(&p) * (std::f64::consts::PI * n as f64).sqrt())
}
