//! Alternation (X ahead at odd steps, Y at even ones) is far from
//! distribution-free: exponential steps versus widely separated scales.
//!
//! For exponential steps the estimates sit at `2/4^n`: after X's first lead
//! each reversal costs a factor 1/4, and the owner of the last stopping
//! point is unconstrained, so the often-quoted `4^-n` is off by two.

use leadrace::exact;
use leadrace::rational::{to_f64, to_fraction_string};
use leadrace::reference;
use leadrace::simulate::{estimate_probability, DistributionSpec, EventSpec};

fn main() -> leadrace::Result<()> {
    let exp = DistributionSpec::Exponential { rate: 1.0 };
    let pow3 = DistributionSpec::PowersOfThree { max_exponent: 40, noise: 0.0 };
    for n in 1..=4u64 {
        let a = estimate_probability(EventSpec::Alternation, &exp, n as usize, 500_000, 1)?;
        let b = estimate_probability(EventSpec::Alternation, &pow3, n as usize, 500_000, 1)?;
        let quarter = reference::alternation_exponential_prob(n)?;
        let oracle = exact::alternation_rank_oracle(n)?;
        println!(
            "n={n}: exponential {:.5} (4^-n = {:.5}, 2/4^n = {:.5}), powers of three {:.5} (rank oracle {} = {:.5}, ties {})",
            a.point,
            to_f64(&quarter),
            2.0 * to_f64(&quarter),
            b.point,
            to_fraction_string(&oracle),
            to_f64(&oracle),
            b.ties
        );
    }
    Ok(())
}
