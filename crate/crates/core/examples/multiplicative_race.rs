//! Compounding growth races reduce to additive races on the logs.

use leadrace::rational::to_fraction_string;
use leadrace::reference;
use leadrace::simulate::{self, Confidence, DistributionSpec};

fn main() -> leadrace::Result<()> {
    let growth = DistributionSpec::LogNormal { log_mean: 0.05, log_sd: 0.2 };
    let agree = (0..10_000).try_fold(0, |acc, i| {
        let same = simulate::multiplicative_race_trial(&growth, 8, 3, i)? == simulate::additive_log_race_trial(&growth, 8, 3, i)?;
        Ok::<_, leadrace::Error>(acc + u32::from(same))
    })?;
    println!("paired trials agreeing: {agree} / 10000");

    for years in [4usize, 10, 25] {
        let e = simulate::estimate_trials("multiplicative_lead", growth.to_string(), years, 200_000, 3, |i| {
            simulate::multiplicative_race_trial(&growth, years, 3, i)
        })?;
        let (lo, hi) = e.interval(Confidence::P95);
        let exact = reference::lead_prob(years as u64)?;
        println!("{years:>2} years: {:.5} [{lo:.5}, {hi:.5}], exact {}", e.point, to_fraction_string(&exact));
    }
    Ok(())
}
