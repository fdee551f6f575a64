//! The chance of leading all the way does not depend on the step law.
//!
//! ```bash
//! cargo run --release --example distribution_invariance
//! ```

use leadrace::reference;
use leadrace::simulate::{estimate_probability, Confidence, DistributionSpec, EventSpec};

fn main() -> leadrace::Result<()> {
    let laws = [
        DistributionSpec::Uniform { lo: 0.0, hi: 1.0 },
        DistributionSpec::Exponential { rate: 1.0 },
        DistributionSpec::Normal { mean: 0.0, sd: 1.0 },
        DistributionSpec::LogNormal { log_mean: 0.0, log_sd: 1.0 },
    ];
    for n in [1usize, 3, 6] {
        let exact = reference::lead_prob(n as u64)?;
        println!("n={n}, exact {exact}");
        for (i, law) in laws.iter().enumerate() {
            let e = estimate_probability(EventSpec::LeadAllTheWay, law, n, 200_000, 100 + i as u64)?;
            let (lo, hi) = e.interval(Confidence::P999);
            println!("  {:<22} {:.5}  [{lo:.5}, {hi:.5}]  contains: {}", law.to_string(), e.point, e.contains(&exact, Confidence::P999));
        }
    }
    Ok(())
}
