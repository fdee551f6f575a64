//! Exact closed-form probabilities, printed as reduced fractions.
//!
//! ```bash
//! cargo run --example closed_forms
//! ```

use leadrace::rational::to_fraction_string as frac;
use leadrace::reference;

fn main() -> leadrace::Result<()> {
    println!("{:>3}  {:>16}  {:>12}  {:>10}", "n", "lead all the way", "majorization", "comparable");
    for n in 1..=10 {
        println!(
            "{n:>3}  {:>16}  {:>12}  {:>10}",
            frac(&reference::lead_prob(n)?),
            frac(&reference::composition_majorization_prob(n)?),
            frac(&reference::comparable_vectors_prob(n)?),
        );
    }

    println!();
    println!("ballot, 7 votes to 4, never behind: {}", frac(&reference::ballot_never_behind_prob(7, 4)?));
    println!("10-step walk ending at 2, never negative: {}", frac(&reference::walk_nonneg_given_end_prob(10, 2)?));
    println!("tied 6-step race, X leads before the tie: {}", frac(&reference::tied_lead_prob(6)?));
    println!("lazy racers, 8 steps, never behind: {}", frac(&reference::motzkin_nonneg_prob(8)));
    println!("lead_prob(400) * sqrt(400 pi) = {:.6}", reference::lead_prob_asymptotic_ratio(400)?);
    Ok(())
}
