//! Cycle lemma: the unique rotation of a zero-sum cycle with nonnegative
//! partial sums, and the dominance count behind the tied race.

use leadrace::exact::{self, CycleSequence};
use leadrace::rational::parse_rational_list;
use leadrace::reference;

fn main() -> leadrace::Result<()> {
    let z = CycleSequence::new(parse_rational_list("3/10,-7/10,4/10")?)?;
    let k = exact::spitzer_rotation(&z)?;
    let rotated: Vec<String> = z.rotation(k).iter().map(|v| v.to_string()).collect();
    println!("rotation {k}: {}", rotated.join(", "));

    for m in 1..=12 {
        println!("m={m:>2}: dominating merges {:>6}, Catalan {:>6}", exact::dominance_count(m)?, reference::catalan(m));
    }
    Ok(())
}
