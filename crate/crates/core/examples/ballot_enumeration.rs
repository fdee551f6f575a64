//! Counts ballot signed permutations of a few generic sets and compares
//! with the closed form `n! C(2n,n) / 2^n`.

use leadrace::exact::{self, GenericSet};
use leadrace::rational::parse_rational_list;
use leadrace::reference;
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

fn main() -> leadrace::Result<()> {
    let set = GenericSet::certify(parse_rational_list("9,3,1")?)?;
    let perms = exact::ballot_signed_perms(&set)?;
    println!("{set} ({:?}) has {} ballot signed permutations:", set.certificate(), perms.len());
    for p in &perms {
        println!("  {p}");
    }

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 1..=7 {
        let set = exact::random_generic_set(n, &mut rng)?;
        let count = exact::count_ballot_signed_perms(&set)?;
        println!("n={n}: count {count:>10}, formula {:>10}", reference::ballot_signed_perm_count(n as u64)?);
    }
    Ok(())
}
