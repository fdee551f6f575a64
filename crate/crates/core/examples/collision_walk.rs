//! Slides the first element of `{7/2, 3, 1}` down to `1/2`, one collision
//! at a time, and checks every hop maps ballot signed permutations
//! bijectively.

use std::collections::BTreeSet;

use leadrace::exact::{self, GenericSet};
use leadrace::rational::{int, ratio};

fn main() -> leadrace::Result<()> {
    let set = GenericSet::certify(vec![ratio(7, 2), int(3), int(1)])?;
    let target = ratio(1, 2);
    println!("collisions crossed: {:?}", exact::collision_deltas(&set, &target)?.iter().map(|d| d.to_string()).collect::<Vec<_>>());

    let walk = exact::collision_walk(&set, &target)?;
    for hop in walk.windows(2) {
        let (from, to) = (&hop[0], &hop[1]);
        let mut images = BTreeSet::new();
        let mut flipped = 0;
        for p in exact::ballot_signed_perms(from)? {
            let q = exact::collision_step_map(&p, from, to)?;
            assert_eq!(exact::collision_step_map(&q, to, from)?, p);
            if q != p {
                flipped += 1;
                println!("    {p}  ->  {q}");
            }
            images.insert(q);
        }
        println!("{from} -> {to}: {} images, {flipped} flipped", images.len());
    }
    Ok(())
}
