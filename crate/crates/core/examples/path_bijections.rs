//! Up-down path bijections and the Motzkin contraction.

use leadrace::exact::{self, Path};

fn main() -> leadrace::Result<()> {
    let p: Path = "UUDUDDDDUUDUUUDD".parse()?;
    let q = exact::updown_bijection_to_nonneg(&p)?;
    println!("{p} heights {:?}", p.heights());
    println!("{q} heights {:?}", q.heights());
    println!("back: {}", exact::updown_bijection_to_endzero(&q)?);

    let long: Path = "UUUUDDDUDU".parse()?;
    println!("contract {long} -> {}", exact::contract_to_motzkin(&long)?);

    // both sides of the bijection have C(2n,n) members
    for n in 1..=8usize {
        let len = 2 * n;
        let (mut balanced, mut nonneg) = (0u64, 0u64);
        for mask in 0..(1u64 << len) {
            let p = Path::from_mask(mask, len);
            balanced += u64::from(p.end_height() == 0);
            nonneg += u64::from(p.stays_nonneg());
        }
        println!("length {len:>2}: {balanced:>5} balanced, {nonneg:>5} nonnegative");
    }
    Ok(())
}
