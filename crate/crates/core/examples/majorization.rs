//! Compositions as bit strings and the majorization probability.

use leadrace::exact::{self, Composition};
use leadrace::rational::to_fraction_string;
use leadrace::reference;

fn main() -> leadrace::Result<()> {
    let u = Composition::new(vec![3, 1, 2])?;
    let v = Composition::new(vec![1, 2, 3])?;
    let (su, sv) = (u.encode(), v.encode());
    println!("{u} -> {}", exact::bits_to_string(&su));
    println!("{v} -> {}", exact::bits_to_string(&sv));
    let m = exact::motzkin_from_bitpair(&su, &sv)?;
    println!("path {m}: {u} majorizes {v}? {}", exact::majorizes_weak(&u, &v)?);

    for n in 1..=12 {
        let exact_p = exact::majorization_probability_exact(n)?;
        assert_eq!(exact_p, reference::composition_majorization_prob(n)?);
        println!("n={n:>2}: {}", to_fraction_string(&exact_p));
    }
    Ok(())
}
