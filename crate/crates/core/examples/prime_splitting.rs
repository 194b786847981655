//! How rational primes split, with the prime ideals as Hermite bases.

use std::sync::Arc;

use nfk::ideals::primes_above;
use nfk::numberfield::NumberField;

fn main() -> nfk::Result<()> {
    let k = Arc::new(NumberField::parse("x^3-2")?);
    println!("K = {k}");
    for p in [2u64, 3, 5, 7, 11, 31] {
        if !k.index_safe(p)? {
            println!("p = {p}: divides the index, skipped");
            continue;
        }
        let rec = k.split_prime(p)?;
        println!("p = {p}: g = {}, (e,f) = {:?}", rec.g, rec.ef_pairs());
        for pr in primes_above(&k, p)? {
            println!(
                "    slot {}: N = {}, basis {}",
                pr.index,
                pr.norm(),
                pr.ideal
            );
        }
    }
    // g over a range, which is all the equivalence checker compares
    let gs: Vec<(u64, usize)> = nfk::exactmath::int::primes_up_to(60)
        .into_iter()
        .filter(|&p| k.index_safe(p).unwrap_or(false))
        .map(|p| (p, k.g_count(p).unwrap()))
        .collect();
    println!("g_K(p), p <= 60: {gs:?}");
    Ok(())
}
