//! Splitting numbers read back from torsion orders alone: g(p) is the number
//! of primes whose order satisfies p | m*ord + 1, once p is past the
//! recovery threshold.

use std::sync::Arc;

use nfk::ideals::ClassData;
use nfk::kinvariants::{fingerprint, recover_splitting, recovery_threshold_prime};
use nfk::numberfield::NumberField;

fn main() -> nfk::Result<()> {
    let k = Arc::new(NumberField::parse("x^2+1")?);
    let inv = fingerprint(&k, 100, &ClassData::automatic(&k)?)?;
    let start = recovery_threshold_prime(&inv).unwrap();
    println!("recovery applies from p = {start}");
    for p in [13u64, 17, 19, 29, 37, 43, 97] {
        match recover_splitting(&inv, p) {
            Ok(g) => println!("p = {p}: recovered g = {g}, direct g = {}", k.g_count(p)?),
            Err(e) => println!("p = {p}: {e}"),
        }
    }
    Ok(())
}
