//! Torsion orders (N^h - 1)/m at good primes, with the raw ingredients.

use std::sync::Arc;

use nfk::ideals::{primes_above, ClassData};
use nfk::kinvariants::torsion_order;
use nfk::numberfield::NumberField;
use nfk::torsion::{is_good_prime, roots_of_unity};

fn main() -> nfk::Result<()> {
    for poly in ["x", "x^2+1", "x^2+3", "x^2+5"] {
        let k = Arc::new(NumberField::parse(poly)?);
        let t = roots_of_unity(&k)?;
        let cd = ClassData::automatic(&k)?;
        println!("{poly}: m = {}, p_max = {}", t.m, t.p_max);
        for p in [2u64, 3, 5, 7, 13] {
            if !k.index_safe(p)? {
                continue;
            }
            for pr in primes_above(&k, p)? {
                let good = is_good_prime(&k, &t, &pr);
                let ord = torsion_order(&k, &t, &pr, &cd)?;
                let shown = ord.map_or("-".to_string(), |o| o.to_string());
                println!(
                    "  p = {p:>2} slot {} N = {:>3} good = {good:<5} ord = {shown}",
                    pr.index,
                    pr.norm()
                );
            }
        }
    }
    Ok(())
}
