//! Basic data of a few fields: presentation, discriminant, signature and
//! roots of unity.
//!
//!     cargo run --example field_info -- "x^2-5"

use nfk::numberfield::NumberField;
use nfk::torsion::roots_of_unity;

fn main() -> nfk::Result<()> {
    let polys: Vec<String> = match std::env::args().nth(1) {
        Some(p) => vec![p],
        None => ["x", "x^2+1", "x^2-5", "x^2+27", "x^3-2", "x^4+x^3+x^2+x+1"]
            .map(String::from)
            .to_vec(),
    };
    for p in polys {
        let k = NumberField::parse(&p)?;
        let t = roots_of_unity(&k)?;
        let (r1, r2) = k.signature();
        println!("{p}");
        if k.poly() != k.input_poly() {
            println!("  stored as      {}", k.poly());
        }
        println!("  disc(f)        {}", k.poly_discriminant());
        println!("  signature      ({r1}, {r2})");
        println!("  m              {}", t.m);
        println!("  zeta           [{}]", t.zeta.to_strings().join(", "));
        println!("  p_max          {}", t.p_max);
        if !k.index_unsafe_primes().is_empty() {
            println!("  index-unsafe   {:?}", k.index_unsafe_primes());
        }
    }
    Ok(())
}
