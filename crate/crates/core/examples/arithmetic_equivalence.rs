//! Comparing splitting data of two fields. The octic pair x^8 - 3 and
//! x^8 - 48 gives non-isomorphic fields with identical splitting.

use nfk::cli::{compare, EquivMode, Fingerprint};
use nfk::numberfield::NumberField;

fn check(a: &str, b: &str, bound: u64, mode: EquivMode) -> nfk::Result<()> {
    let fa = Fingerprint::compute(&NumberField::parse(a)?, bound)?;
    let fb = Fingerprint::compute(&NumberField::parse(b)?, bound)?;
    print!("{a} vs {b}: {}", compare(&fa, &fb, mode).to_table());
    Ok(())
}

fn main() -> nfk::Result<()> {
    check("x^2-2", "x^2-3", 50, EquivMode::G)?;
    check("x^2+1", "x^2-2*x+2", 100, EquivMode::Full)?;
    check("x^8-3", "x^8-48", 1000, EquivMode::G)?;
    check("x^8-3", "x^8-48", 1000, EquivMode::Full)?;
    check("x^8-3", "x^8-12", 1000, EquivMode::G)?;
    Ok(())
}
