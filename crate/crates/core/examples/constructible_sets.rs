//! Constructible sets (b + a) x a^x at finite level: intersections by CRT,
//! independence of the one-prime families and a principal filter.

use std::sync::Arc;

use nfk::ideals::primes_above;
use nfk::numberfield::NumberField;
use nfk::semigroupsets::{
    full_family, independence_check, intersect, is_filter, j_family, ConstructibleSet,
    FilterTruncation, IndependenceMode, Level, Support, SupportedIdeal,
};

fn main() -> nfk::Result<()> {
    let q = Arc::new(NumberField::rationals());
    let s = Support::new(
        &q,
        vec![
            primes_above(&q, 2)?.remove(0),
            primes_above(&q, 3)?.remove(0),
        ],
    )?;
    let a = ConstructibleSet::full(&[0.into()], SupportedIdeal::new(&s, vec![1, 0])?)?;
    let b = ConstructibleSet::full(&[1.into()], SupportedIdeal::new(&s, vec![0, 1])?)?;
    println!("({a}) ∩ ({b}) = {}", intersect(&a, &b)?);

    let k = Arc::new(NumberField::parse("x^2+1")?);
    for p in [2u64, 5] {
        let s = Support::new(&k, vec![primes_above(&k, p)?.remove(0)])?;
        let lv = Level::new(&s, 4)?;
        let fam = j_family(&s, 0, 3)?;
        let r = independence_check(&fam, &lv, IndependenceMode::Full)?;
        println!(
            "Q(i), prime above {p}: {} sets, independent = {}",
            fam.len(),
            r.independent
        );
    }

    let s = Support::new(&q, vec![primes_above(&q, 2)?.remove(0)])?;
    let lv = Level::new(&s, 3)?;
    let fam = full_family(&s, 0, 1)?;
    let r = independence_check(&fam, &lv, IndependenceMode::AdditiveOnly)?;
    if let Some((i, parts)) = r.witness {
        let names: Vec<String> = parts.iter().map(|&j| fam[j].to_string()).collect();
        println!("additive cosets: {} = {}", fam[i], names.join(" ∪ "));
    }

    let mut universe = full_family(&s, 0, 2)?;
    universe.push(ConstructibleSet::Empty);
    let f = FilterTruncation::principal(universe, 5, &lv)?;
    let members: Vec<String> = f
        .members
        .iter()
        .map(|&i| f.universe[i].to_string())
        .collect();
    println!(
        "filter above {}: {:?}, is filter = {}",
        f.universe[5],
        members,
        is_filter(&f, &lv)?.is_filter
    );
    Ok(())
}
