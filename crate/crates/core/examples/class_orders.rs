//! Orders of prime ideal classes from binary quadratic forms and from the
//! generator search, side by side.

use std::sync::Arc;

use nfk::ideals::{is_principal, primes_above, ClassBackend, ClassData, Principality};
use nfk::numberfield::NumberField;

fn main() -> nfk::Result<()> {
    for poly in ["x^2+5", "x^2+23", "x^2+14"] {
        let k = Arc::new(NumberField::parse(poly)?);
        let forms = ClassData::with_backend(&k, ClassBackend::Forms)?;
        let search = ClassData::with_backend(&k, ClassBackend::Search)?
            .with_class_number(forms.class_number().unwrap());
        println!("{poly}: h = {}", forms.class_number().unwrap());
        for p in [2u64, 3, 5, 7, 11] {
            if !k.index_safe(p)? {
                continue;
            }
            for pr in primes_above(&k, p)? {
                let a = forms.order_of(&pr)?;
                let b = search.order_of(&pr)?;
                let gen = match is_principal(&pr.ideal, None) {
                    Principality::Principal(x) => format!("generated by {x:?}"),
                    Principality::NotPrincipal => "not principal".into(),
                    Principality::Unknown => "undecided".into(),
                };
                println!(
                    "  P{p}_{}: h_P = {a} (forms) / {b} (search), {gen}",
                    pr.index
                );
            }
        }
    }
    Ok(())
}
