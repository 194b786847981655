//! The degree estimate (largest multiplicity of a torsion order) as the
//! bound grows, and the rank m*2^(n/2-2).

use std::sync::Arc;

use nfk::ideals::ClassData;
use nfk::kinvariants::{fingerprint, rank_pi_star};
use nfk::numberfield::NumberField;
use nfk::torsion::roots_of_unity;

fn main() -> nfk::Result<()> {
    for poly in ["x^2+1", "x^2+3", "x^2+5", "x^4+x^3+x^2+x+1", "x^2-2"] {
        let k = Arc::new(NumberField::parse(poly)?);
        let inv = fingerprint(&k, 120, &ClassData::automatic(&k)?)?;
        let steps: Vec<String> = [5u64, 10, 20, 40, 120]
            .iter()
            .map(|&b| {
                format!(
                    "{b}:{}",
                    inv.truncated(b)
                        .degree_estimate
                        .map_or("-".into(), |d| d.to_string())
                )
            })
            .collect();
        let t = roots_of_unity(&k)?;
        let rank = match rank_pi_star(&k, &t) {
            Ok(r) => r.to_string(),
            Err(e) => e.to_string(),
        };
        println!(
            "{poly:<18} n = {}  degree by bound {}  rank {rank}",
            k.degree(),
            steps.join(" ")
        );
    }
    Ok(())
}
