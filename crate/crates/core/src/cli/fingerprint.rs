//! Per-prime splitting data of a field up to a bound.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exactmath::int::primes_up_to;
use crate::numberfield::NumberField;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimeEntry {
    /// `g` and the sorted `(e, f)` pairs.
    Split {
        g: usize,
        ef: Vec<(u32, u32)>,
    },
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fingerprint {
    /// Stored defining polynomial, lowest degree first.
    pub poly: Vec<BigInt>,
    pub bound: u64,
    pub primes: BTreeMap<u64, PrimeEntry>,
}

/// A big integer as a JSON number when it fits, a string otherwise.
pub fn big_json(v: &BigInt) -> Value {
    match i64::try_from(v) {
        Ok(x) => json!(x),
        Err(_) => json!(v.to_string()),
    }
}

fn big_from_json(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

impl Fingerprint {
    /// Splitting of every prime `≤ bound`; index-unsafe primes are skipped.
    pub fn compute(field: &NumberField, bound: u64) -> Result<Fingerprint> {
        if bound < 2 {
            return Err(Error::InsufficientData);
        }
        let entries = primes_up_to(bound)
            .into_par_iter()
            .map(|p| {
                if !field.index_safe(p)? {
                    return Ok((p, PrimeEntry::Skipped("index-unsafe".into())));
                }
                let rec = field.split_prime(p)?;
                let mut ef = rec.ef_pairs();
                ef.sort_unstable();
                Ok((p, PrimeEntry::Split { g: rec.g, ef }))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Fingerprint {
            poly: field.key(),
            bound,
            primes: entries.into_iter().collect(),
        })
    }

    /// The same data for primes `≤ bound`.
    pub fn truncated(&self, bound: u64) -> Fingerprint {
        Fingerprint {
            poly: self.poly.clone(),
            bound: bound.min(self.bound),
            primes: self
                .primes
                .range(..=bound)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut primes = Map::new();
        for (p, e) in &self.primes {
            primes.insert(p.to_string(), entry_json(e));
        }
        json!({
            "poly": self.poly.iter().map(big_json).collect::<Vec<_>>(),
            "bound": self.bound,
            "primes": primes,
        })
    }

    pub fn from_json(v: &Value) -> Option<Fingerprint> {
        let poly = v
            .get("poly")?
            .as_array()?
            .iter()
            .map(big_from_json)
            .collect::<Option<Vec<_>>>()?;
        let bound = v.get("bound")?.as_u64()?;
        let mut primes = BTreeMap::new();
        for (k, e) in v.get("primes")?.as_object()? {
            let p: u64 = k.parse().ok()?;
            let entry = if let Some(r) = e.get("skipped") {
                PrimeEntry::Skipped(r.as_str()?.to_string())
            } else {
                let g = e.get("g")?.as_u64()? as usize;
                let ef = e
                    .get("ef")?
                    .as_array()?
                    .iter()
                    .map(|pair| {
                        let a = pair.as_array()?;
                        Some((a.first()?.as_u64()? as u32, a.get(1)?.as_u64()? as u32))
                    })
                    .collect::<Option<Vec<_>>>()?;
                PrimeEntry::Split { g, ef }
            };
            primes.insert(p, entry);
        }
        Some(Fingerprint {
            poly,
            bound,
            primes,
        })
    }
}

pub fn entry_json(e: &PrimeEntry) -> Value {
    match e {
        PrimeEntry::Split { g, ef } => json!({
            "g": g,
            "ef": ef.iter().map(|(e, f)| json!([e, f])).collect::<Vec<_>>(),
        }),
        PrimeEntry::Skipped(reason) => json!({ "skipped": reason }),
    }
}
