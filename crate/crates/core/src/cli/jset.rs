//! `nfk jset`: independence, filter and intersection checks.

use std::fmt::Write as _;
use std::sync::Arc;

use clap::{Args, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use super::json_line;
use crate::error::{Error, Result};
use crate::exactmath::int::trial_factor;
use crate::ideals::primes_above;
use crate::numberfield::NumberField;
use crate::semigroupsets::{
    full_family, independence_check, intersect, is_filter, j_family, ConstructibleSet,
    FilterTruncation, IndependenceMode, Level, Support, SupportedIdeal,
};

#[derive(Debug, Subcommand)]
pub enum JsetCmd {
    /// Independence of a truncated one-prime family.
    Independence {
        #[command(flatten)]
        at: PrimeLevel,
        /// `j`: `(b + 𝔭^a) × (𝔭^a ∖ 𝔭^{a+1})`; `full`: `(b + 𝔭^a) × (𝔭^a)ˣ`.
        #[arg(long, default_value = "j")]
        family: String,
        /// Ignore multiplicative parts.
        #[arg(long)]
        additive_only: bool,
    },
    /// Filter axioms for the sets `(b + 𝔭^a) × (𝔭^a)ˣ` containing a base set.
    Filter {
        #[command(flatten)]
        at: PrimeLevel,
        /// Coset representative of the base set, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        rep: Vec<i64>,
        /// Valuation of the base set (defaults to the maximum).
        #[arg(long)]
        val: Option<u32>,
        /// Explicit member indices into the universe instead of the
        /// principal filter.
        #[arg(long, value_delimiter = ',')]
        members: Vec<usize>,
    },
    /// Intersection of residue classes of ℤ, e.g. "(0 mod 2) ∩ (1 mod 3)".
    Intersect { expr: String },
}

#[derive(Debug, Args)]
pub struct PrimeLevel {
    #[arg(long, default_value = "x")]
    poly: String,
    #[arg(long)]
    prime: u64,
    #[arg(long, default_value_t = 0)]
    slot: usize,
    #[arg(long, default_value_t = 3)]
    max_val: u32,
    #[arg(long, default_value_t = 5)]
    level: u32,
}

impl PrimeLevel {
    fn support(&self, seed: Option<u64>) -> Result<Arc<Support>> {
        let mut k = NumberField::parse(&self.poly)?;
        if let Some(s) = seed {
            k = k.with_seed(s);
        }
        let k = Arc::new(k);
        let mut ps = primes_above(&k, self.prime)?;
        if self.slot >= ps.len() {
            return Err(Error::SlotOutOfRange {
                index: self.slot,
                len: ps.len(),
            });
        }
        let pr = ps.swap_remove(self.slot);
        Support::new(&k, vec![pr])
    }

    fn check_level(&self) -> Result<()> {
        if self.level < self.max_val + 1 {
            return Err(Error::LevelTooSmall {
                level: self.level,
                needed: self.max_val + 1,
            });
        }
        Ok(())
    }
}

pub fn run(cmd: &JsetCmd, seed: Option<u64>, json: bool) -> Result<(String, i32)> {
    match cmd {
        JsetCmd::Independence {
            at,
            family,
            additive_only,
        } => {
            at.check_level()?;
            let s = at.support(seed)?;
            let fam = match family.as_str() {
                "j" => j_family(&s, 0, at.max_val)?,
                "full" => full_family(&s, 0, at.max_val)?,
                other => return Err(Error::InvalidSet(format!("unknown family {other:?}"))),
            };
            let lv = Level::new(&s, at.level)?;
            let mode = if *additive_only {
                IndependenceMode::AdditiveOnly
            } else {
                IndependenceMode::Full
            };
            let rep = independence_check(&fam, &lv, mode)?;
            let out = if json {
                let witness = rep.witness.as_ref().map_or(Value::Null, |(i, parts)| {
                    json!({
                        "set": fam[*i].to_string(),
                        "union_of": parts.iter().map(|&j| fam[j].to_string()).collect::<Vec<_>>(),
                    })
                });
                json_line(&json!({
                    "schema": 1,
                    "independent": rep.independent,
                    "members": fam.len(),
                    "level": at.level,
                    "witness": witness,
                }))
            } else if rep.independent {
                format!("independent ({} members, level {})\n", fam.len(), at.level)
            } else {
                let (i, parts) = rep.witness.as_ref().unwrap();
                let mut s = format!("not independent: {} is the union of\n", fam[*i]);
                for &j in parts {
                    let _ = writeln!(s, "  {}", fam[j]);
                }
                s
            };
            Ok((out, 0))
        }
        JsetCmd::Filter {
            at,
            rep,
            val,
            members,
        } => {
            at.check_level()?;
            let s = at.support(seed)?;
            let lv = Level::new(&s, at.level)?;
            let mut universe = full_family(&s, 0, at.max_val)?;
            universe.push(ConstructibleSet::Empty);
            let f = if members.is_empty() {
                let n = s.field().degree();
                let mut b = vec![BigInt::from(0); n];
                for (bi, r) in b.iter_mut().zip(rep) {
                    *bi = BigInt::from(*r);
                }
                let v = val.unwrap_or(at.max_val);
                let base = ConstructibleSet::full(&b, SupportedIdeal::new(&s, vec![v as i64])?)?;
                let idx = universe
                    .iter()
                    .position(|x| *x == base)
                    .ok_or_else(|| Error::InvalidSet("base set outside the universe".into()))?;
                FilterTruncation::principal(universe, idx, &lv)?
            } else {
                FilterTruncation {
                    universe,
                    members: members.clone(),
                }
            };
            let r = is_filter(&f, &lv)?;
            let out = if json {
                json_line(&json!({
                    "schema": 1,
                    "filter": r.is_filter,
                    "members": f.members.iter().map(|&i| f.universe[i].to_string()).collect::<Vec<_>>(),
                    "violation": r.violation,
                }))
            } else if r.is_filter {
                format!("filter ({} members)\n", f.members.len())
            } else {
                format!("not a filter: {}\n", r.violation.unwrap_or_default())
            };
            Ok((out, 0))
        }
        JsetCmd::Intersect { expr } => {
            let x = intersect_classes(expr)?;
            let out = if json {
                json_line(&json!({ "schema": 1, "result": x.to_string(), "empty": x.is_empty() }))
            } else {
                format!("{x}\n")
            };
            Ok((out, 0))
        }
    }
}

/// `b mod n` terms joined by `∩` (or `&`), over ℤ.
pub fn intersect_classes(expr: &str) -> Result<ConstructibleSet> {
    let mut terms = Vec::new();
    for t in expr.split(['∩', '&']) {
        let t = t
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .trim();
        let (b, n) = t
            .split_once("mod")
            .ok_or_else(|| Error::Parse(format!("expected \"b mod n\", got {t:?}")))?;
        let b: BigInt = b
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad residue {b:?}")))?;
        let n: BigInt = n
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad modulus {n:?}")))?;
        if n <= BigInt::from(0) {
            return Err(Error::Parse("modulus must be positive".into()));
        }
        let tf = trial_factor(&n, 1_000_000);
        if tf.cofactor != BigInt::from(1) {
            return Err(Error::Parse(format!(
                "modulus {n} has a prime factor above 10^6"
            )));
        }
        terms.push((b, tf.small));
    }
    let mut ps: Vec<u64> = terms
        .iter()
        .flat_map(|(_, f)| f.iter().map(|&(p, _)| p))
        .collect();
    ps.sort_unstable();
    ps.dedup();
    let q = Arc::new(NumberField::rationals());
    let primes = ps
        .iter()
        .map(|&p| primes_above(&q, p).map(|mut v| v.remove(0)))
        .collect::<Result<Vec<_>>>()?;
    let s = Support::new(&q, primes)?;
    let mut acc: Option<ConstructibleSet> = None;
    for (b, f) in terms {
        let vals = ps
            .iter()
            .map(|p| f.iter().find(|(q, _)| q == p).map_or(0, |&(_, e)| e as i64))
            .collect();
        let x = ConstructibleSet::full(&[b], SupportedIdeal::new(&s, vals)?)?;
        acc = Some(match acc {
            None => x,
            Some(a) => intersect(&a, &x)?,
        });
    }
    acc.ok_or_else(|| Error::Parse("empty expression".into()))
}
