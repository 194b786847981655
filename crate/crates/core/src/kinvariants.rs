//! Numerical invariants attached to the primes of a field: the torsion order
//! `(N(𝔭)^{h_𝔭} - 1)/m`, recovery of splitting numbers from those orders,
//! the degree estimate and the rank `m·2^{n/2-2}`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactmath::int::{is_prime, primes_up_to};
use crate::ideals::{primes_above, ClassData, PrimeIdeal};
use crate::numberfield::NumberField;
use crate::torsion::{is_good_prime, roots_of_unity, TorsionData};

/// Invariants of one prime `𝔭`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantRecord {
    pub p: u64,
    pub slot: usize,
    /// `N(𝔭)`.
    pub norm: BigInt,
    /// `h_𝔭`, when class data could provide it.
    pub h_p: Option<u64>,
    pub good: bool,
    /// `(N^{h_𝔭} - 1)/m`, defined for good primes with known `h_𝔭`.
    pub ord: Option<BigInt>,
}

/// `rk(π*)` or the reason it is not defined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rank {
    Value(u64),
    NotPurelyImaginary,
}

/// Invariants of a field up to a bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldInvariants {
    pub poly: Vec<BigInt>,
    pub degree: usize,
    pub signature: (usize, usize),
    pub bound: u64,
    pub torsion: TorsionData,
    pub class_number: Option<u64>,
    /// Sorted by `(p, slot)`.
    pub records: Vec<InvariantRecord>,
    /// Primes `≤ bound` left out, with the reason.
    pub skipped: Vec<(u64, String)>,
    pub rank_pi_star: Rank,
    /// `None` when no record has a defined order.
    pub degree_estimate: Option<usize>,
}

/// `(N^{h_𝔭} - 1)/m`, or `None` when `𝔭` is not good.
pub fn torsion_order(
    field: &NumberField,
    t: &TorsionData,
    prime: &PrimeIdeal,
    class_data: &ClassData,
) -> Result<Option<BigInt>> {
    if !is_good_prime(field, t, prime) {
        return Ok(None);
    }
    let h = class_data.order_of(prime)?;
    Ok(Some(order_from(&prime.norm(), h, t.m)))
}

fn order_from(norm: &BigInt, h: u64, m: u64) -> BigInt {
    let top = num_traits::pow(norm.clone(), h as usize) - BigInt::one();
    let (q, r) = top.div_rem(&BigInt::from(m));
    assert!(r.is_zero(), "m must divide N^h - 1 at a good prime");
    q
}

/// True iff `candidate` is a multiple of `(N^{h_𝔭}-1)/gcd(m, N^{h_𝔭}-1)`.
pub fn divisibility_bound_check(
    _field: &NumberField,
    t: &TorsionData,
    prime: &PrimeIdeal,
    class_data: &ClassData,
    candidate: &BigInt,
) -> Result<bool> {
    let h = class_data.order_of(prime)?;
    let top = num_traits::pow(prime.norm(), h as usize) - BigInt::one();
    let g = top.gcd(&BigInt::from(t.m));
    Ok((candidate % (top / g)).is_zero())
}

/// `m·2^{n/2-2}` for fields without real embeddings.
pub fn rank_pi_star(field: &NumberField, t: &TorsionData) -> Result<u64> {
    let (r1, _) = field.signature();
    if r1 > 0 {
        return Err(Error::NotPurelyImaginary);
    }
    let half = field.degree() / 2;
    Ok(if half >= 2 {
        t.m << (half - 2)
    } else {
        t.m / 2
    })
}

/// Largest number of records sharing one torsion order.
pub fn degree_estimate(inv: &FieldInvariants) -> Result<usize> {
    let mut counts: BTreeMap<&BigInt, usize> = BTreeMap::new();
    for r in &inv.records {
        if let Some(o) = &r.ord {
            *counts.entry(o).or_default() += 1;
        }
    }
    counts
        .values()
        .copied()
        .max()
        .ok_or(Error::InsufficientData)
}

/// `(p - 1)/m > p_max^{nh} - 1`, as the pair of both sides.
fn threshold(inv: &FieldInvariants, p: u64, h: u64) -> (BigInt, BigInt, bool) {
    let m = BigInt::from(inv.torsion.m);
    let lhs = BigInt::from(p - 1);
    let e = inv.degree * h as usize;
    let rhs = num_traits::pow(BigInt::from(inv.torsion.p_max), e) - BigInt::one();
    let holds = lhs > &m * &rhs;
    (lhs, rhs, holds)
}

/// `g_K(p)` counted as the records with `p | m·ord + 1`.
pub fn recover_splitting(inv: &FieldInvariants, p: u64) -> Result<usize> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p > inv.bound {
        return Err(Error::OutsideBound {
            p,
            bound: inv.bound,
        });
    }
    if inv.skipped.iter().any(|(q, _)| *q == p) {
        return Err(Error::IndexUnsafe { p });
    }
    let h = inv
        .class_number
        .ok_or_else(|| Error::ClassDataUnavailable("class number unknown".into()))?;
    let (lhs, rhs, holds) = threshold(inv, p, h);
    if !holds {
        let m = BigInt::from(inv.torsion.m);
        let shown = if (&lhs % &m).is_zero() {
            (&lhs / &m).to_string()
        } else {
            format!("{lhs}/{m}")
        };
        return Err(Error::BelowRecoveryThreshold {
            lhs: shown,
            rhs: rhs.to_string(),
        });
    }
    let m = BigInt::from(inv.torsion.m);
    let pb = BigInt::from(p);
    Ok(inv
        .records
        .iter()
        .filter_map(|r| r.ord.as_ref())
        .filter(|o| ((&m * *o + BigInt::one()) % &pb).is_zero())
        .count())
}

/// Smallest prime meeting the recovery hypothesis, if the class number is
/// known.
pub fn recovery_threshold_prime(inv: &FieldInvariants) -> Option<u64> {
    let h = inv.class_number?;
    let mut p = 2u64;
    loop {
        if is_prime(p) && threshold(inv, p, h).2 {
            return Some(p);
        }
        p += 1;
    }
}

fn records_for_prime(
    field: &Arc<NumberField>,
    t: &TorsionData,
    class_data: &ClassData,
    p: u64,
) -> Result<std::result::Result<Vec<InvariantRecord>, String>> {
    if !field.index_safe(p)? {
        return Ok(Err("index-unsafe".into()));
    }
    let mut out = Vec::new();
    for prime in primes_above(field, p)? {
        let good = is_good_prime(field, t, &prime);
        let h_p = match class_data.order_of(&prime) {
            Ok(h) => Some(h),
            Err(Error::ClassDataUnavailable(_)) => None,
            Err(e) => return Err(e),
        };
        let norm = prime.norm();
        let ord = match (good, h_p) {
            (true, Some(h)) => Some(order_from(&norm, h, t.m)),
            _ => None,
        };
        out.push(InvariantRecord {
            p,
            slot: prime.index,
            norm,
            h_p,
            good,
            ord,
        });
    }
    Ok(Ok(out))
}

/// Records for every prime ideal above every index-safe `p ≤ bound`.
///
/// Primes whose `h_𝔭` cannot be certified keep a record with `h_p = None`.
pub fn fingerprint(
    field: &Arc<NumberField>,
    bound: u64,
    class_data: &ClassData,
) -> Result<FieldInvariants> {
    if bound < 2 {
        return Err(Error::InsufficientData);
    }
    let t = roots_of_unity(field)?;
    let per_prime: Vec<(u64, std::result::Result<Vec<InvariantRecord>, String>)> =
        primes_up_to(bound)
            .into_par_iter()
            .map(|p| records_for_prime(field, &t, class_data, p).map(|r| (p, r)))
            .collect::<Result<Vec<_>>>()?;
    let mut records = Vec::new();
    let mut skipped = Vec::new();
    for (p, r) in per_prime {
        match r {
            Ok(recs) => records.extend(recs),
            Err(reason) => skipped.push((p, reason)),
        }
    }
    let rank_pi_star = match rank_pi_star(field, &t) {
        Ok(v) => Rank::Value(v),
        Err(_) => Rank::NotPurelyImaginary,
    };
    let mut inv = FieldInvariants {
        poly: field.key(),
        degree: field.degree(),
        signature: field.signature(),
        bound,
        torsion: t,
        class_number: class_data.class_number(),
        records,
        skipped,
        rank_pi_star,
        degree_estimate: None,
    };
    inv.degree_estimate = degree_estimate(&inv).ok();
    Ok(inv)
}

impl FieldInvariants {
    /// Good records whose class order is missing.
    pub fn missing_class_data(&self) -> Vec<&InvariantRecord> {
        self.records
            .iter()
            .filter(|r| r.good && r.h_p.is_none())
            .collect()
    }

    /// The same invariants restricted to primes `≤ bound`.
    pub fn truncated(&self, bound: u64) -> FieldInvariants {
        let mut out = self.clone();
        out.bound = bound.min(self.bound);
        out.records.retain(|r| r.p <= bound);
        out.skipped.retain(|(p, _)| *p <= bound);
        out.degree_estimate = degree_estimate(&out).ok();
        out
    }
}
