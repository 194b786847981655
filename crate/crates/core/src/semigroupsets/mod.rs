//! Constructible subsets of the ax+b-group over a finite support of primes.
//!
//! A set is `(b + 𝔞) × 𝔞ˣ` (kind `Full`), `(b + 𝔞) × (𝔞 ∖ 𝔭𝔞)` (kind
//! `PDiff`, marked prime `𝔭`) or empty. Ideals are products of powers of the
//! support primes. Only integral ideals and integral coset representatives
//! are modeled; everything is decided exactly in `R / Π 𝔭^k`.

mod bits;
mod level;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

pub use bits::BitSet;
pub use level::{
    enumerate_at_level, independence_check, is_filter, FilterReport, FilterTruncation,
    IndependenceMode, IndependenceReport, Level, LevelImage,
};

use crate::error::{Error, Result};
use crate::exactmath::IntMatrix;
use crate::ideals::{ideal_mul, IntegralIdeal, PrimeIdeal};
use crate::numberfield::NumberField;

/// A finite ordered set of distinct primes of one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Support {
    field: Arc<NumberField>,
    primes: Vec<PrimeIdeal>,
}

impl Support {
    pub fn new(field: &Arc<NumberField>, primes: Vec<PrimeIdeal>) -> Result<Arc<Self>> {
        for (i, a) in primes.iter().enumerate() {
            if a.ideal.field().as_ref() != field.as_ref() {
                return Err(Error::FieldMismatch);
            }
            if primes[..i].iter().any(|b| b.ideal == a.ideal) {
                return Err(Error::InvalidSet("duplicate prime in support".into()));
            }
        }
        Ok(Arc::new(Support {
            field: field.clone(),
            primes,
        }))
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn primes(&self) -> &[PrimeIdeal] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// `Π 𝔭^{v_𝔭}` for nonnegative valuations.
    pub fn ideal(&self, valuations: &[i64]) -> Result<IntegralIdeal> {
        let mut acc = IntegralIdeal::unit(&self.field);
        for (pr, &v) in self.primes.iter().zip(valuations) {
            if v < 0 {
                return Err(Error::InvalidSet("negative valuation".into()));
            }
            if v > 0 {
                acc = ideal_mul(&acc, &pr.ideal.pow(v as u32)?)?;
            }
        }
        Ok(acc)
    }
}

/// A fractional ideal supported on `support`, by its valuation vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportedIdeal {
    support: Arc<Support>,
    valuations: Vec<i64>,
}

impl SupportedIdeal {
    pub fn new(support: &Arc<Support>, valuations: Vec<i64>) -> Result<Self> {
        if valuations.len() != support.len() {
            return Err(Error::Dimension(format!(
                "{} valuations for {} primes",
                valuations.len(),
                support.len()
            )));
        }
        Ok(SupportedIdeal {
            support: support.clone(),
            valuations,
        })
    }

    pub fn unit(support: &Arc<Support>) -> Self {
        SupportedIdeal {
            support: support.clone(),
            valuations: vec![0; support.len()],
        }
    }

    pub fn support(&self) -> &Arc<Support> {
        &self.support
    }

    pub fn valuations(&self) -> &[i64] {
        &self.valuations
    }

    pub fn is_integral(&self) -> bool {
        self.valuations.iter().all(|&v| v >= 0)
    }

    pub fn max_valuation(&self) -> i64 {
        self.valuations.iter().copied().max().unwrap_or(0)
    }

    /// `𝔞 ∩ 𝔟`: valuation-wise maximum.
    pub fn meet(&self, other: &SupportedIdeal) -> Result<SupportedIdeal> {
        self.zip_with(other, i64::max)
    }

    /// `𝔞 + 𝔟`: valuation-wise minimum.
    pub fn join(&self, other: &SupportedIdeal) -> Result<SupportedIdeal> {
        self.zip_with(other, i64::min)
    }

    fn zip_with(&self, other: &SupportedIdeal, f: fn(i64, i64) -> i64) -> Result<SupportedIdeal> {
        if self.support != other.support {
            return Err(Error::InvalidSet("different supports".into()));
        }
        Ok(SupportedIdeal {
            support: self.support.clone(),
            valuations: self
                .valuations
                .iter()
                .zip(&other.valuations)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn to_ideal(&self) -> Result<IntegralIdeal> {
        self.support.ideal(&self.valuations)
    }
}

/// `(b + 𝔞) × 𝔞ˣ`, `(b + 𝔞) × (𝔞 ∖ 𝔭𝔞)` or `∅`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructibleSet {
    Empty,
    Full {
        rep: Vec<BigInt>,
        ideal: SupportedIdeal,
    },
    PDiff {
        rep: Vec<BigInt>,
        ideal: SupportedIdeal,
        /// Index of `𝔭` in the support.
        marked: usize,
    },
}

fn canonical_rep(ideal: &SupportedIdeal, rep: &[BigInt]) -> Result<Vec<BigInt>> {
    if !ideal.is_integral() {
        return Err(Error::InvalidSet(
            "only integral ideals are modeled at finite level".into(),
        ));
    }
    let n = ideal.support.field.degree();
    if rep.len() != n {
        return Err(Error::Dimension(format!(
            "representative of length {}",
            rep.len()
        )));
    }
    Ok(ideal.to_ideal()?.reduce(rep))
}

impl ConstructibleSet {
    pub fn full(rep: &[BigInt], ideal: SupportedIdeal) -> Result<Self> {
        let rep = canonical_rep(&ideal, rep)?;
        Ok(ConstructibleSet::Full { rep, ideal })
    }

    pub fn pdiff(rep: &[BigInt], ideal: SupportedIdeal, marked: usize) -> Result<Self> {
        if marked >= ideal.support.len() {
            return Err(Error::InvalidSet("marked prime outside the support".into()));
        }
        let rep = canonical_rep(&ideal, rep)?;
        Ok(ConstructibleSet::PDiff { rep, ideal, marked })
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, ConstructibleSet::Empty)
    }

    pub fn ideal(&self) -> Option<&SupportedIdeal> {
        match self {
            ConstructibleSet::Empty => None,
            ConstructibleSet::Full { ideal, .. } | ConstructibleSet::PDiff { ideal, .. } => {
                Some(ideal)
            }
        }
    }

    pub fn rep(&self) -> Option<&[BigInt]> {
        match self {
            ConstructibleSet::Empty => None,
            ConstructibleSet::Full { rep, .. } | ConstructibleSet::PDiff { rep, .. } => Some(rep),
        }
    }

    /// Smallest level at which the set is faithfully represented.
    pub fn needed_level(&self) -> u32 {
        self.ideal().map_or(1, |i| i.max_valuation() as u32 + 1)
    }
}

impl fmt::Display for SupportedIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.support.field.degree() == 1 && self.is_integral() {
            let n: BigInt = self
                .support
                .primes
                .iter()
                .zip(&self.valuations)
                .map(|(pr, &v)| num_traits::pow(BigInt::from(pr.p()), v as usize))
                .product();
            return write!(f, "{n}");
        }
        let parts: Vec<String> = self
            .support
            .primes
            .iter()
            .zip(&self.valuations)
            .filter(|(_, &v)| v != 0)
            .map(|(pr, v)| format!("P{}_{}^{}", pr.p(), pr.index, v))
            .collect();
        if parts.is_empty() {
            write!(f, "(1)")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

fn fmt_rep(rep: &[BigInt]) -> String {
    if rep.len() == 1 {
        rep[0].to_string()
    } else {
        let c: Vec<String> = rep.iter().map(|x| x.to_string()).collect();
        format!("[{}]", c.join(", "))
    }
}

impl fmt::Display for ConstructibleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructibleSet::Empty => write!(f, "empty"),
            ConstructibleSet::Full { rep, ideal } => write!(f, "{} mod {}", fmt_rep(rep), ideal),
            ConstructibleSet::PDiff { rep, ideal, marked } => {
                let pr = &ideal.support.primes[*marked];
                write!(
                    f,
                    "{} mod {}, exact at P{}_{}",
                    fmt_rep(rep),
                    ideal,
                    pr.p(),
                    pr.index
                )
            }
        }
    }
}

/// `b` with `b ≡ b₁ (mod 𝔞₁)` and `b ≡ b₂ (mod 𝔞₂)`, if one exists:
/// solvable iff `b₁ - b₂ ∈ 𝔞₁ + 𝔞₂`.
fn crt(
    b1: &[BigInt],
    a1: &IntegralIdeal,
    b2: &[BigInt],
    a2: &IntegralIdeal,
) -> Option<Vec<BigInt>> {
    let n = b1.len();
    let stacked = a1.basis().stack(a2.basis());
    let target: Vec<BigInt> = b1.iter().zip(b2).map(|(x, y)| x - y).collect();
    let y = stacked.solve_in_row_span(&target)?;
    // u = y₁·A₁ ∈ 𝔞₁ and b = b₁ - u
    let u = IntMatrix::from_rows(vec![y[..n].to_vec()]).mul(a1.basis());
    Some(b1.iter().zip(u.row(0)).map(|(x, ui)| x - ui).collect())
}

/// `X₁ ∩ X₂` for any two sets of the family. A `PDiff` meets a `Full`
/// set as `(𝔞∖𝔭𝔞) ∩ 𝔟`, which is empty when `v_𝔭(𝔞) < v_𝔭(𝔟)`.
pub fn meet(x1: &ConstructibleSet, x2: &ConstructibleSet) -> Result<ConstructibleSet> {
    use ConstructibleSet::*;
    let (Some(i1), Some(i2)) = (x1.ideal(), x2.ideal()) else {
        return Ok(Empty);
    };
    let ideal = i1.meet(i2)?;
    let a1 = i1.to_ideal()?;
    let a2 = i2.to_ideal()?;
    let Some(b) = crt(x1.rep().unwrap(), &a1, x2.rep().unwrap(), &a2) else {
        return Ok(Empty);
    };
    let marked = match (x1, x2) {
        (Full { .. }, Full { .. }) => None,
        (PDiff { marked: p, .. }, PDiff { marked: q, .. }) => {
            if p != q {
                return Err(Error::MarkedPrimeMismatch);
            }
            if i1.valuations[*p] != i2.valuations[*p] {
                return Ok(Empty);
            }
            Some(*p)
        }
        (PDiff { marked: p, .. }, Full { .. }) => {
            if i1.valuations[*p] < i2.valuations[*p] {
                return Ok(Empty);
            }
            Some(*p)
        }
        (Full { .. }, PDiff { marked: p, .. }) => {
            if i2.valuations[*p] < i1.valuations[*p] {
                return Ok(Empty);
            }
            Some(*p)
        }
        _ => unreachable!("empty handled above"),
    };
    match marked {
        None => ConstructibleSet::full(&b, ideal),
        Some(p) => ConstructibleSet::pdiff(&b, ideal, p),
    }
}

/// Intersection of two `Full` sets (or `∅`).
pub fn intersect(x1: &ConstructibleSet, x2: &ConstructibleSet) -> Result<ConstructibleSet> {
    if matches!(x1, ConstructibleSet::PDiff { .. }) || matches!(x2, ConstructibleSet::PDiff { .. })
    {
        return Err(Error::InvalidSet(
            "intersect expects sets of kind Full".into(),
        ));
    }
    meet(x1, x2)
}

/// Intersection of two `PDiff` sets with the same marked prime.
pub fn pdiff_intersect(x1: &ConstructibleSet, x2: &ConstructibleSet) -> Result<ConstructibleSet> {
    match (x1, x2) {
        (ConstructibleSet::PDiff { marked: p, .. }, ConstructibleSet::PDiff { marked: q, .. })
            if p != q =>
        {
            Err(Error::MarkedPrimeMismatch)
        }
        (ConstructibleSet::Full { .. }, _) | (_, ConstructibleSet::Full { .. }) => Err(
            Error::InvalidSet("pdiff_intersect expects sets of kind PDiff".into()),
        ),
        _ => meet(x1, x2),
    }
}

/// The `𝒥({𝔭})` sets `(b + 𝔭^a) × (𝔭^a ∖ 𝔭^{a+1})` for `a ≤ max_val` and
/// `b` over `R/𝔭^a`, on the one-prime support `{𝔭}`.
pub fn j_family(
    support: &Arc<Support>,
    marked: usize,
    max_val: u32,
) -> Result<Vec<ConstructibleSet>> {
    coset_family(support, marked, max_val, true)
}

/// The cosets `(b + 𝔭^a) × (𝔭^a)ˣ` for `a ≤ max_val`.
pub fn full_family(
    support: &Arc<Support>,
    marked: usize,
    max_val: u32,
) -> Result<Vec<ConstructibleSet>> {
    coset_family(support, marked, max_val, false)
}

fn coset_family(
    support: &Arc<Support>,
    marked: usize,
    max_val: u32,
    pdiff: bool,
) -> Result<Vec<ConstructibleSet>> {
    if marked >= support.len() {
        return Err(Error::InvalidSet("marked prime outside the support".into()));
    }
    let mut out = Vec::new();
    for a in 0..=max_val {
        let mut vals = vec![0i64; support.len()];
        vals[marked] = a as i64;
        let ideal = SupportedIdeal::new(support, vals)?;
        for b in residues(&ideal.to_ideal()?) {
            out.push(if pdiff {
                ConstructibleSet::pdiff(&b, ideal.clone(), marked)?
            } else {
                ConstructibleSet::full(&b, ideal.clone())?
            });
        }
    }
    Ok(out)
}

/// Canonical representatives of `R/𝔞`, in mixed-radix order.
pub fn residues(a: &IntegralIdeal) -> Vec<Vec<BigInt>> {
    let n = a.basis().ncols();
    let diag: Vec<BigInt> = (0..n).map(|i| a.basis().get(i, i).clone()).collect();
    let mut out = vec![vec![BigInt::zero(); n]];
    for (i, d) in diag.iter().enumerate() {
        let mut next = Vec::new();
        for v in &out {
            let mut c = BigInt::zero();
            while &c < d {
                let mut w = v.clone();
                w[i] = c.clone();
                next.push(w);
                c += 1;
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::primes_above;

    fn rationals_support(ps: &[u64]) -> Arc<Support> {
        let q = Arc::new(NumberField::rationals());
        let primes = ps
            .iter()
            .map(|&p| primes_above(&q, p).unwrap().remove(0))
            .collect();
        Support::new(&q, primes).unwrap()
    }

    fn int(v: i64) -> Vec<BigInt> {
        vec![BigInt::from(v)]
    }

    #[test]
    fn crt_examples() {
        let s = rationals_support(&[2, 3]);
        let x1 =
            ConstructibleSet::full(&int(0), SupportedIdeal::new(&s, vec![1, 0]).unwrap()).unwrap();
        let x2 =
            ConstructibleSet::full(&int(1), SupportedIdeal::new(&s, vec![0, 1]).unwrap()).unwrap();
        let x = intersect(&x1, &x2).unwrap();
        assert_eq!(x.rep().unwrap(), &int(4)[..]);
        assert_eq!(x.ideal().unwrap().valuations(), &[1, 1]);
        assert_eq!(x.to_string(), "4 mod 6");
        assert_eq!(intersect(&x1, &x1).unwrap(), x1);
        let x3 =
            ConstructibleSet::full(&int(1), SupportedIdeal::new(&s, vec![1, 0]).unwrap()).unwrap();
        assert_eq!(intersect(&x1, &x3).unwrap(), ConstructibleSet::Empty);
    }

    #[test]
    fn pdiff_examples() {
        let s = rationals_support(&[2, 3]);
        let p1 = ConstructibleSet::pdiff(&int(0), SupportedIdeal::new(&s, vec![1, 0]).unwrap(), 0)
            .unwrap();
        let p2 = ConstructibleSet::pdiff(&int(0), SupportedIdeal::new(&s, vec![2, 0]).unwrap(), 0)
            .unwrap();
        assert_eq!(pdiff_intersect(&p1, &p2).unwrap(), ConstructibleSet::Empty);
        assert_eq!(pdiff_intersect(&p1, &p1).unwrap(), p1);
        let p6 = ConstructibleSet::pdiff(&int(0), SupportedIdeal::new(&s, vec![1, 1]).unwrap(), 0)
            .unwrap();
        assert_eq!(pdiff_intersect(&p1, &p6).unwrap(), p6);
        let other =
            ConstructibleSet::pdiff(&int(0), SupportedIdeal::new(&s, vec![0, 1]).unwrap(), 1)
                .unwrap();
        assert_eq!(
            pdiff_intersect(&p1, &other),
            Err(Error::MarkedPrimeMismatch)
        );
    }

    #[test]
    fn family_sizes() {
        let s = rationals_support(&[2]);
        assert_eq!(j_family(&s, 0, 3).unwrap().len(), 1 + 2 + 4 + 8);
        let g = Arc::new(NumberField::parse("x^2+1").unwrap());
        let p3 = primes_above(&g, 3).unwrap();
        let s = Support::new(&g, p3).unwrap();
        assert_eq!(j_family(&s, 0, 2).unwrap().len(), 1 + 9 + 81);
    }

    #[test]
    fn rejects_fractional() {
        let s = rationals_support(&[2]);
        let a = SupportedIdeal::new(&s, vec![-1]).unwrap();
        assert!(ConstructibleSet::full(&int(0), a).is_err());
    }
}
