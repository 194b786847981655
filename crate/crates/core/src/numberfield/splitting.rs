use num_bigint::BigInt;
use num_traits::Zero;

use super::NumberField;
use crate::error::{Error, Result};
use crate::exactmath::int::is_prime;
use crate::exactmath::{factor_mod_p_seeded, IntPoly, ModPoly};

/// One prime ideal above `p`, described by its Dedekind data.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimeIdealSlot {
    pub p: u64,
    /// Ramification index.
    pub e: u32,
    /// Residue degree.
    pub f: u32,
    /// Monic irreducible factor of the defining polynomial mod `p`.
    pub generator: ModPoly,
}

impl PrimeIdealSlot {
    /// `N(𝔭) = p^f`.
    pub fn norm(&self) -> BigInt {
        num_traits::pow(BigInt::from(self.p), self.f as usize)
    }
}

/// Factorization of a rational prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplittingRecord {
    pub p: u64,
    /// Slots ordered by `(f, e, generator)`.
    pub slots: Vec<PrimeIdealSlot>,
    /// Number of primes above `p`.
    pub g: usize,
    pub index_safe: bool,
}

impl SplittingRecord {
    /// Sorted multiset of `(e, f)` pairs.
    pub fn ef_pairs(&self) -> Vec<(u32, u32)> {
        let mut v: Vec<(u32, u32)> = self.slots.iter().map(|s| (s.e, s.f)).collect();
        v.sort();
        v
    }
}

/// Dedekind's criterion for `p ∤ [O_K : ℤ[α]]`, `α` a root of monic `f`.
///
/// With `f ≡ Π gᵢ^{eᵢ} (mod p)`, `g = Π gᵢ`, `h = Π gᵢ^{eᵢ-1}` (lifted) and
/// `F = (f - g h)/p`, the prime is safe iff `gcd(F̄, ḡ, h̄) = 1` in `𝔽_p[x]`.
pub fn dedekind_index_safe(f: &IntPoly, p: u64, seed: u64) -> Result<bool> {
    let factors = factor_mod_p_seeded(&ModPoly::from_int_poly(f, p), seed)?;
    Ok(dedekind_from_factors(f, p, &factors))
}

fn dedekind_from_factors(f: &IntPoly, p: u64, factors: &[(ModPoly, u32)]) -> bool {
    if factors.iter().all(|(_, e)| *e == 1) {
        return true;
    }
    let mut g = ModPoly::one(p);
    let mut h = ModPoly::one(p);
    for (gi, e) in factors {
        g = g.mul(gi);
        for _ in 1..*e {
            h = h.mul(gi);
        }
    }
    let gh = &g.to_int_poly() * &h.to_int_poly();
    let diff = f - &gh;
    let bp = BigInt::from(p);
    debug_assert!(diff.coeffs().iter().all(|c| (c % &bp).is_zero()));
    let big_f = IntPoly::new(diff.coeffs().iter().map(|c| c / &bp).collect());
    let big_f = ModPoly::from_int_poly(&big_f, p);
    g.gcd(&h).gcd(&big_f).degree() == 0
}

pub(super) fn split_prime(field: &NumberField, p: u64) -> Result<SplittingRecord> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let f = field.poly();
    let factors = factor_mod_p_seeded(&ModPoly::from_int_poly(f, p), field.seed())?;
    if !dedekind_from_factors(f, p, &factors) {
        return Err(Error::IndexUnsafe { p });
    }
    let mut slots: Vec<PrimeIdealSlot> = factors
        .into_iter()
        .map(|(generator, e)| PrimeIdealSlot {
            p,
            e,
            f: generator.degree() as u32,
            generator,
        })
        .collect();
    slots.sort_by(|a, b| {
        a.f.cmp(&b.f)
            .then(a.e.cmp(&b.e))
            .then_with(|| a.generator.canonical_cmp(&b.generator))
    });
    Ok(SplittingRecord {
        p,
        g: slots.len(),
        slots,
        index_safe: true,
    })
}
