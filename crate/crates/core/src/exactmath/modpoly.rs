//! Polynomials over a prime field 𝔽_p and their factorization.
//!
//! Factorization runs squarefree decomposition, then distinct-degree
//! splitting, then Cantor-Zassenhaus equal-degree splitting driven by a
//! seeded ChaCha generator, so the output is reproducible. The returned
//! factor list is sorted canonically and does not depend on the seed.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::int::{inv_mod, is_prime};
use super::poly::IntPoly;
use crate::error::{Error, Result};

/// Default seed for the equal-degree splitting step.
pub const DEFAULT_SEED: u64 = 0x6e66_6b5f_7365_6564;

/// Polynomial over ℤ/pℤ, lowest degree first, coefficients in `[0, p)`,
/// no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModPoly {
    coeffs: Vec<u64>,
    p: u64,
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

impl ModPoly {
    pub fn new(coeffs: Vec<u64>, p: u64) -> Self {
        assert!(p >= 2, "modulus must be at least 2");
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ModPoly { coeffs, p }
    }

    /// Reduction of an integer polynomial mod `p`.
    pub fn from_int_poly(f: &IntPoly, p: u64) -> Self {
        let bp = BigInt::from(p);
        ModPoly::new(
            f.coeffs()
                .iter()
                .map(|c| {
                    let r = ((c % &bp) + &bp) % &bp;
                    r.to_u64().expect("reduced coefficient fits")
                })
                .collect(),
            p,
        )
    }

    /// Lift with coefficients in `[0, p)`.
    pub fn to_int_poly(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(p: u64) -> Self {
        ModPoly::new(Vec::new(), p)
    }

    pub fn one(p: u64) -> Self {
        ModPoly::new(vec![1], p)
    }

    pub fn x(p: u64) -> Self {
        ModPoly::new(vec![0, 1], p)
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn monic(&self) -> ModPoly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = inv_mod(self.leading(), self.p).expect("leading coefficient invertible");
        self.scale(inv)
    }

    pub fn scale(&self, k: u64) -> ModPoly {
        ModPoly::new(
            self.coeffs.iter().map(|&c| mulm(c, k, self.p)).collect(),
            self.p,
        )
    }

    pub fn add(&self, other: &ModPoly) -> ModPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        ModPoly::new(
            (0..len)
                .map(|i| {
                    let a = self.coeffs.get(i).copied().unwrap_or(0);
                    let b = other.coeffs.get(i).copied().unwrap_or(0);
                    ((a as u128 + b as u128) % self.p as u128) as u64
                })
                .collect(),
            self.p,
        )
    }

    pub fn sub(&self, other: &ModPoly) -> ModPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        ModPoly::new(
            (0..len)
                .map(|i| {
                    let a = self.coeffs.get(i).copied().unwrap_or(0);
                    let b = other.coeffs.get(i).copied().unwrap_or(0);
                    ((a as u128 + self.p as u128 - b as u128) % self.p as u128) as u64
                })
                .collect(),
            self.p,
        )
    }

    pub fn mul(&self, other: &ModPoly) -> ModPoly {
        if self.is_zero() || other.is_zero() {
            return ModPoly::zero(self.p);
        }
        let mut out = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        let p = self.p as u128;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u128 * b as u128) % p;
            }
        }
        ModPoly::new(out.into_iter().map(|v| v as u64).collect(), self.p)
    }

    pub fn div_rem(&self, divisor: &ModPoly) -> (ModPoly, ModPoly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let d = divisor.degree();
        if self.coeffs.len() <= d {
            return (ModPoly::zero(self.p), self.clone());
        }
        let p = self.p;
        let lc_inv = inv_mod(divisor.leading(), p).expect("leading coefficient invertible");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - d];
        for i in (d..rem.len()).rev() {
            if rem[i] == 0 {
                continue;
            }
            let q = mulm(rem[i], lc_inv, p);
            for (j, &c) in divisor.coeffs.iter().enumerate() {
                let t = mulm(q, c, p);
                rem[i - d + j] = (rem[i - d + j] + p - t) % p;
            }
            quot[i - d] = q;
        }
        rem.truncate(d);
        (ModPoly::new(quot, p), ModPoly::new(rem, p))
    }

    pub fn rem(&self, divisor: &ModPoly) -> ModPoly {
        self.div_rem(divisor).1
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &ModPoly) -> ModPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> ModPoly {
        ModPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mulm(c, i as u64 % self.p, self.p))
                .collect(),
            self.p,
        )
    }

    /// `self^exp mod modulus`.
    pub fn pow_mod(&self, exp: &BigUint, modulus: &ModPoly) -> ModPoly {
        let mut acc = ModPoly::one(self.p).rem(modulus);
        let base = self.rem(modulus);
        for i in (0..exp.bits()).rev() {
            acc = acc.mul(&acc).rem(modulus);
            if exp.bit(i) {
                acc = acc.mul(&base).rem(modulus);
            }
        }
        acc
    }

    /// Inverse of the Frobenius on a polynomial whose derivative vanishes:
    /// maps `Σ c_i x^{ip}` to `Σ c_i x^i` (coefficients are fixed by Frobenius
    /// in the prime field).
    fn pth_root(&self) -> ModPoly {
        let p = self.p as usize;
        ModPoly::new(self.coeffs.iter().step_by(p).copied().collect(), self.p)
    }

    /// Canonical order: degree, then coefficients from the constant term up.
    pub fn canonical_cmp(&self, other: &ModPoly) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl fmt::Display for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.to_int_poly(), self.p)
    }
}

/// Factors `f` into monic irreducibles with multiplicities, using the
/// default seed.
pub fn factor_mod_p(f: &ModPoly) -> Result<Vec<(ModPoly, u32)>> {
    factor_mod_p_seeded(f, DEFAULT_SEED)
}

/// As [`factor_mod_p`], with an explicit seed for equal-degree splitting.
pub fn factor_mod_p_seeded(f: &ModPoly, seed: u64) -> Result<Vec<(ModPoly, u32)>> {
    let p = f.modulus();
    if !is_prime(p) {
        return Err(Error::CompositeModulus(p));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p.rotate_left(17));
    let mut out = Vec::new();
    for (part, mult) in squarefree_decomposition(&f.monic()) {
        for (block, d) in distinct_degree(&part) {
            for g in equal_degree(&block, d, &mut rng) {
                out.push((g, mult));
            }
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(out)
}

fn squarefree_decomposition(f: &ModPoly) -> Vec<(ModPoly, u32)> {
    let p = f.modulus();
    let mut out = Vec::new();
    if f.degree() == 0 {
        return out;
    }
    let df = f.derivative();
    if df.is_zero() {
        for (g, m) in squarefree_decomposition(&f.pth_root()) {
            out.push((g, m * p as u32));
        }
        return out;
    }
    let mut c = f.gcd(&df);
    let mut w = f.div_rem(&c).0;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div_rem(&y).0;
        if z.degree() > 0 {
            out.push((z.monic(), i));
        }
        i += 1;
        w = y;
        c = c.div_rem(&w).0;
    }
    if c.degree() > 0 {
        for (g, m) in squarefree_decomposition(&c.pth_root()) {
            out.push((g, m * p as u32));
        }
    }
    out
}

/// Splits a squarefree monic polynomial into products of irreducibles of a
/// common degree: returns `(product, degree)` blocks.
fn distinct_degree(f: &ModPoly) -> Vec<(ModPoly, usize)> {
    let p = f.modulus();
    let pb = BigUint::from(p);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = ModPoly::x(p);
    let mut h = x.rem(&rest);
    let mut d = 1;
    while rest.degree() >= 2 * d {
        h = h.pow_mod(&pb, &rest);
        let g = rest.gcd(&h.sub(&x));
        if g.degree() > 0 {
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if rest.degree() > 0 {
        let deg = rest.degree();
        out.push((rest.monic(), deg));
    }
    out
}

fn random_poly(deg_below: usize, p: u64, rng: &mut ChaCha8Rng) -> ModPoly {
    ModPoly::new((0..deg_below).map(|_| rng.gen_range(0..p)).collect(), p)
}

fn equal_degree(f: &ModPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<ModPoly> {
    if f.degree() == d {
        return vec![f.monic()];
    }
    let p = f.modulus();
    loop {
        let a = random_poly(f.degree(), p, rng);
        if a.degree() == 0 {
            continue;
        }
        let b = if p == 2 {
            // absolute trace a + a^2 + ... + a^{2^{d-1}} lands in 𝔽_2
            let two = BigUint::from(2u32);
            let mut term = a.rem(f);
            let mut acc = term.clone();
            for _ in 1..d {
                term = term.pow_mod(&two, f);
                acc = acc.add(&term);
            }
            acc
        } else {
            let e = (num_traits::pow(BigUint::from(p), d) - BigUint::one()) / BigUint::from(2u32);
            a.pow_mod(&e, f).sub(&ModPoly::one(p))
        };
        let g = f.gcd(&b);
        if g.degree() > 0 && g.degree() < f.degree() {
            let h = f.div_rem(&g).0;
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h.monic(), d, rng));
            return out;
        }
    }
}

/// Product of factors raised to their multiplicities.
pub fn expand_factors(factors: &[(ModPoly, u32)], p: u64) -> ModPoly {
    factors.iter().fold(ModPoly::one(p), |acc, (g, m)| {
        (0..*m).fold(acc, |a, _| a.mul(g))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mp(c: &[u64], p: u64) -> ModPoly {
        ModPoly::new(c.to_vec(), p)
    }

    #[test]
    fn x2_plus_1_mod_5_splits() {
        let fs = factor_mod_p(&mp(&[1, 0, 1], 5)).unwrap();
        assert_eq!(fs, vec![(mp(&[2, 1], 5), 1), (mp(&[3, 1], 5), 1)]);
    }

    #[test]
    fn x2_plus_1_mod_3_is_irreducible() {
        let fs = factor_mod_p(&mp(&[1, 0, 1], 3)).unwrap();
        assert_eq!(fs, vec![(mp(&[1, 0, 1], 3), 1)]);
    }

    #[test]
    fn x_mod_2() {
        assert_eq!(
            factor_mod_p(&mp(&[0, 1], 2)).unwrap(),
            vec![(mp(&[0, 1], 2), 1)]
        );
    }

    #[test]
    fn inseparable_parts() {
        // x^4 + 1 = (x + 1)^4 over 𝔽_2
        let fs = factor_mod_p(&mp(&[1, 0, 0, 0, 1], 2)).unwrap();
        assert_eq!(fs, vec![(mp(&[1, 1], 2), 4)]);
        // (x^2 + x + 1)^3 (x + 2) over 𝔽_3 has a vanishing-derivative block
        let f = expand_factors(&[(mp(&[1, 1, 1], 3), 3), (mp(&[2, 1], 3), 1)], 3);
        let fs = factor_mod_p(&f).unwrap();
        assert_eq!(expand_factors(&fs, 3), f);
    }

    #[test]
    fn composite_modulus_rejected() {
        assert_eq!(
            factor_mod_p(&mp(&[1, 0, 1], 9)),
            Err(Error::CompositeModulus(9))
        );
    }

    #[test]
    fn seed_does_not_change_result() {
        let f = ModPoly::from_int_poly(&IntPoly::from_i64(&[-3, 0, 0, 0, 0, 0, 0, 0, 1]), 73);
        let a = factor_mod_p_seeded(&f, 1).unwrap();
        let b = factor_mod_p_seeded(&f, 99).unwrap();
        assert_eq!(a, b);
    }

    fn is_irreducible_brute(g: &ModPoly) -> bool {
        // no monic factor of degree 1..=deg/2 (exhaustive, tiny degrees only)
        let p = g.modulus();
        let n = g.degree();
        for d in 1..=n / 2 {
            let total = p.pow(d as u32);
            for code in 0..total {
                let mut c = Vec::with_capacity(d + 1);
                let mut k = code;
                for _ in 0..d {
                    c.push(k % p);
                    k /= p;
                }
                c.push(1);
                if g.rem(&ModPoly::new(c, p)).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    proptest! {
        #[test]
        fn factors_multiply_back(
            p in prop::sample::select(vec![2u64, 3, 5, 7, 13]),
            coeffs in prop::collection::vec(0u64..13, 1..8),
        ) {
            let mut c = coeffs;
            c.push(1);
            let f = ModPoly::new(c, p);
            let fs = factor_mod_p(&f).unwrap();
            prop_assert_eq!(expand_factors(&fs, p), f.monic());
            for (g, _) in &fs {
                prop_assert!(g.is_monic());
                prop_assert!(is_irreducible_brute(g));
            }
            for w in fs.windows(2) {
                prop_assert_ne!(w[0].0.canonical_cmp(&w[1].0), Ordering::Greater);
            }
        }
    }
}
