//! Number fields `K = ℚ[x]/(f)` presented by a monic irreducible integer
//! polynomial, and the splitting of rational primes in them.
//!
//! All ideal arithmetic downstream happens in the equation order `ℤ[α]`,
//! `α` a root of the stored polynomial. Primes dividing the index
//! `[O_K : ℤ[α]]` are detected with Dedekind's criterion and never factored
//! silently. Quadratic inputs `x² - d` with `d ≡ 1 (mod 4)` are re-presented
//! as `x² - x - (d-1)/4`, whose equation order is the maximal order when `d`
//! is squarefree.

mod element;
mod embed;
mod irreducible;
mod parse;
mod splitting;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

pub use embed::{complex_roots, T2Gram};
pub use irreducible::{certify_irreducible, Irreducibility};
pub use parse::parse_poly;
pub use splitting::{dedekind_index_safe, PrimeIdealSlot, SplittingRecord};

use crate::error::{Error, Result};
use crate::exactmath::int::{is_prime, trial_factor};
use crate::exactmath::modpoly::DEFAULT_SEED;
use crate::exactmath::{discriminant, real_root_count, IntPoly};

/// How the input polynomial relates to the stored presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Presentation {
    /// Stored exactly as given.
    AsGiven,
    /// `x² - d`, `d ≡ 1 (mod 4)`, rewritten as `x² - x - (d-1)/4`.
    QuadraticMaximal,
}

/// A number field with its defining data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberField {
    poly: IntPoly,
    input: IntPoly,
    presentation: Presentation,
    poly_discriminant: BigInt,
    field_discriminant_bound: BigInt,
    index_denominator: BigInt,
    index_unsafe: Vec<u64>,
    r1: usize,
    r2: usize,
    seed: u64,
}

/// Builds a field from coefficients, lowest degree first.
pub fn create_field(coeffs: &[BigInt]) -> Result<NumberField> {
    NumberField::from_poly(IntPoly::new(coeffs.to_vec()))
}

impl NumberField {
    /// Builds a field, re-presenting eligible quadratics on the maximal order.
    pub fn from_poly(f: IntPoly) -> Result<Self> {
        Self::build(f, true, DEFAULT_SEED)
    }

    /// Builds a field on exactly the given polynomial.
    pub fn from_poly_as_given(f: IntPoly) -> Result<Self> {
        Self::build(f, false, DEFAULT_SEED)
    }

    /// Parses the shared polynomial grammar and builds the field.
    pub fn parse(input: &str) -> Result<Self> {
        Self::from_poly(parse_poly(input)?)
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::from_poly(IntPoly::from_i64(coeffs))
    }

    /// The rationals, presented by `x`.
    pub fn rationals() -> Self {
        Self::from_i64(&[0, 1]).expect("x is irreducible")
    }

    /// Replaces the seed driving randomized finite-field splitting.
    /// Results are identical for every seed.
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn build(input: IntPoly, represent: bool, seed: u64) -> Result<Self> {
        if input.is_zero() || input.degree() == 0 {
            return Err(Error::Parse(
                "polynomial must have degree at least 1".into(),
            ));
        }
        if !input.is_monic() {
            return Err(Error::NonMonic);
        }
        if let Irreducibility::Reducible(w) = certify_irreducible(&input, seed)? {
            return Err(Error::Reducible {
                witness: w.to_string(),
            });
        }
        let (poly, presentation) = match quadratic_representation(&input) {
            Some(q) if represent => (q, Presentation::QuadraticMaximal),
            _ => (input.clone(), Presentation::AsGiven),
        };
        let n = poly.degree();
        let poly_discriminant = discriminant(&poly)?;
        let r1 = real_root_count(&poly)?;
        let r2 = (n - r1) / 2;

        let tf = trial_factor(&poly_discriminant, 1_000_000);
        let mut square_part: Vec<(BigInt, u32)> = tf
            .small
            .iter()
            .filter(|&&(_, e)| e >= 2)
            .map(|&(p, e)| (BigInt::from(p), e / 2))
            .collect();
        if tf.cofactor > BigInt::one() {
            let s = tf.cofactor.sqrt();
            if &s * &s == tf.cofactor {
                square_part.push((s, 1));
            }
        }
        let mut field_discriminant_bound = BigInt::one();
        let mut index_denominator = BigInt::one();
        let mut index_unsafe = Vec::new();
        for (p, half) in &square_part {
            let pk = num_traits::pow(p.clone(), *half as usize);
            field_discriminant_bound *= &pk;
            let safe = match p.to_u64() {
                Some(pp) if is_prime(pp) => {
                    let ok = dedekind_index_safe(&poly, pp, seed)?;
                    if !ok {
                        index_unsafe.push(pp);
                    }
                    ok
                }
                // composite or huge square root: no certificate either way
                _ => false,
            };
            if !safe {
                index_denominator *= pk;
            }
        }
        Ok(NumberField {
            poly,
            input,
            presentation,
            poly_discriminant,
            field_discriminant_bound,
            index_denominator,
            index_unsafe,
            r1,
            r2,
            seed,
        })
    }

    /// The stored defining polynomial (after any re-presentation).
    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    /// The polynomial as supplied by the caller.
    pub fn input_poly(&self) -> &IntPoly {
        &self.input
    }

    pub fn presentation(&self) -> Presentation {
        self.presentation
    }

    /// `n = [K:ℚ]`.
    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    pub fn poly_discriminant(&self) -> &BigInt {
        &self.poly_discriminant
    }

    /// Largest `d` with `d² | disc(f)`; `O_K ⊆ (1/d) ℤ[α]`.
    pub fn field_discriminant_bound(&self) -> &BigInt {
        &self.field_discriminant_bound
    }

    /// Part of `field_discriminant_bound` supported on primes without a
    /// Dedekind certificate; `O_K ⊆ (1/d') ℤ[α]` for this `d'` as well.
    pub fn index_denominator(&self) -> &BigInt {
        &self.index_denominator
    }

    /// Primes (found in the discriminant) that divide `[O_K : ℤ[α]]`.
    pub fn index_unsafe_primes(&self) -> &[u64] {
        &self.index_unsafe
    }

    /// `(r1, r2)`.
    pub fn signature(&self) -> (usize, usize) {
        (self.r1, self.r2)
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn is_rationals(&self) -> bool {
        self.degree() == 1
    }

    pub fn is_imaginary_quadratic(&self) -> bool {
        self.degree() == 2 && self.r1 == 0
    }

    /// True when the unit group is finite (ℚ and imaginary quadratic fields).
    pub fn has_finite_units(&self) -> bool {
        self.is_rationals() || self.is_imaginary_quadratic()
    }

    /// Canonical key: the stored coefficient list.
    pub fn key(&self) -> Vec<BigInt> {
        self.poly.coeffs().to_vec()
    }

    /// Dedekind's criterion: true iff `p ∤ [O_K : ℤ[α]]`.
    pub fn index_safe(&self, p: u64) -> Result<bool> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        // index² divides disc(f)
        if !(&self.poly_discriminant % (BigInt::from(p) * BigInt::from(p))).is_zero() {
            return Ok(true);
        }
        dedekind_index_safe(&self.poly, p, self.seed)
    }

    /// Factorization of `p` in `O_K` read off from `f mod p`.
    pub fn split_prime(&self, p: u64) -> Result<SplittingRecord> {
        splitting::split_prime(self, p)
    }

    /// `g_K(p)`, the number of primes of `O_K` above `p`.
    pub fn g_count(&self, p: u64) -> Result<usize> {
        Ok(self.split_prime(p)?.g)
    }
}

fn quadratic_representation(f: &IntPoly) -> Option<IntPoly> {
    if f.degree() != 2 || !f.coeff(1).is_zero() {
        return None;
    }
    let d = -f.coeff(0);
    if d.mod_floor(&BigInt::from(4)) != BigInt::one() {
        return None;
    }
    let c = -(&d - BigInt::one()) / BigInt::from(4);
    Some(IntPoly::new(vec![c, -BigInt::one(), BigInt::one()]))
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[x]/({})", self.poly)
    }
}
