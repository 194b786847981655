//! Integral ideals of the equation order in Hermite-form bases, products,
//! norms, principality certificates and class-group orders of primes.

mod class;
mod forms;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use class::{class_order_of_prime, ClassBackend, ClassData};
pub use forms::{iq_class_number, QuadraticForm};

use crate::error::{Error, Result};
use crate::exactmath::{enumerate_bounded_capped, IntMatrix};
use crate::numberfield::{NumberField, PrimeIdealSlot, SplittingRecord};

/// Default node budget for principality searches.
pub const DEFAULT_ENUM_CAP: u64 = 2_000_000;

/// A nonzero ideal of `ℤ[α]`, stored as an `n × n` Hermite basis.
#[derive(Debug, Clone)]
pub struct IntegralIdeal {
    field: Arc<NumberField>,
    basis: IntMatrix,
}

impl PartialEq for IntegralIdeal {
    fn eq(&self, other: &Self) -> bool {
        same_field(&self.field, &other.field) && self.basis == other.basis
    }
}

impl Eq for IntegralIdeal {}

fn same_field(a: &Arc<NumberField>, b: &Arc<NumberField>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Hermite basis of the lattice spanned by `rows` together with `d·ℤⁿ`.
/// `d` must be a nonzero element of the lattice's ℤ-span closure.
fn hermite_with_modulus(
    n: usize,
    d: &BigInt,
    rows: impl IntoIterator<Item = Vec<BigInt>>,
) -> IntMatrix {
    let mut h = IntMatrix::identity(n).into_rows();
    for r in h.iter_mut() {
        for v in r.iter_mut() {
            *v *= d;
        }
    }
    let mut h = IntMatrix::from_rows(h);
    for row in rows {
        let reduced: Vec<BigInt> = row.iter().map(|v| v.mod_floor(d)).collect();
        if reduced.iter().all(|v| v.is_zero()) {
            continue;
        }
        let stacked = h.stack(&IntMatrix::from_rows(vec![reduced])).hermite_form();
        h = IntMatrix::from_rows(stacked.into_rows().into_iter().take(n).collect());
    }
    h
}

impl IntegralIdeal {
    /// The unit ideal `(1)`.
    pub fn unit(field: &Arc<NumberField>) -> Self {
        IntegralIdeal {
            field: field.clone(),
            basis: IntMatrix::identity(field.degree()),
        }
    }

    /// The principal ideal `(x)`, `x ≠ 0`.
    pub fn principal(field: &Arc<NumberField>, x: &[BigInt]) -> Result<Self> {
        Self::from_generators(field, &[x.to_vec()])
    }

    /// Ideal generated by the given elements; errors if it is zero.
    pub fn from_generators(field: &Arc<NumberField>, gens: &[Vec<BigInt>]) -> Result<Self> {
        let n = field.degree();
        let mut rows = Vec::new();
        for g in gens {
            if g.len() != n {
                return Err(Error::Dimension(format!(
                    "element of length {} in degree {n}",
                    g.len()
                )));
            }
            rows.extend(field.mult_matrix(g).into_rows());
        }
        let h = IntMatrix::from_rows(rows).hermite_form();
        let basis = IntMatrix::from_rows(h.into_rows().into_iter().take(n).collect());
        if basis.hermite_index().is_zero() {
            return Err(Error::InvalidSet("zero ideal".into()));
        }
        Ok(IntegralIdeal {
            field: field.clone(),
            basis,
        })
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// `[ℤ[α] : 𝔞]`.
    pub fn norm(&self) -> BigInt {
        self.basis.hermite_index()
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.basis.hermite_coordinates(x).is_some()
    }

    /// Closure under multiplication by `α` (the ideal property).
    pub fn is_ideal(&self) -> bool {
        let n = self.field.degree();
        if n == 1 {
            return true;
        }
        let alpha = self.field.basis_vector(1);
        self.basis
            .rows()
            .iter()
            .all(|r| self.contains(&self.field.mul(r, &alpha)))
    }

    pub fn pow(&self, k: u32) -> Result<IntegralIdeal> {
        let mut acc = IntegralIdeal::unit(&self.field);
        for _ in 0..k {
            acc = ideal_mul(&acc, self)?;
        }
        Ok(acc)
    }

    /// Canonical residue of `x` modulo the ideal.
    pub fn reduce(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.basis.reduce_mod_rows(x)
    }

    /// `𝔞 + 𝔟`.
    pub fn sum(&self, other: &IntegralIdeal) -> Result<IntegralIdeal> {
        if !same_field(&self.field, &other.field) {
            return Err(Error::FieldMismatch);
        }
        let n = self.field.degree();
        let d = self.norm().gcd(&other.norm());
        let rows = self.basis.rows().iter().chain(other.basis.rows()).cloned();
        Ok(IntegralIdeal {
            field: self.field.clone(),
            basis: hermite_with_modulus(n, &d, rows),
        })
    }

    /// `𝔞 ∩ 𝔟`: rows `[A | A]` and `[B | 0]` combine to a zero left half
    /// exactly when the right half lies in both ideals.
    pub fn intersect(&self, other: &IntegralIdeal) -> Result<IntegralIdeal> {
        if !same_field(&self.field, &other.field) {
            return Err(Error::FieldMismatch);
        }
        let n = self.field.degree();
        let mut rows = Vec::with_capacity(2 * n);
        for r in self.basis.rows() {
            rows.push(r.iter().chain(r.iter()).cloned().collect::<Vec<_>>());
        }
        for r in other.basis.rows() {
            rows.push(
                r.iter()
                    .cloned()
                    .chain(std::iter::repeat_n(BigInt::zero(), n))
                    .collect::<Vec<_>>(),
            );
        }
        let h = IntMatrix::from_rows(rows).hermite_form();
        let tail: Vec<Vec<BigInt>> = h.rows()[n..].iter().map(|r| r[n..].to_vec()).collect();
        Ok(IntegralIdeal {
            field: self.field.clone(),
            basis: IntMatrix::from_rows(tail).hermite_form(),
        })
    }

    /// `𝔟 ⊆ self`.
    pub fn contains_ideal(&self, other: &IntegralIdeal) -> bool {
        other.basis.rows().iter().all(|r| self.contains(r))
    }
}

impl fmt::Display for IntegralIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .basis
            .rows()
            .iter()
            .map(|r| {
                let parts: Vec<String> = r.iter().map(|v| v.to_string()).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(" "))
    }
}

/// `𝔞𝔟`.
pub fn ideal_mul(a: &IntegralIdeal, b: &IntegralIdeal) -> Result<IntegralIdeal> {
    if !same_field(&a.field, &b.field) {
        return Err(Error::FieldMismatch);
    }
    let field = &a.field;
    let n = field.degree();
    let d = a.norm() * b.norm();
    let products = a
        .basis
        .rows()
        .iter()
        .flat_map(|x| b.basis.rows().iter().map(move |y| field.mul(x, y)))
        .collect::<Vec<_>>();
    Ok(IntegralIdeal {
        field: field.clone(),
        basis: hermite_with_modulus(n, &d, products),
    })
}

pub fn ideal_norm(a: &IntegralIdeal) -> BigInt {
    a.norm()
}

/// A prime of `ℤ[α]` above an index-safe rational prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeIdeal {
    pub slot: PrimeIdealSlot,
    /// Position of the slot in its splitting record.
    pub index: usize,
    pub ideal: IntegralIdeal,
}

impl PrimeIdeal {
    pub fn p(&self) -> u64 {
        self.slot.p
    }

    pub fn norm(&self) -> BigInt {
        self.ideal.norm()
    }
}

/// `⟨p, gᵢ(α)⟩` for slot `i` of `record`.
pub fn prime_ideal_from_slot(
    field: &Arc<NumberField>,
    record: &SplittingRecord,
    i: usize,
) -> Result<PrimeIdeal> {
    if !record.index_safe {
        return Err(Error::IndexUnsafe { p: record.p });
    }
    let slot = record.slots.get(i).ok_or(Error::SlotOutOfRange {
        index: i,
        len: record.slots.len(),
    })?;
    let n = field.degree();
    let p = BigInt::from(slot.p);
    let g: Vec<BigInt> = (0..n)
        .map(|j| BigInt::from(slot.generator.coeffs().get(j).copied().unwrap_or(0)))
        .collect();
    // a generator of degree n is f itself mod p, i.e. the ideal is (p)
    let rows = if slot.generator.degree() >= n {
        Vec::new()
    } else {
        field.mult_matrix(&g).into_rows()
    };
    let ideal = IntegralIdeal {
        field: field.clone(),
        basis: hermite_with_modulus(n, &p, rows),
    };
    debug_assert_eq!(ideal.norm(), slot.norm());
    Ok(PrimeIdeal {
        slot: slot.clone(),
        index: i,
        ideal,
    })
}

/// All primes above `p`, in slot order.
pub fn primes_above(field: &Arc<NumberField>, p: u64) -> Result<Vec<PrimeIdeal>> {
    let record = field.split_prime(p)?;
    (0..record.slots.len())
        .map(|i| prime_ideal_from_slot(field, &record, i))
        .collect()
}

/// Outcome of a principality test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Principality {
    /// A generator `x` with `x ∈ 𝔞` and `|N(x)| = N(𝔞)`.
    Principal(Vec<BigInt>),
    NotPrincipal,
    Unknown,
}

/// Search radius `n·⌈(N(𝔞)²·|disc|)^{1/n}⌉` for generators in T2.
fn principal_search_bound(field: &NumberField, norm: &BigInt) -> BigInt {
    let n = field.degree() as u32;
    let v = norm * norm * field.poly_discriminant().abs();
    let mut r = v.nth_root(n);
    if num_traits::pow(r.clone(), n as usize) < v {
        r += 1;
    }
    BigInt::from(n) * r
}

/// Looks for a generator of `a` among its elements of bounded T2.
///
/// `NotPrincipal` is returned only for ℚ and imaginary quadratic fields,
/// where every generator has `T2 = n·N(𝔞)^{2/n}` and the search is
/// exhaustive; elsewhere a failed search is `Unknown`.
pub fn is_principal(a: &IntegralIdeal, cap: Option<u64>) -> Principality {
    let field = &a.field;
    let norm = a.norm();
    if norm.is_one() {
        return Principality::Principal(field.integer(1));
    }
    let Ok(t2) = field.t2_gram() else {
        return Principality::Unknown;
    };
    let bound = BigRational::from_integer(principal_search_bound(field, &norm));
    let gram = t2.gram.restrict(&a.basis);
    let Ok(found) = enumerate_bounded_capped(&gram, &bound, cap) else {
        return Principality::Unknown;
    };
    for coords in &found.points {
        if coords.iter().all(|c| c.is_zero()) {
            continue;
        }
        let x = combine(&a.basis, coords);
        if field.norm(&x).abs() == norm {
            return Principality::Principal(x);
        }
    }
    if found.complete && t2.exact && field.has_finite_units() {
        Principality::NotPrincipal
    } else {
        Principality::Unknown
    }
}

fn combine(basis: &IntMatrix, coords: &[BigInt]) -> Vec<BigInt> {
    let n = basis.ncols();
    let mut x = vec![BigInt::zero(); n];
    for (c, row) in coords.iter().zip(basis.rows()) {
        if c.is_zero() {
            continue;
        }
        for (xi, ri) in x.iter_mut().zip(row) {
            *xi += c * ri;
        }
    }
    x
}

/// Independent check of a `Principal` answer: membership by exact solve
/// and norm equality.
pub fn verify_generator(a: &IntegralIdeal, x: &[BigInt]) -> bool {
    a.basis.solve_in_row_span(x).is_some() && a.field.norm(x).abs() == a.norm()
}
