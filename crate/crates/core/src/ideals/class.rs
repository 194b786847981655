//! Class numbers and orders `h_𝔭` of prime classes.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;

use super::forms::{iq_class_number, prime_form};
use super::{is_principal, PrimeIdeal, Principality, DEFAULT_ENUM_CAP};
use crate::error::{Error, Result};
use crate::exactmath::int::divisors;
use crate::numberfield::NumberField;

/// Largest power tried when the class number is unknown.
pub const SEARCH_POWER_LIMIT: u32 = 16;

/// Where class-group information comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassBackend {
    /// Gauss composition of binary quadratic forms (imaginary quadratic).
    Forms,
    /// Principality search on ideal powers.
    Search,
    /// User-supplied values, with search as the fallback.
    Manual,
}

impl ClassBackend {
    pub fn name(&self) -> &'static str {
        match self {
            ClassBackend::Forms => "forms",
            ClassBackend::Search => "search",
            ClassBackend::Manual => "manual",
        }
    }
}

/// Class number and per-prime orders for one field.
#[derive(Debug, Clone)]
pub struct ClassData {
    field: Arc<NumberField>,
    h: Option<u64>,
    backend: ClassBackend,
    manual: BTreeMap<(u64, usize), u64>,
    enum_cap: u64,
}

impl ClassData {
    /// Forms for imaginary quadratic fields, search otherwise.
    pub fn automatic(field: &Arc<NumberField>) -> Result<Self> {
        if field.is_imaginary_quadratic() {
            Self::with_backend(field, ClassBackend::Forms)
        } else {
            Self::with_backend(field, ClassBackend::Search)
        }
    }

    pub fn with_backend(field: &Arc<NumberField>, backend: ClassBackend) -> Result<Self> {
        let h = match backend {
            ClassBackend::Forms => Some(iq_class_number(field)?),
            _ if field.is_rationals() => Some(1),
            _ => None,
        };
        Ok(ClassData {
            field: field.clone(),
            h,
            backend,
            manual: BTreeMap::new(),
            enum_cap: DEFAULT_ENUM_CAP,
        })
    }

    /// User-supplied data: class number and `(p, slot) → h_𝔭` entries.
    pub fn manual(
        field: &Arc<NumberField>,
        h: Option<u64>,
        entries: BTreeMap<(u64, usize), u64>,
    ) -> Result<Self> {
        if entries.values().any(|&k| k == 0) || h == Some(0) {
            return Err(Error::ClassDataUnavailable(
                "orders must be positive".into(),
            ));
        }
        if let Some(h) = h {
            if let Some((&(p, i), &k)) = entries.iter().find(|(_, &k)| h % k != 0) {
                return Err(Error::ClassDataUnavailable(format!(
                    "h_p = {k} for ({p}, {i}) does not divide h = {h}"
                )));
            }
        }
        Ok(ClassData {
            field: field.clone(),
            h: h.or(field.is_rationals().then_some(1)),
            backend: ClassBackend::Manual,
            manual: entries,
            enum_cap: DEFAULT_ENUM_CAP,
        })
    }

    /// Overrides the class number (e.g. a known value for a real field).
    pub fn with_class_number(mut self, h: u64) -> Self {
        self.h = Some(h);
        self
    }

    pub fn with_enum_cap(mut self, cap: u64) -> Self {
        self.enum_cap = cap;
        self
    }

    pub fn class_number(&self) -> Option<u64> {
        self.h
    }

    pub fn backend(&self) -> ClassBackend {
        self.backend
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    /// `h_𝔭` for `P`.
    pub fn order_of(&self, prime: &PrimeIdeal) -> Result<u64> {
        if self.field.is_rationals() {
            return Ok(1);
        }
        match self.backend {
            ClassBackend::Forms => self.forms_order(prime),
            ClassBackend::Search => self.search_order(prime),
            ClassBackend::Manual => match self.manual.get(&(prime.p(), prime.index)) {
                Some(&k) => Ok(k),
                None => self.search_order(prime),
            },
        }
    }

    fn forms_order(&self, prime: &PrimeIdeal) -> Result<u64> {
        if !self.field.is_imaginary_quadratic() {
            return Err(Error::NotImaginaryQuadratic);
        }
        if prime.slot.f == 2 {
            // inert: (p) itself
            return Ok(1);
        }
        let g = prime.slot.generator.coeffs();
        let r = (BigInt::from(prime.p()) - BigInt::from(g[0])) % BigInt::from(prime.p());
        Ok(prime_form(&self.field, prime.p(), &r).class_order())
    }

    fn search_order(&self, prime: &PrimeIdeal) -> Result<u64> {
        let candidates: Vec<u64> = match self.h {
            Some(h) => divisors(h),
            None => (1..=SEARCH_POWER_LIMIT as u64).collect(),
        };
        let mut power = prime.ideal.clone();
        let mut have = 1u64;
        for k in candidates {
            if Some(k) == self.h {
                return Ok(k);
            }
            while have < k {
                power = super::ideal_mul(&power, &prime.ideal)?;
                have += 1;
            }
            match is_principal(&power, Some(self.enum_cap)) {
                Principality::Principal(_) => return Ok(k),
                Principality::NotPrincipal => continue,
                Principality::Unknown => {
                    return Err(Error::ClassDataUnavailable(format!(
                        "principality of power {k} of a prime above {} undecided; supply --class-h/--class-hp",
                        prime.p()
                    )))
                }
            }
        }
        Err(Error::ClassDataUnavailable(format!(
            "no principal power of a prime above {} up to {}",
            prime.p(),
            SEARCH_POWER_LIMIT
        )))
    }
}

/// `h_𝔭`, the order of `[𝔭]` in the class group of the working order.
pub fn class_order_of_prime(
    field: &NumberField,
    prime: &PrimeIdeal,
    class_data: &ClassData,
) -> Result<u64> {
    if class_data.field.as_ref() != field {
        return Err(Error::FieldMismatch);
    }
    class_data.order_of(prime)
}
