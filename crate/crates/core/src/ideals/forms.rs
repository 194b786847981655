//! Positive definite binary quadratic forms `a x² + b xy + c y²` of negative
//! discriminant: reduction, composition, class numbers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::int::ext_gcd;
use crate::numberfield::NumberField;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadraticForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl QuadraticForm {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Self {
        QuadraticForm {
            a: a.into(),
            b: b.into(),
            c: c.into(),
        }
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    /// The principal form of discriminant `d`.
    pub fn identity(d: &BigInt) -> Self {
        let b = d.mod_floor(&BigInt::from(2));
        let c = (&b * &b - d) / BigInt::from(4);
        QuadraticForm::new(BigInt::one(), b, c)
    }

    pub fn is_reduced(&self) -> bool {
        let QuadraticForm { a, b, c } = self;
        b.abs() <= *a && a <= c && !(b.is_negative() && (b.abs() == *a || a == c))
    }

    pub fn reduce(&self) -> QuadraticForm {
        let d = self.discriminant();
        let (mut a, mut b, mut c) = (self.a.clone(), self.b.clone(), self.c.clone());
        loop {
            // normalize b into (-a, a]
            if !(-&a < b && b <= a) {
                let two_a = BigInt::from(2) * &a;
                let r = (&b + &a - BigInt::one()).mod_floor(&two_a) - &a + BigInt::one();
                b = r;
                c = (&b * &b - &d) / (BigInt::from(4) * &a);
            }
            if a > c {
                std::mem::swap(&mut a, &mut c);
                b = -b;
                continue;
            }
            if a == c && b.is_negative() {
                b = -b;
            }
            break;
        }
        QuadraticForm { a, b, c }
    }

    /// Gauss composition followed by reduction.
    pub fn compose(&self, other: &QuadraticForm) -> QuadraticForm {
        let d = self.discriminant();
        debug_assert_eq!(d, other.discriminant());
        let (f1, f2) = if self.a > other.a {
            (other, self)
        } else {
            (self, other)
        };
        let (a1, b1) = (&f1.a, &f1.b);
        let (a2, b2, c2) = (&f2.a, &f2.b, &f2.c);
        let s = (b1 + b2) / BigInt::from(2);
        let n = b2 - &s;
        let (y1, dd) = if (a2 % a1).is_zero() {
            (BigInt::zero(), a1.clone())
        } else {
            let (g, u, _) = ext_gcd(a2, a1);
            (u, g)
        };
        let (x2, y2, d1) = if (&s % &dd).is_zero() {
            (BigInt::zero(), -BigInt::one(), dd.clone())
        } else {
            let (g, x, y) = ext_gcd(&s, &dd);
            (x, -y, g)
        };
        let v1 = a1 / &d1;
        let v2 = a2 / &d1;
        let r = (&y1 * &y2 * &n - &x2 * c2).mod_floor(&v1);
        let b3 = b2 + BigInt::from(2) * &v2 * &r;
        let a3 = &v1 * &v2;
        let c3 = (&b3 * &b3 - &d) / (BigInt::from(4) * &a3);
        QuadraticForm::new(a3, b3, c3).reduce()
    }

    /// Order in the form class group.
    pub fn class_order(&self) -> u64 {
        let id = QuadraticForm::identity(&self.discriminant());
        let base = self.reduce();
        let mut acc = base.clone();
        let mut k = 1;
        while acc != id {
            acc = acc.compose(&base);
            k += 1;
        }
        k
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// All primitive reduced forms of discriminant `d < 0`.
pub fn reduced_forms(d: &BigInt) -> Vec<QuadraticForm> {
    let mut out = Vec::new();
    let limit = (d.abs() / BigInt::from(3)).sqrt();
    let mut a = BigInt::one();
    while a <= limit {
        let mut b = -&a + BigInt::one();
        while b <= a {
            let num = &b * &b - d;
            let four_a = BigInt::from(4) * &a;
            if (&num % &four_a).is_zero() {
                let c = num / four_a;
                let q = QuadraticForm::new(a.clone(), b.clone(), c.clone());
                if q.is_reduced() && a.gcd(&b).gcd(&c).is_one() {
                    out.push(q);
                }
            }
            b += 1;
        }
        a += 1;
    }
    out
}

/// Class number of an imaginary quadratic field (of its working order), as
/// the number of reduced primitive forms of the polynomial discriminant.
pub fn iq_class_number(field: &NumberField) -> Result<u64> {
    if !field.is_imaginary_quadratic() {
        return Err(Error::NotImaginaryQuadratic);
    }
    Ok(reduced_forms(field.poly_discriminant()).len() as u64)
}

/// The form attached to the prime `⟨p, α - r⟩` of `ℤ[α]`, `α² + bα + c = 0`.
pub(crate) fn prime_form(field: &NumberField, p: u64, r: &BigInt) -> QuadraticForm {
    let b = field.poly().coeff(1);
    let f_r = field.poly().eval(r);
    let pb = BigInt::from(p);
    debug_assert!((&f_r % &pb).is_zero());
    QuadraticForm::new(pb.clone(), b + BigInt::from(2) * r, f_r / pb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn class_numbers() {
        for (poly, h) in [
            ("x^2+1", 1),
            ("x^2+5", 2),
            ("x^2+23", 3),
            ("x^2+3", 1),
            ("x^2+14", 4),
            ("x^2+47", 5),
        ] {
            let k = NumberField::parse(poly).unwrap();
            assert_eq!(iq_class_number(&k).unwrap(), h, "{poly}");
        }
        let k = NumberField::parse("x^2-2").unwrap();
        assert_eq!(iq_class_number(&k), Err(Error::NotImaginaryQuadratic));
        assert_eq!(
            reduced_forms(&BigInt::from(-20)),
            vec![QuadraticForm::new(1, 0, 5), QuadraticForm::new(2, 2, 3)]
        );
    }

    #[test]
    fn orders_in_small_groups() {
        assert_eq!(QuadraticForm::new(2, 1, 3).class_order(), 3);
        assert_eq!(QuadraticForm::new(2, 2, 3).class_order(), 2);
        assert_eq!(QuadraticForm::new(1, 0, 5).class_order(), 1);
        // D = -56 has class group Z/4
        let orders: Vec<u64> = reduced_forms(&BigInt::from(-56))
            .iter()
            .map(|f| f.class_order())
            .collect();
        assert_eq!(orders.iter().filter(|&&o| o == 4).count(), 2);
    }

    fn disc_strategy() -> impl Strategy<Value = i64> {
        prop_oneof![
            (1i64..400).prop_map(|k| -(4 * k + 3)),
            (1i64..400).prop_map(|k| -4 * k)
        ]
    }

    proptest! {
        #[test]
        fn composition_is_a_group_law(d in disc_strategy(), i in 0usize..64, j in 0usize..64, l in 0usize..64) {
            let d = BigInt::from(d);
            let forms = reduced_forms(&d);
            let f = &forms[i % forms.len()];
            let g = &forms[j % forms.len()];
            let h = &forms[l % forms.len()];
            let id = QuadraticForm::identity(&d);
            prop_assert_eq!(f.compose(&id), f.clone());
            prop_assert_eq!(f.compose(g), g.compose(f));
            prop_assert_eq!(f.compose(g).compose(h), f.compose(&g.compose(h)));
            let fg = f.compose(g);
            prop_assert!(fg.is_reduced() && fg.discriminant() == d);
            let inv = QuadraticForm::new(f.a.clone(), -f.b.clone(), f.c.clone()).reduce();
            prop_assert_eq!(f.compose(&inv), id);
            prop_assert_eq!((forms.len() as u64) % f.class_order(), 0);
        }
    }
}
