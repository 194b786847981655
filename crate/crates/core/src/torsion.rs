//! Roots of unity in `O_K`: their number `m`, a generator `ζ`, the constant
//! `p_max`, and the good-prime test `1 - ζ^i ∉ 𝔭`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Result;
use crate::exactmath::enumerate_bounded;
use crate::exactmath::int::{totient, trial_factor};
use crate::ideals::PrimeIdeal;
use crate::numberfield::NumberField;

/// An element `num / den` of `K` in power-basis coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    pub num: Vec<BigInt>,
    pub den: BigInt,
}

impl FieldElement {
    fn normalized(num: Vec<BigInt>, den: BigInt) -> Self {
        let g = num.iter().fold(den.clone(), |g, c| g.gcd(c));
        if g.is_one() {
            return FieldElement { num, den };
        }
        FieldElement {
            num: num.iter().map(|c| c / &g).collect(),
            den: den / g,
        }
    }

    /// Rational coordinates.
    pub fn coords(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coords().iter().map(|c| c.to_string()).collect()
    }
}

/// Torsion of the unit group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionData {
    /// Number of roots of unity.
    pub m: u64,
    /// Generator of the group of roots of unity.
    pub zeta: FieldElement,
    /// Largest prime dividing some `N(1 - ζ^i)`, `1 ≤ i < m`.
    pub p_max: u64,
    /// All `m` roots of unity, `ζ^0, ζ^1, ...`, over the common denominator.
    powers: Vec<Vec<BigInt>>,
    den: BigInt,
}

impl TorsionData {
    /// `ζ^i` for `i = 0..m`.
    pub fn elements(&self) -> Vec<FieldElement> {
        self.powers
            .iter()
            .map(|v| FieldElement::normalized(v.clone(), self.den.clone()))
            .collect()
    }
}

/// All `k` with `φ(k) ≤ n`, ascending.
fn admissible_orders(n: usize) -> Vec<u64> {
    let n = n as u64;
    // φ(k) ≥ sqrt(k/2)
    (1..=2 * n * n + 2).filter(|&k| totient(k) <= n).collect()
}

/// `m`, `ζ` and `p_max` for the field.
pub fn roots_of_unity(field: &NumberField) -> Result<TorsionData> {
    let n = field.degree();
    let (r1, _) = field.signature();
    let (powers, den) = if r1 > 0 {
        (vec![field.integer(1), field.integer(-1)], BigInt::one())
    } else {
        enumerate_torsion(field)?
    };
    let m = powers.len() as u64;
    debug_assert!(m.is_multiple_of(2) && (n as u64).is_multiple_of(totient(m)));
    let zeta = FieldElement::normalized(powers[1].clone(), den.clone());
    let mut t = TorsionData {
        m,
        zeta,
        p_max: 2,
        powers,
        den,
    };
    t.p_max = p_max(field, &t);
    Ok(t)
}

/// Roots of unity as numerators over `d = index_denominator`, ordered as
/// powers of the chosen generator.
fn enumerate_torsion(field: &NumberField) -> Result<(Vec<Vec<BigInt>>, BigInt)> {
    let n = field.degree();
    let d = field.index_denominator().clone();
    let t2 = field.t2_gram()?;
    let d2 = BigRational::from_integer(&d * &d);
    let bound =
        (BigRational::from_integer(BigInt::from(n)) + BigRational::new(1.into(), 4.into())) * d2;
    let points = enumerate_bounded(&t2.gram, &bound)?;
    let roots = field.embeddings();
    let df = d.to_f64().unwrap_or(f64::MAX);
    let orders = admissible_orders(n);
    let one = field.integer(d.clone());

    let mut found: Vec<(Vec<BigInt>, u64)> = Vec::new();
    for x in points {
        if x.iter().all(|c| c.is_zero()) {
            continue;
        }
        let near_unit = field
            .embed(&x, &roots)
            .iter()
            .all(|z| (z.norm() / df - 1.0).abs() < 1e-9);
        if !near_unit {
            continue;
        }
        // exact: x^k = d^k
        let mut pow = x.clone();
        let mut dk = d.clone();
        let mut k = 1u64;
        let mut order = None;
        for &target in &orders {
            while k < target {
                pow = field.mul(&pow, &x);
                dk *= &d;
                k += 1;
            }
            if pow == field.integer(dk.clone()) {
                order = Some(target);
                break;
            }
        }
        if let Some(o) = order {
            found.push((x, o));
        }
    }
    let m = found.len() as u64;
    // lexicographically smallest element of full order
    let zeta = found
        .iter()
        .filter(|(_, o)| *o == m)
        .map(|(x, _)| x.clone())
        .min()
        .expect("roots of unity form a cyclic group");
    let mut powers = vec![one.clone()];
    let mut cur = zeta.clone();
    for _ in 1..m {
        powers.push(cur.clone());
        // ζ^{i+1} = cur·ζ / d, exact
        cur = field.mul(&cur, &zeta).iter().map(|c| c / &d).collect();
    }
    debug_assert_eq!(cur, one);
    Ok((powers, d))
}

/// `N(1 - ζ^i)` for `i = 1..m`, exactly.
pub fn one_minus_zeta_norms(field: &NumberField, t: &TorsionData) -> Vec<BigInt> {
    let n = field.degree();
    let dn = num_traits::pow(t.den.clone(), n);
    t.powers[1..]
        .iter()
        .map(|y| {
            let v = one_minus(field, &t.den, y);
            let nv = field.norm(&v);
            debug_assert!((&nv % &dn).is_zero());
            nv / &dn
        })
        .collect()
}

fn one_minus(field: &NumberField, den: &BigInt, y: &[BigInt]) -> Vec<BigInt> {
    field
        .integer(den.clone())
        .iter()
        .zip(y)
        .map(|(a, b)| a - b)
        .collect()
}

/// Largest rational prime dividing some `N(1 - ζ^i)`.
pub fn p_max(field: &NumberField, t: &TorsionData) -> u64 {
    let mut best = 2;
    for v in one_minus_zeta_norms(field, t) {
        let tf = trial_factor(&v.abs(), 1_000_000);
        for (p, _) in tf.small {
            best = best.max(p);
        }
        if let Some(c) = tf.cofactor.to_u64() {
            if c > 1 {
                best = best.max(c);
            }
        }
    }
    best
}

/// True iff `1 - ζ^i ∉ 𝔭` for all `1 ≤ i < m`.
pub fn is_good_prime(field: &NumberField, t: &TorsionData, prime: &PrimeIdeal) -> bool {
    assert!(
        !(&t.den % BigInt::from(prime.p())).is_zero(),
        "denominator of ζ is not a unit at {}",
        prime.p()
    );
    t.powers[1..]
        .iter()
        .all(|y| !prime.ideal.contains(&one_minus(field, &t.den, y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::int::primes_up_to;
    use crate::ideals::primes_above;
    use std::sync::Arc;

    fn field(s: &str) -> Arc<NumberField> {
        Arc::new(NumberField::parse(s).unwrap())
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn counts() {
        for (poly, m) in [
            ("x^2-2", 2),
            ("x^2+1", 4),
            ("x^2+3", 6),
            ("x^2+5", 2),
            ("x^2+23", 2),
            ("x^4+x^3+x^2+x+1", 10),
            ("x^4+1", 8),
            ("x^2+27", 6),
            ("x^8-3", 2),
        ] {
            let k = field(poly);
            let t = roots_of_unity(&k).unwrap();
            assert_eq!(t.m, m, "{poly}");
            assert_eq!(t.elements().len() as u64, m);
        }
        let q = NumberField::rationals();
        let t = roots_of_unity(&q).unwrap();
        assert_eq!((t.m, t.zeta.num.clone(), t.p_max), (2, ints(&[-1]), 2));
    }

    #[test]
    fn generators_and_p_max() {
        let t = roots_of_unity(&field("x^2+1")).unwrap();
        assert_eq!(t.zeta.num, ints(&[0, -1]));
        assert_eq!(t.p_max, 2);
        let k = field("x^2+3");
        let t = roots_of_unity(&k).unwrap();
        assert_eq!(t.zeta.num, ints(&[0, 1]));
        assert_eq!(t.p_max, 3);
        assert_eq!(one_minus_zeta_norms(&k, &t), ints(&[1, 3, 4, 3, 1]));
        assert_eq!(roots_of_unity(&field("x^2+5")).unwrap().p_max, 2);
        assert_eq!(roots_of_unity(&field("x^4+x^3+x^2+x+1")).unwrap().p_max, 5);
        // non-maximal order: ζ₃ has denominator 3 in ℤ[α]
        let t = roots_of_unity(&field("x^2+27")).unwrap();
        assert_eq!(t.zeta.den, BigInt::from(3));
        assert_eq!(t.p_max, 3);
    }

    #[test]
    fn group_closure() {
        for poly in ["x^2+1", "x^2+3", "x^4+x^3+x^2+x+1", "x^2+27"] {
            let k = field(poly);
            let t = roots_of_unity(&k).unwrap();
            let els = t.elements();
            let d = &t.den;
            for a in &t.powers {
                for b in &t.powers {
                    let prod: Vec<BigInt> = k.mul(a, b).iter().map(|c| c / d).collect();
                    assert!(t.powers.contains(&prod));
                }
            }
            assert_eq!(els.len() as u64, t.m);
        }
    }

    #[test]
    fn good_primes() {
        let gauss = field("x^2+1");
        let t = roots_of_unity(&gauss).unwrap();
        for pr in primes_above(&gauss, 5).unwrap() {
            assert!(is_good_prime(&gauss, &t, &pr));
        }
        let p2 = &primes_above(&gauss, 2).unwrap()[0];
        assert!(!is_good_prime(&gauss, &t, p2));
        let q = Arc::new(NumberField::rationals());
        let tq = roots_of_unity(&q).unwrap();
        assert!(is_good_prime(&q, &tq, &primes_above(&q, 3).unwrap()[0]));
        assert!(!is_good_prime(&q, &tq, &primes_above(&q, 2).unwrap()[0]));
    }

    #[test]
    fn good_prime_consequences() {
        for poly in ["x^2+1", "x^2+3", "x^2+5", "x^4+x^3+x^2+x+1", "x^3-2"] {
            let k = field(poly);
            let t = roots_of_unity(&k).unwrap();
            for p in primes_up_to(150) {
                if !k.index_safe(p).unwrap() {
                    continue;
                }
                for pr in primes_above(&k, p).unwrap() {
                    let good = is_good_prime(&k, &t, &pr);
                    if p > t.p_max {
                        assert!(good, "{poly} at {p}");
                    }
                    if good {
                        let nm1: BigInt = pr.norm() - 1;
                        assert!((nm1 % BigInt::from(t.m)).is_zero());
                    }
                }
            }
        }
    }
}
