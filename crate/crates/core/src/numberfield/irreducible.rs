//! Exact irreducibility certification over ℚ for monic integer polynomials.
//!
//! Stage one intersects the factor-degree patterns of `f mod p` over the first
//! 25 usable primes: a reduction that is irreducible, or patterns whose
//! possible proper factor degrees have empty intersection, certify
//! irreducibility. Stage two is Kronecker's interpolation search for a monic
//! factor of each remaining candidate degree.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactmath::int::{is_prime, trial_factor};
use crate::exactmath::{discriminant, factor_mod_p_seeded, IntPoly, ModPoly};

/// Number of primes inspected by the degree-pattern stage.
pub const PATTERN_PRIMES: usize = 25;

/// Maximum number of interpolation candidates tried by the Kronecker stage.
pub const KRONECKER_BUDGET: u64 = 2_000_000;

/// Outcome of a certification attempt.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    /// A proper monic factor over ℤ.
    Reducible(IntPoly),
}

/// Decides irreducibility of a monic `f` exactly, or errors when the
/// Kronecker budget runs out.
pub fn certify_irreducible(f: &IntPoly, seed: u64) -> Result<Irreducibility> {
    assert!(f.is_monic(), "certification expects a monic polynomial");
    let n = f.degree();
    if n <= 1 {
        return Ok(Irreducibility::Irreducible);
    }
    let g = f.gcd_over_q(&f.derivative());
    if g.degree() > 0 {
        return Ok(Irreducibility::Reducible(g));
    }
    if f.coeff(0).is_zero() {
        return Ok(Irreducibility::Reducible(IntPoly::x()));
    }
    let disc = discriminant(f)?;

    let mut candidate_degrees: BTreeSet<usize> = (1..n).collect();
    let mut used = 0;
    let mut p = 1u64;
    while used < PATTERN_PRIMES && !candidate_degrees.is_empty() {
        p += 1;
        if !is_prime(p) || (&disc % BigInt::from(p)).is_zero() {
            continue;
        }
        used += 1;
        let factors = factor_mod_p_seeded(&ModPoly::from_int_poly(f, p), seed)?;
        let degrees: Vec<usize> = factors
            .iter()
            .flat_map(|(g, e)| std::iter::repeat_n(g.degree(), *e as usize))
            .collect();
        let sums = subset_sums(&degrees, n);
        candidate_degrees.retain(|d| sums.contains(d));
    }
    // a factor of degree d comes with a cofactor of degree n - d
    let search: Vec<usize> = candidate_degrees
        .iter()
        .copied()
        .filter(|&d| d <= n / 2)
        .collect();
    let mut budget = KRONECKER_BUDGET;
    for d in search {
        if let Some(factor) = kronecker_factor(f, d, &mut budget)? {
            return Ok(Irreducibility::Reducible(factor));
        }
    }
    Ok(Irreducibility::Irreducible)
}

fn subset_sums(degrees: &[usize], n: usize) -> BTreeSet<usize> {
    let mut reachable = vec![false; n + 1];
    reachable[0] = true;
    for &d in degrees {
        for s in (d..=n).rev() {
            if reachable[s - d] {
                reachable[s] = true;
            }
        }
    }
    (1..n).filter(|&s| reachable[s]).collect()
}

fn signed_divisors(v: &BigInt) -> Option<Vec<BigInt>> {
    let tf = trial_factor(v, 1_000_000);
    if !tf.cofactor.is_one() {
        match tf.cofactor.to_u64() {
            Some(c) if is_prime(c) => {}
            _ => return None,
        }
    }
    let mut primes: Vec<(BigInt, u32)> = tf
        .small
        .iter()
        .map(|&(p, e)| (BigInt::from(p), e))
        .collect();
    if !tf.cofactor.is_one() {
        primes.push((tf.cofactor.clone(), 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    let mut out: Vec<BigInt> = divs
        .iter()
        .cloned()
        .chain(divs.iter().map(|d| -d))
        .collect();
    out.sort();
    Some(out)
}

/// Searches for a monic integer factor of degree `d` by interpolation
/// through `d + 1` points.
fn kronecker_factor(f: &IntPoly, d: usize, budget: &mut u64) -> Result<Option<IntPoly>> {
    // pick evaluation points with the smallest nonzero |f(k)|
    let n = f.degree() as i64;
    let mut pts: Vec<(BigInt, BigInt)> = Vec::new();
    for k in -(n + 6)..=(n + 6) {
        let kk = BigInt::from(k);
        let v = f.eval(&kk);
        if v.is_zero() {
            return Ok(Some(IntPoly::new(vec![-kk, BigInt::one()])));
        }
        pts.push((kk, v));
    }
    pts.sort_by(|a, b| a.1.abs().cmp(&b.1.abs()).then(a.0.cmp(&b.0)));
    pts.truncate(d + 1);

    let mut choices = Vec::with_capacity(pts.len());
    for (_, v) in &pts {
        match signed_divisors(v) {
            Some(ds) => choices.push(ds),
            None => return Err(Error::IrreducibilityUncertified),
        }
    }
    let xs: Vec<BigRational> = pts
        .iter()
        .map(|(k, _)| BigRational::from_integer(k.clone()))
        .collect();
    let mut idx = vec![0usize; choices.len()];
    loop {
        if *budget == 0 {
            return Err(Error::IrreducibilityUncertified);
        }
        *budget -= 1;
        let ys: Vec<BigRational> = idx
            .iter()
            .zip(&choices)
            .map(|(&i, c)| BigRational::from_integer(c[i].clone()))
            .collect();
        if let Some(g) = interpolate_monic(&xs, &ys, d) {
            if f.div_exact(&g).is_some() {
                return Ok(Some(g));
            }
        }
        // odometer increment
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(None);
            }
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Newton interpolation; returns the polynomial if it is a monic integer
/// polynomial of degree exactly `d`.
fn interpolate_monic(xs: &[BigRational], ys: &[BigRational], d: usize) -> Option<IntPoly> {
    let m = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..m {
        for i in (j..m).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    if !coef[m - 1].is_one() {
        return None;
    }
    // expand Newton form
    let mut poly: Vec<BigRational> = vec![coef[m - 1].clone()];
    for i in (0..m - 1).rev() {
        let mut next = vec![BigRational::zero(); poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * &xs[i];
        }
        next[0] += &coef[i];
        poly = next;
    }
    if poly.iter().any(|c| !c.denom().is_one()) {
        return None;
    }
    let g = IntPoly::new(poly.into_iter().map(|c| c.to_integer()).collect());
    (g.degree() == d && g.is_monic()).then_some(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::modpoly::DEFAULT_SEED;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    fn certify(c: &[i64]) -> Irreducibility {
        certify_irreducible(&p(c), DEFAULT_SEED).unwrap()
    }

    #[test]
    fn irreducible_examples() {
        assert_eq!(certify(&[1, 0, 1]), Irreducibility::Irreducible);
        assert_eq!(
            certify(&[-3, 0, 0, 0, 0, 0, 0, 0, 1]),
            Irreducibility::Irreducible
        );
        assert_eq!(
            certify(&[-48, 0, 0, 0, 0, 0, 0, 0, 1]),
            Irreducibility::Irreducible
        );
        assert_eq!(certify(&[1, 1, 1, 1, 1]), Irreducibility::Irreducible);
        // reducible mod every prime, irreducible over ℚ
        assert_eq!(certify(&[1, 0, 0, 0, 1]), Irreducibility::Irreducible);
        assert_eq!(certify(&[1, 0, -10, 0, 1]), Irreducibility::Irreducible);
    }

    #[test]
    fn reducible_examples_give_witnesses() {
        let f = p(&[-1, 0, 1]);
        let Irreducibility::Reducible(g) = certify(&[-1, 0, 1]) else {
            panic!("x^2-1 is reducible")
        };
        assert!(f.div_exact(&g).is_some() && g.degree() == 1);
        // (x^2+1)(x^2+2): no linear factor, found by interpolation
        let f = &p(&[1, 0, 1]) * &p(&[2, 0, 1]);
        let Irreducibility::Reducible(g) = certify_irreducible(&f, DEFAULT_SEED).unwrap() else {
            panic!("product is reducible")
        };
        assert_eq!(g.degree(), 2);
        assert!(f.div_exact(&g).is_some());
        // (x^2 - 2)(x^2 - 3)
        let f = &p(&[-2, 0, 1]) * &p(&[-3, 0, 1]);
        assert!(matches!(
            certify_irreducible(&f, DEFAULT_SEED).unwrap(),
            Irreducibility::Reducible(_)
        ));
    }

    #[test]
    fn subset_sum_patterns() {
        assert_eq!(subset_sums(&[2, 2], 4), [2].into_iter().collect());
        assert!(subset_sums(&[4], 4).is_empty());
        assert_eq!(subset_sums(&[1, 3], 4), [1, 3].into_iter().collect());
    }
}
