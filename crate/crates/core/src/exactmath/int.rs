//! Small-integer number theory helpers: primality, prime lists, trial
//! factorization of big integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// All primes `p <= bound`, ascending.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(k, &is_p)| is_p.then_some(k as u64))
        .collect()
}

/// Modular inverse of `a` mod `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (g, x, _) = ext_gcd_i128(a as i128 % m as i128, m as i128);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m as i128) as u64)
}

fn ext_gcd_i128(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd_i128(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// Extended gcd over big integers: returns `(g, x, y)` with `a x + b y = g >= 0`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Result of trial-dividing a nonzero integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialFactorization {
    /// Prime factors found by trial division, with exponents, ascending.
    pub small: Vec<(u64, u32)>,
    /// Remaining cofactor (1 when fully factored); all its prime factors
    /// exceed the trial limit.
    pub cofactor: BigInt,
}

/// Trial division of `|n|` by every prime up to `limit`.
pub fn trial_factor(n: &BigInt, limit: u64) -> TrialFactorization {
    let mut rest = n.abs();
    let mut small = Vec::new();
    if rest.is_zero() {
        return TrialFactorization {
            small,
            cofactor: rest,
        };
    }
    for p in primes_up_to(limit) {
        let bp = BigInt::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            e += 1;
        }
        if e > 0 {
            small.push((p, e));
        }
    }
    // a cofactor below limit^2 is prime (or 1)
    if rest > BigInt::one() {
        if let Some(r) = rest.to_u64() {
            if r <= limit || is_prime(r) {
                small.push((r, 1));
                small.sort();
                rest = BigInt::one();
            }
        }
    }
    TrialFactorization {
        small,
        cofactor: rest,
    }
}

/// Distinct prime divisors of `|n|` (nonzero), as far as they can be found
/// by trial division to `10^6` plus a square/primality test on the cofactor.
pub fn prime_divisors(n: &BigInt) -> Vec<BigInt> {
    let tf = trial_factor(n, 1_000_000);
    let mut out: Vec<BigInt> = tf.small.iter().map(|&(p, _)| BigInt::from(p)).collect();
    if tf.cofactor > BigInt::one() {
        let s = tf.cofactor.sqrt();
        if &s * &s == tf.cofactor {
            out.push(s);
        } else {
            out.push(tf.cofactor);
        }
    }
    out
}

/// Euler's totient of a small integer.
pub fn totient(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Divisors of `n >= 1`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_matches_sieve() {
        let sieve = primes_up_to(5000);
        let direct: Vec<u64> = (0..=5000).filter(|&n| is_prime(n)).collect();
        assert_eq!(sieve, direct);
        assert!(is_prime(18446744073709551557));
        assert!(!is_prime(3215031751));
    }

    #[test]
    fn trial_factorization() {
        let tf = trial_factor(&BigInt::from(-720), 100);
        assert_eq!(tf.small, vec![(2, 4), (3, 2), (5, 1)]);
        assert_eq!(tf.cofactor, BigInt::one());
        let big = BigInt::from(1_000_003u64) * BigInt::from(1_000_033u64);
        let tf = trial_factor(&(BigInt::from(12) * &big), 1000);
        assert_eq!(tf.small, vec![(2, 2), (3, 1)]);
        assert_eq!(tf.cofactor, big);
    }

    #[test]
    fn small_helpers() {
        assert_eq!(totient(12), 4);
        assert_eq!(totient(10), 4);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(inv_mod(3, 7), Some(5));
        assert_eq!(inv_mod(2, 4), None);
    }
}
