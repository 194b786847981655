//! Brute-force references that share no code with the library.
#![allow(dead_code)]

/// Polynomials over 𝔽_p, lowest degree first, no trailing zeros.
type Poly = Vec<u64>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn rem(a: &Poly, m: &Poly, p: u64) -> Poly {
    let mut a = a.clone();
    let inv = pow_mod(*m.last().unwrap(), p - 2, p);
    while a.len() >= m.len() {
        let c = a.last().unwrap() * inv % p;
        let shift = a.len() - m.len();
        for (i, &mi) in m.iter().enumerate() {
            a[shift + i] = (a[shift + i] + p - c * mi % p) % p;
        }
        a = trim(a);
    }
    a
}

fn mul_mod(a: &Poly, b: &Poly, m: &Poly, p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            c[i + j] = (c[i + j] + x * y) % p;
        }
    }
    rem(&trim(c), m, p)
}

fn pow_poly(base: &Poly, mut e: u64, m: &Poly, p: u64) -> Poly {
    let mut r = vec![1];
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(&r, &b, m, p);
        }
        b = mul_mod(&b, &b, m, p);
        e >>= 1;
    }
    r
}

fn gcd(a: &Poly, b: &Poly, p: u64) -> Poly {
    let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    let inv = pow_mod(*a.last().unwrap(), p - 2, p);
    a.iter().map(|c| c * inv % p).collect()
}

fn div_exact(a: &Poly, b: &Poly, p: u64) -> Poly {
    let mut a = a.clone();
    let inv = pow_mod(*b.last().unwrap(), p - 2, p);
    let mut q = vec![0u64; a.len() + 1 - b.len()];
    while a.len() >= b.len() {
        let c = a.last().unwrap() * inv % p;
        let shift = a.len() - b.len();
        q[shift] = c;
        for (i, &bi) in b.iter().enumerate() {
            a[shift + i] = (a[shift + i] + p - c * bi % p) % p;
        }
        a = trim(a);
    }
    q
}

/// Degrees of the irreducible factors of a monic `f` mod `p`, which must be
/// squarefree mod `p`. Coefficients are given as signed integers.
pub fn factor_degrees(f: &[i64], p: u64) -> Vec<usize> {
    let mut f: Poly = trim(f.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect());
    let x: Poly = vec![0, 1];
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 0;
    while f.len() > 1 {
        d += 1;
        if 2 * d > f.len() - 1 {
            out.push(f.len() - 1);
            break;
        }
        h = pow_poly(&h, p, &f, p);
        let mut hx = h.clone();
        hx.resize(hx.len().max(2), 0);
        hx[1] = (hx[1] + p - 1) % p;
        let g = gcd(&f, &trim(hx), p);
        let k = (g.len() - 1) / d;
        out.extend(std::iter::repeat_n(d, k));
        if g.len() > 1 {
            f = div_exact(&f, &g, p);
            h = rem(&h, &f, p);
        }
    }
    out.sort_unstable();
    out
}

pub fn primes(bound: u64) -> Vec<u64> {
    (2..=bound)
        .filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0))
        .collect()
}

#[test]
fn oracle_sanity() {
    // x^2 + 1 splits mod 5, stays inert mod 3
    assert_eq!(factor_degrees(&[1, 0, 1], 5), vec![1, 1]);
    assert_eq!(factor_degrees(&[1, 0, 1], 3), vec![2]);
    // x^3 - 2 mod 31 splits completely, mod 7 is irreducible
    assert_eq!(factor_degrees(&[-2, 0, 0, 1], 31), vec![1, 1, 1]);
    assert_eq!(factor_degrees(&[-2, 0, 0, 1], 7), vec![3]);
    assert_eq!(primes(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
}
