//! Arithmetic in the equation order `ℤ[α]`, elements as power-basis
//! coordinate vectors of length `n`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::NumberField;
use crate::exactmath::{IntMatrix, IntPoly};

impl NumberField {
    /// `α^i` as a coordinate vector.
    pub fn basis_vector(&self, i: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.degree()];
        v[i] = BigInt::one();
        v
    }

    /// The integer `c` as a coordinate vector.
    pub fn integer(&self, c: impl Into<BigInt>) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.degree()];
        v[0] = c.into();
        v
    }

    fn to_poly(&self, x: &[BigInt]) -> IntPoly {
        IntPoly::new(x.to_vec())
    }

    fn reduce_poly(&self, p: &IntPoly) -> Vec<BigInt> {
        let n = self.degree();
        let r = p.rem_monic(self.poly());
        (0..n).map(|i| r.coeff(i)).collect()
    }

    pub fn mul(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        self.reduce_poly(&(&self.to_poly(x) * &self.to_poly(y)))
    }

    pub fn pow(&self, x: &[BigInt], mut e: u64) -> Vec<BigInt> {
        let mut base = x.to_vec();
        let mut acc = self.integer(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Rows `x·α^j` for `j = 0..n`.
    pub fn mult_matrix(&self, x: &[BigInt]) -> IntMatrix {
        let n = self.degree();
        let mut rows = Vec::with_capacity(n);
        let mut cur = x.to_vec();
        let alpha = if n > 1 {
            self.basis_vector(1)
        } else {
            Vec::new()
        };
        for j in 0..n {
            rows.push(cur.clone());
            if j + 1 < n {
                cur = self.mul(&cur, &alpha);
            }
        }
        IntMatrix::from_rows(rows)
    }

    /// `N_{K/ℚ}(x)`, the determinant of multiplication by `x`.
    pub fn norm(&self, x: &[BigInt]) -> BigInt {
        self.mult_matrix(x).determinant()
    }

    /// `Tr(α^k)` for `k = 0..count`, by Newton's identities.
    pub fn power_sums(&self, count: usize) -> Vec<BigInt> {
        let n = self.degree();
        let c = self.poly().coeffs();
        let mut s: Vec<BigInt> = Vec::with_capacity(count);
        for k in 0..count {
            if k == 0 {
                s.push(BigInt::from(n));
                continue;
            }
            let mut acc = BigInt::zero();
            for i in 1..=k.min(n) {
                let a = &c[n - i];
                if i == k {
                    acc += BigInt::from(k) * a;
                } else {
                    acc += a * &s[k - i];
                }
            }
            s.push(-acc);
        }
        s
    }
}
