//! Complex embeddings and the T2 form `Σ_σ |σ(x)|²`.
//!
//! T2 is rational only in special cases. When `r2 = 0` it is the trace form
//! and exact; for imaginary quadratic fields it is `2·N(x)`, also exact.
//! Otherwise a rational matrix `Q ⪯ T2` is built from floating-point roots,
//! so enumerating `Q(v) ≤ B` returns a superset of `T2(v) ≤ B`; callers
//! certify every candidate exactly.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{FromPrimitive, ToPrimitive, Zero};

use super::NumberField;
use crate::error::{Error, Result};
use crate::exactmath::GramMatrix;

/// Gram matrix of T2 on the power basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct T2Gram {
    pub gram: GramMatrix,
    /// True when `gram` equals T2; false when it is a lower approximation.
    pub exact: bool,
}

const ROOT_ITERATIONS: usize = 2000;

/// Complex roots of the monic `f` (Aberth iteration, then Newton polish),
/// real roots first in increasing order, then conjugate pairs.
pub fn complex_roots(coeffs: &[BigInt]) -> Vec<Complex64> {
    let c: Vec<f64> = coeffs
        .iter()
        .map(|v| v.to_f64().unwrap_or(f64::MAX))
        .collect();
    let n = c.len() - 1;
    let eval = |z: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(c[n], 0.0);
        let mut dp = Complex64::zero();
        for k in (0..n).rev() {
            dp = dp * z + p;
            p = p * z + c[k];
        }
        (p, dp)
    };
    let radius = 1.0 + c[..n].iter().map(|v| v.abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64;
            Complex64::from_polar(radius.min(2.0).max(0.5) * 0.9, t + 0.4)
        })
        .collect();
    for _ in 0..ROOT_ITERATIONS {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            z[i] -= w;
            moved = moved.max(w.norm() / (1.0 + z[i].norm()));
        }
        if moved < 1e-16 {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = eval(*zi);
            if dp.norm() > 0.0 {
                *zi -= p / dp;
            }
        }
    }
    let scale = 1e-9 * (1.0 + radius);
    let mut real: Vec<f64> = z
        .iter()
        .filter(|r| r.im.abs() < scale)
        .map(|r| r.re)
        .collect();
    real.sort_by(|a, b| a.total_cmp(b));
    let mut upper: Vec<Complex64> = z.iter().filter(|r| r.im >= scale).copied().collect();
    upper.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let mut out: Vec<Complex64> = real.into_iter().map(|r| Complex64::new(r, 0.0)).collect();
    for u in upper {
        out.push(u);
        out.push(u.conj());
    }
    out
}

impl NumberField {
    /// All `n` complex embeddings of `α`.
    pub fn embeddings(&self) -> Vec<Complex64> {
        let roots = complex_roots(self.poly().coeffs());
        debug_assert_eq!(roots.len(), self.degree());
        roots
    }

    /// `σ(x)` for every embedding.
    pub fn embed(&self, x: &[BigInt], roots: &[Complex64]) -> Vec<Complex64> {
        roots
            .iter()
            .map(|r| {
                x.iter().rev().fold(Complex64::zero(), |acc, c| {
                    acc * r + c.to_f64().unwrap_or(f64::MAX)
                })
            })
            .collect()
    }

    /// T2 on the power basis, exact where possible.
    pub fn t2_gram(&self) -> Result<T2Gram> {
        let n = self.degree();
        let q = |v: BigInt| BigRational::from_integer(v);
        if self.signature().1 == 0 {
            let s = self.power_sums(2 * n);
            let entries = (0..n)
                .map(|i| (0..n).map(|j| q(s[i + j].clone())).collect())
                .collect();
            return Ok(T2Gram {
                gram: GramMatrix::new(entries)?,
                exact: true,
            });
        }
        if self.is_imaginary_quadratic() {
            // x² + b x + c: T2(u + vα) = 2(u² - b u v + c v²)
            let b = self.poly().coeff(1);
            let c = self.poly().coeff(0);
            let entries = vec![
                vec![q(BigInt::from(2)), q(-b.clone())],
                vec![q(-b), q(BigInt::from(2) * c)],
            ];
            return Ok(T2Gram {
                gram: GramMatrix::new(entries)?,
                exact: true,
            });
        }
        let roots = self.embeddings();
        let mut g = vec![vec![0.0f64; n]; n];
        for r in &roots {
            let pows: Vec<Complex64> = (0..n).map(|i| r.powi(i as i32)).collect();
            for i in 0..n {
                for j in 0..n {
                    g[i][j] += (pows[i] * pows[j].conj()).re;
                }
            }
        }
        let maxabs = g.iter().flatten().fold(1.0f64, |a, v| a.max(v.abs()));
        let delta = n as f64 * 1e-9 * maxabs;
        let mut entries = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            for j in i..n {
                let mut v = 0.5 * (g[i][j] + g[j][i]);
                if i == j {
                    v -= delta;
                }
                // snap to a dyadic grid to keep denominators small
                let snapped = (v * 2f64.powi(32)).floor() / 2f64.powi(32);
                let r = BigRational::from_f64(snapped).ok_or(Error::NotPositiveDefinite)?;
                entries[i][j] = r.clone();
                entries[j][i] = r;
            }
        }
        let gram = GramMatrix::new(entries)?;
        if !gram.is_positive_definite() {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(T2Gram { gram, exact: false })
    }
}
