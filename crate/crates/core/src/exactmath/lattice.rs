//! Positive definite quadratic forms and exact bounded lattice-point
//! enumeration (Fincke-Pohst on an exact rational LDLᵀ decomposition).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// Symmetric rational matrix defining the form `vᵀ G v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramMatrix {
    entries: Vec<Vec<BigRational>>,
}

impl GramMatrix {
    pub fn new(entries: Vec<Vec<BigRational>>) -> Result<Self> {
        let n = entries.len();
        if entries.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("gram matrix must be square".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if entries[i][j] != entries[j][i] {
                    return Err(Error::Dimension("gram matrix must be symmetric".into()));
                }
            }
        }
        Ok(GramMatrix { entries })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        GramMatrix::new(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&v| BigRational::from_integer(BigInt::from(v)))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<BigRational>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i][j]
    }

    /// `vᵀ G v`.
    pub fn eval(&self, v: &[BigInt]) -> BigRational {
        let mut acc = BigRational::zero();
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                acc += &self.entries[i][j] * BigRational::from_integer(vi * vj);
            }
        }
        acc
    }

    /// Gram matrix of the sublattice spanned by the rows of `basis`:
    /// `B G Bᵀ`.
    pub fn restrict(&self, basis: &IntMatrix) -> GramMatrix {
        let n = self.dim();
        assert_eq!(basis.ncols(), n, "basis dimension mismatch");
        let k = basis.nrows();
        let to_q = |v: &BigInt| BigRational::from_integer(v.clone());
        // bg = B G
        let bg: Vec<Vec<BigRational>> = (0..k)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(BigRational::zero(), |acc, l| {
                            acc + to_q(basis.get(i, l)) * &self.entries[l][j]
                        })
                    })
                    .collect()
            })
            .collect();
        let entries = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        (0..n).fold(BigRational::zero(), |acc, l| {
                            acc + &bg[i][l] * to_q(basis.get(j, l))
                        })
                    })
                    .collect()
            })
            .collect();
        GramMatrix { entries }
    }

    /// Scales every entry by `k`.
    pub fn scaled(&self, k: &BigRational) -> GramMatrix {
        GramMatrix {
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|v| v * k).collect())
                .collect(),
        }
    }

    /// Exact decomposition `vᵀGv = Σ_i d_i (v_i + Σ_{j>i} μ_ij v_j)²`;
    /// fails unless every `d_i > 0`.
    fn decompose(&self) -> Result<Vec<Vec<BigRational>>> {
        let n = self.dim();
        let mut q = self.entries.clone();
        for i in 0..n {
            if !q[i][i].is_positive() {
                return Err(Error::NotPositiveDefinite);
            }
            for j in i + 1..n {
                q[j][i] = q[i][j].clone();
                q[i][j] = &q[i][j] / &q[i][i];
            }
            for k in i + 1..n {
                for l in k..n {
                    let t = &q[k][i] * &q[i][l];
                    q[k][l] -= t;
                }
            }
        }
        Ok(q)
    }

    pub fn is_positive_definite(&self) -> bool {
        self.decompose().is_ok()
    }
}

/// Outcome of a capped enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    /// Points found, sorted lexicographically.
    pub points: Vec<Vec<BigInt>>,
    /// False when the node budget ran out before the search finished.
    pub complete: bool,
}

/// Every integer vector `v` with `vᵀ G v ≤ bound`, sorted lexicographically.
pub fn enumerate_bounded(gram: &GramMatrix, bound: &BigRational) -> Result<Vec<Vec<BigInt>>> {
    Ok(enumerate_bounded_capped(gram, bound, None)?.points)
}

/// As [`enumerate_bounded`], but stops after visiting `cap` search-tree
/// nodes and reports whether the search completed.
pub fn enumerate_bounded_capped(
    gram: &GramMatrix,
    bound: &BigRational,
    cap: Option<u64>,
) -> Result<Enumeration> {
    gram.decompose()?;
    let n = gram.dim();
    // enumerate in an LLL-reduced basis, then map back
    let u = lll_transform(gram)?;
    let reduced = gram.restrict(&u);
    let q = reduced.decompose()?;
    let mut points = Vec::new();
    if n == 0 {
        return Ok(Enumeration {
            points: vec![Vec::new()],
            complete: true,
        });
    }
    if bound.is_negative() {
        return Ok(Enumeration {
            points,
            complete: true,
        });
    }
    let mut state = Search {
        q: &q,
        n,
        x: vec![BigInt::zero(); n],
        visited: 0,
        cap,
        points: &mut points,
    };
    let complete = state.descend(n - 1, bound.clone());
    let mut points: Vec<Vec<BigInt>> = points
        .into_iter()
        .map(|y| {
            (0..n)
                .map(|j| {
                    y.iter()
                        .zip(u.rows())
                        .fold(BigInt::zero(), |acc, (yi, row)| acc + yi * &row[j])
                })
                .collect()
        })
        .collect();
    points.sort();
    Ok(Enumeration { points, complete })
}

/// Unimodular `U` whose rows form an LLL-reduced basis (`δ = 3/4`) for the
/// form `G`; the reduced Gram matrix is `U G Uᵀ`.
pub fn lll_transform(gram: &GramMatrix) -> Result<IntMatrix> {
    gram.decompose()?;
    let n = gram.dim();
    let mut b = IntMatrix::identity(n).into_rows();
    if n <= 1 {
        return Ok(IntMatrix::from_rows(b));
    }
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));
    let ip = |x: &[BigInt], y: &[BigInt]| -> BigRational {
        let mut acc = BigRational::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() {
                    acc += &gram.entries[i][j] * BigRational::from_integer(xi * yj);
                }
            }
        }
        acc
    };
    // Gram-Schmidt data: mu[i][j] and squared lengths bstar[i]
    let gso = |b: &[Vec<BigInt>]| -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
        let mut mu = vec![vec![BigRational::zero(); n]; n];
        let mut bstar: Vec<BigRational> = Vec::with_capacity(n);
        for i in 0..n {
            for j in 0..i {
                let mut v = ip(&b[i], &b[j]);
                for l in 0..j {
                    v -= &mu[j][l] * &mu[i][l] * &bstar[l];
                }
                mu[i][j] = v / &bstar[j];
            }
            let mut v = ip(&b[i], &b[i]);
            for l in 0..i {
                v -= &mu[i][l] * &mu[i][l] * &bstar[l];
            }
            bstar.push(v);
        }
        (mu, bstar)
    };
    let (mut mu, mut bstar) = gso(&b);
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let r = mu[k][j].round().to_integer();
            if r.is_zero() {
                continue;
            }
            let bj = b[j].clone();
            for (x, y) in b[k].iter_mut().zip(&bj) {
                *x -= &r * y;
            }
            let rq = BigRational::from_integer(r);
            for l in 0..j {
                let t = &rq * &mu[j][l];
                mu[k][l] -= t;
            }
            mu[k][j] -= &rq;
        }
        let lovasz = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &bstar[k - 1];
        if bstar[k] >= lovasz {
            k += 1;
        } else {
            b.swap(k, k - 1);
            (mu, bstar) = gso(&b);
            k = (k - 1).max(1);
        }
    }
    Ok(IntMatrix::from_rows(b))
}

struct Search<'a> {
    q: &'a [Vec<BigRational>],
    n: usize,
    x: Vec<BigInt>,
    visited: u64,
    cap: Option<u64>,
    points: &'a mut Vec<Vec<BigInt>>,
}

impl Search<'_> {
    /// Enumerates coordinate `i` given `x[i+1..]`, with `remaining` budget of
    /// the form. Returns false if the node cap was hit.
    fn descend(&mut self, i: usize, remaining: BigRational) -> bool {
        let center: BigRational = -(i + 1..self.n).fold(BigRational::zero(), |acc, j| {
            acc + &self.q[i][j] * BigRational::from_integer(self.x[j].clone())
        });
        let start = center.floor().to_integer();
        // scan down from floor(center), then up from floor(center)+1
        for dir in [-1i32, 1] {
            let mut xi = if dir < 0 {
                start.clone()
            } else {
                &start + BigInt::one()
            };
            loop {
                self.visited += 1;
                if self.cap.is_some_and(|c| self.visited > c) {
                    return false;
                }
                let diff = BigRational::from_integer(xi.clone()) - &center;
                let used = &self.q[i][i] * &diff * &diff;
                if used > remaining {
                    break;
                }
                self.x[i] = xi.clone();
                if i == 0 {
                    self.points.push(self.x.clone());
                } else if !self.descend(i - 1, &remaining - &used) {
                    return false;
                }
                xi += BigInt::from(dir);
            }
        }
        self.x[i] = BigInt::zero();
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn pts(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
        let mut out: Vec<Vec<BigInt>> = v
            .iter()
            .map(|r| r.iter().map(|&c| BigInt::from(c)).collect())
            .collect();
        out.sort();
        out
    }

    #[test]
    fn identity_examples() {
        let g = GramMatrix::from_i64(&[&[1, 0], &[0, 1]]).unwrap();
        assert_eq!(
            enumerate_bounded(&g, &q(1)).unwrap(),
            pts(&[&[0, 0], &[1, 0], &[-1, 0], &[0, 1], &[0, -1]])
        );
        assert_eq!(enumerate_bounded(&g, &q(2)).unwrap().len(), 9);
        let g2 = GramMatrix::from_i64(&[&[2, 0], &[0, 2]]).unwrap();
        assert_eq!(enumerate_bounded(&g2, &q(1)).unwrap(), pts(&[&[0, 0]]));
    }

    #[test]
    fn rejects_indefinite() {
        let g = GramMatrix::from_i64(&[&[1, 2], &[2, 1]]).unwrap();
        assert_eq!(
            enumerate_bounded(&g, &q(1)),
            Err(Error::NotPositiveDefinite)
        );
        assert!(GramMatrix::from_i64(&[&[1, 2], &[0, 1]]).is_err());
    }

    #[test]
    fn lll_shortens_skewed_basis() {
        // basis (1, 1000), (0, 1) under the identity form
        let g = GramMatrix::from_i64(&[&[1_000_001, 1000], &[1000, 1]]).unwrap();
        let u = lll_transform(&g).unwrap();
        assert_eq!(u.determinant().abs(), BigInt::one());
        let r = g.restrict(&u);
        assert!(r.get(0, 0) <= &q(1) && r.get(1, 1) <= &q(1));
        assert_eq!(enumerate_bounded(&g, &q(1)).unwrap().len(), 5);
    }

    #[test]
    fn cap_reports_incomplete() {
        let g = GramMatrix::from_i64(&[&[1, 0], &[0, 1]]).unwrap();
        let e = enumerate_bounded_capped(&g, &q(100), Some(10)).unwrap();
        assert!(!e.complete);
    }

    /// Box oracle: coordinate bounds |v_i| ≤ sqrt(bound · (G⁻¹)_ii), with the
    /// inverse computed by cofactors and the square root rounded up.
    fn box_oracle(g: &GramMatrix, bound: i64) -> Vec<Vec<BigInt>> {
        let n = g.dim();
        let det = det_q(g.entries());
        let radii: Vec<i64> = (0..n)
            .map(|i| {
                let minor: Vec<Vec<BigRational>> = (0..n)
                    .filter(|&r| r != i)
                    .map(|r| {
                        (0..n)
                            .filter(|&c| c != i)
                            .map(|c| g.get(r, c).clone())
                            .collect()
                    })
                    .collect();
                let inv_ii = det_q(&minor) / &det;
                let lim = inv_ii * q(bound);
                let mut r = 0i64;
                while q(r * r) < lim {
                    r += 1;
                }
                r
            })
            .collect();
        let mut out = Vec::new();
        let mut v = vec![0i64; n];
        fn rec(
            i: usize,
            v: &mut Vec<i64>,
            radii: &[i64],
            g: &GramMatrix,
            bound: i64,
            out: &mut Vec<Vec<BigInt>>,
        ) {
            if i == v.len() {
                let b: Vec<BigInt> = v.iter().map(|&c| BigInt::from(c)).collect();
                if g.eval(&b) <= BigRational::from_integer(BigInt::from(bound)) {
                    out.push(b);
                }
                return;
            }
            for c in -radii[i]..=radii[i] {
                v[i] = c;
                rec(i + 1, v, radii, g, bound, out);
            }
        }
        rec(0, &mut v, &radii, g, bound, &mut out);
        out.sort();
        out
    }

    fn det_q(m: &[Vec<BigRational>]) -> BigRational {
        let n = m.len();
        if n == 0 {
            return BigRational::one();
        }
        let mut a = m.to_vec();
        let mut det = BigRational::one();
        for k in 0..n {
            let Some(piv) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return BigRational::zero();
            };
            if piv != k {
                a.swap(piv, k);
                det = -det;
            }
            det *= &a[k][k];
            for i in k + 1..n {
                let f = &a[i][k] / &a[k][k];
                for j in k..n {
                    let t = &f * &a[k][j];
                    a[i][j] -= t;
                }
            }
        }
        det
    }

    fn pd_gram(n: usize) -> impl Strategy<Value = GramMatrix> {
        // G = AᵀA + I for a small integer A is positive definite
        prop::collection::vec(-3i64..=3, n * n).prop_map(move |a| {
            let entries = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let s: i64 = (0..n).map(|k| a[k * n + i] * a[k * n + j]).sum();
                            q(s + i64::from(i == j))
                        })
                        .collect()
                })
                .collect();
            GramMatrix::new(entries).unwrap()
        })
    }

    proptest! {
        #[test]
        fn agrees_with_box_oracle_2d(g in pd_gram(2), bound in 0i64..12) {
            prop_assert_eq!(enumerate_bounded(&g, &q(bound)).unwrap(), box_oracle(&g, bound));
        }

        #[test]
        fn agrees_with_box_oracle_3d(g in pd_gram(3), bound in 0i64..8) {
            prop_assert_eq!(enumerate_bounded(&g, &q(bound)).unwrap(), box_oracle(&g, bound));
        }
    }
}
