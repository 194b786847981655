//! Integer matrices: Hermite normal form, determinants, exact row-span
//! membership.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense matrix of big integers, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: Vec<Vec<BigInt>>,
    cols: usize,
}

impl IntMatrix {
    /// Builds a matrix from rows. Panics if the rows have different lengths.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix { rows, cols }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        IntMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows: vec![vec![BigInt::zero(); cols]; rows],
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = BigInt::one();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn into_rows(self) -> Vec<Vec<BigInt>> {
        self.rows
    }

    /// Drops all-zero rows.
    pub fn nonzero_rows(&self) -> IntMatrix {
        IntMatrix {
            rows: self
                .rows
                .iter()
                .filter(|r| r.iter().any(|v| !v.is_zero()))
                .cloned()
                .collect(),
            cols: self.cols,
        }
    }

    /// Stacks `other` below `self`.
    pub fn stack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols, "column mismatch");
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        IntMatrix {
            rows,
            cols: self.cols,
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.nrows(), "dimension mismatch");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                (0..other.cols)
                    .map(|j| {
                        r.iter()
                            .zip(&other.rows)
                            .fold(BigInt::zero(), |acc, (a, orow)| acc + a * &orow[j])
                    })
                    .collect()
            })
            .collect();
        IntMatrix {
            rows,
            cols: other.cols,
        }
    }

    /// Fraction-free (Bareiss) determinant of a square matrix.
    pub fn determinant(&self) -> BigInt {
        let n = self.nrows();
        assert_eq!(n, self.cols, "determinant of non-square matrix");
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.rows.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    /// Row Hermite normal form: upper triangular, positive pivots, entries
    /// above each pivot reduced into `[0, pivot)`, zero rows at the bottom.
    /// The row count is preserved.
    pub fn hermite_form(&self) -> IntMatrix {
        self.hermite_with_transform(false).0
    }

    /// Hermite form `H` together with a unimodular `U` such that `U * self = H`.
    pub fn hermite_form_with_transform(&self) -> (IntMatrix, IntMatrix) {
        let (h, u) = self.hermite_with_transform(true);
        (h, u.expect("transform requested"))
    }

    fn hermite_with_transform(&self, track: bool) -> (IntMatrix, Option<IntMatrix>) {
        let m = self.nrows();
        let n = self.cols;
        let mut h = self.rows.clone();
        let mut u = track.then(|| IntMatrix::identity(m).rows);
        let mut r = 0;
        for c in 0..n {
            if r == m {
                break;
            }
            loop {
                // smallest nonzero entry at or below row r
                let best = (r..m)
                    .filter(|&i| !h[i][c].is_zero())
                    .min_by(|&i, &j| h[i][c].abs().cmp(&h[j][c].abs()));
                let Some(best) = best else { break };
                h.swap(r, best);
                if let Some(u) = u.as_mut() {
                    u.swap(r, best);
                }
                let mut done = true;
                for i in r + 1..m {
                    if h[i][c].is_zero() {
                        continue;
                    }
                    let q = h[i][c].div_floor(&h[r][c]);
                    row_sub(&mut h, i, r, &q);
                    if let Some(u) = u.as_mut() {
                        row_sub(u, i, r, &q);
                    }
                    if !h[i][c].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if h[r][c].is_zero() {
                continue;
            }
            if h[r][c].is_negative() {
                h[r].iter_mut().for_each(|v| *v = -&*v);
                if let Some(u) = u.as_mut() {
                    u[r].iter_mut().for_each(|v| *v = -&*v);
                }
            }
            for i in 0..r {
                let q = h[i][c].div_floor(&h[r][c]);
                if !q.is_zero() {
                    row_sub(&mut h, i, r, &q);
                    if let Some(u) = u.as_mut() {
                        row_sub(u, i, r, &q);
                    }
                }
            }
            r += 1;
        }
        (
            IntMatrix { rows: h, cols: n },
            u.map(|rows| IntMatrix { rows, cols: m }),
        )
    }

    /// Pivot positions `(row, col)` of a matrix already in Hermite form.
    pub fn pivots(&self) -> Vec<(usize, usize)> {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.iter().position(|v| !v.is_zero()).map(|c| (i, c)))
            .collect()
    }

    /// For a matrix in Hermite form: coefficients `q` with `q · rows = target`,
    /// or `None` when `target` is not in the row span.
    pub fn hermite_coordinates(&self, target: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(target.len(), self.cols);
        let mut t = target.to_vec();
        let mut q = vec![BigInt::zero(); self.nrows()];
        for (i, c) in self.pivots() {
            if t[c].is_zero() {
                continue;
            }
            let (k, rem) = t[c].div_rem(&self.rows[i][c]);
            if !rem.is_zero() {
                return None;
            }
            for (tv, hv) in t.iter_mut().zip(&self.rows[i]) {
                *tv -= &k * hv;
            }
            q[i] = k;
        }
        t.iter().all(|v| v.is_zero()).then_some(q)
    }

    /// For a matrix in Hermite form: the canonical representative of
    /// `target` modulo the row lattice (each pivot coordinate reduced into
    /// `[0, pivot)`).
    pub fn reduce_mod_rows(&self, target: &[BigInt]) -> Vec<BigInt> {
        let mut t = target.to_vec();
        for (i, c) in self.pivots() {
            let k = t[c].div_floor(&self.rows[i][c]);
            if k.is_zero() {
                continue;
            }
            for (tv, hv) in t.iter_mut().zip(&self.rows[i]) {
                *tv -= &k * hv;
            }
        }
        t
    }

    /// Integer coefficients `y` with `y · self = target`, if they exist.
    pub fn solve_in_row_span(&self, target: &[BigInt]) -> Option<Vec<BigInt>> {
        let (h, u) = self.hermite_form_with_transform();
        let q = h.hermite_coordinates(target)?;
        Some(
            (0..self.nrows())
                .map(|j| {
                    q.iter()
                        .zip(u.rows())
                        .fold(BigInt::zero(), |acc, (qi, urow)| acc + qi * &urow[j])
                })
                .collect(),
        )
    }

    /// Product of the diagonal of a square Hermite form (its |determinant|).
    pub fn hermite_index(&self) -> BigInt {
        (0..self.cols.min(self.nrows()))
            .map(|i| self.rows[i][i].clone())
            .fold(BigInt::one(), |acc, v| acc * v)
    }
}

fn row_sub(m: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    let (t, s) = if target < source {
        let (a, b) = m.split_at_mut(source);
        (&mut a[target], &b[0])
    } else {
        let (a, b) = m.split_at_mut(target);
        (&mut b[0], &a[source])
    };
    for (tv, sv) in t.iter_mut().zip(s.iter()) {
        *tv -= q * sv;
    }
}
