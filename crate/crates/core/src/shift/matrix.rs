use std::ops::Mul;

use super::ExpPoly;
use crate::error::{Error, Result};
use crate::exact::{Rat, RatFunc};

/// Square matrix over ℚ(x), row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    entries: Vec<RatFunc>,
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vec<RatFunc>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidArgument("empty matrix".into()));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument("matrix is not square".into()));
        }
        Ok(Matrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal((0..n).map(|_| RatFunc::one()).collect())
    }

    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            entries: vec![RatFunc::zero(); n * n],
        }
    }

    pub fn diagonal(diag: Vec<RatFunc>) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n);
        for (i, d) in diag.into_iter().enumerate() {
            m.entries[i * n + i] = d;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RatFunc) {
        self.entries[i * self.n + j] = v;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[RatFunc]> {
        self.entries.chunks(self.n)
    }

    pub fn map(&self, f: impl Fn(&RatFunc) -> RatFunc) -> Self {
        Matrix {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Entrywise `x ↦ x + tau`.
    pub fn shift(&self, tau: &Rat) -> Self {
        self.map(|e| e.shift(tau))
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        self.map(|e| e * c)
    }

    /// Determinant by fraction-carrying Gaussian elimination over ℚ(x).
    pub fn det(&self) -> RatFunc {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = RatFunc::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return RatFunc::zero();
            };
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                }
                det = -det;
            }
            let p = a[col * n + col].clone();
            det = &det * &p;
            let inv = p.recip().expect("pivot is nonzero");
            for r in col + 1..n {
                let factor = &a[r * n + col] * &inv;
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = &a[r * n + j] - &(&factor * &a[col * n + j]);
                    a[r * n + j] = v;
                }
            }
        }
        det
    }

    /// Inverse by Gauss–Jordan elimination; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut inv = Self::identity(n).entries;
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r * n + col].is_zero())?;
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                    inv.swap(pivot * n + j, col * n + j);
                }
            }
            let p_inv = a[col * n + col].recip().ok()?;
            for j in 0..n {
                a[col * n + j] = &a[col * n + j] * &p_inv;
                inv[col * n + j] = &inv[col * n + j] * &p_inv;
            }
            for r in 0..n {
                if r == col || a[r * n + col].is_zero() {
                    continue;
                }
                let factor = a[r * n + col].clone();
                for j in 0..n {
                    let v = &a[r * n + j] - &(&factor * &a[col * n + j]);
                    a[r * n + j] = v;
                    let w = &inv[r * n + j] - &(&factor * &inv[col * n + j]);
                    inv[r * n + j] = w;
                }
            }
        }
        Some(Matrix { n, entries: inv })
    }

    /// Matrix–vector product with exponential-polynomial entries.
    pub fn apply(&self, v: &[ExpPoly]) -> Result<Vec<ExpPoly>> {
        if v.len() != self.n {
            return Err(Error::InvalidArgument(format!(
                "vector of length {} against {}x{} matrix",
                v.len(),
                self.n,
                self.n
            )));
        }
        Ok(self
            .rows()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(ExpPoly::zero(), |acc, (a, y)| &acc + &y.scale(a))
            })
            .collect())
    }
}

/// A nonzero vector in the right kernel of a `rows × ncols` matrix over ℚ(x),
/// or `None` when the columns are independent.
pub(crate) fn kernel_vector(mut rows: Vec<Vec<RatFunc>>, ncols: usize) -> Option<Vec<RatFunc>> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip().expect("pivot is nonzero");
        rows[r] = rows[r].iter().map(|e| e * &inv).collect();
        for i in 0..rows.len() {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            let factor = rows[i][col].clone();
            let pivot = rows[r].clone();
            for (e, p) in rows[i].iter_mut().zip(&pivot).skip(col) {
                *e = &*e - &(&factor * p);
            }
        }
        pivots.push(col);
        r += 1;
    }
    let free = (0..ncols).find(|c| !pivots.contains(c))?;
    let mut v = vec![RatFunc::zero(); ncols];
    v[free] = RatFunc::one();
    for (i, &pc) in pivots.iter().enumerate() {
        v[pc] = -&rows[i][free];
    }
    Some(v)
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &'a Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j) + &(a * b);
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

impl Mul for Matrix {
    type Output = Matrix;
    fn mul(self, rhs: Matrix) -> Matrix {
        &self * &rhs
    }
}
