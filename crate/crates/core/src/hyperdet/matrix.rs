use std::fmt;

use rayon::prelude::*;

use super::perm::Permutation;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A square matrix of scalars, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Matrix { n, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "row of length {} in a {n}-row matrix",
                bad.len()
            )));
        }
        Ok(Matrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Matrix> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Scalar::int(v)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Matrix {
        Matrix::from_fn(n, |i, j| if i == j { Scalar::one() } else { Scalar::zero() })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "{0}×{0} times {1}×{1}",
                self.n, other.n
            )));
        }
        Ok(Matrix::from_fn(self.n, |i, j| {
            (0..self.n).map(|k| self.get(i, k) * other.get(k, j)).sum()
        }))
    }

    /// Determinant by fraction-free (Bareiss) elimination. All entries are
    /// first promoted to their common variant, so every intermediate
    /// division is exact in that ring.
    pub fn det(&self) -> Scalar {
        let n = self.n;
        if n == 0 {
            return Scalar::one();
        }
        let common = Scalar::common_variant(&self.entries);
        let mut a: Vec<Scalar> = self.entries.iter().map(|e| e.promote_to(&common)).collect();
        let mut negate = false;
        let mut prev = Scalar::one();
        for k in 0..n - 1 {
            let Some(p) = (k..n).find(|&r| !a[r * n + k].is_zero()) else {
                return Scalar::zero().promote_to(&common);
            };
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                negate = !negate;
            }
            let pivot = a[k * n + k].clone();
            for i in k + 1..n {
                let lead = a[i * n + k].clone();
                for j in k + 1..n {
                    let num = &(&pivot * &a[i * n + j]) - &(&lead * &a[k * n + j]);
                    a[i * n + j] = num.exact_div(&prev).expect("Bareiss quotients are exact");
                }
            }
            prev = pivot;
        }
        let d = a[n * n - 1].clone();
        if negate {
            -d
        } else {
            d
        }
    }

    /// Determinant as the signed sum over all `n!` permutations.
    pub fn leibniz_det(&self) -> Scalar {
        let n = self.n;
        Permutation::all(n)
            .par_iter()
            .map(|p| {
                let mut t = Scalar::int(p.sign());
                for i in 0..n {
                    t *= self.get(i, p.apply(i));
                }
                t
            })
            .reduce(Scalar::zero, |a, b| a + b)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
