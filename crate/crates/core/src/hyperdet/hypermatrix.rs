use std::fmt::Write as _;

use super::matrix::Matrix;
use super::perm::Permutation;
use crate::error::{Error, Result};
use crate::scalar::{parse_scalar, Scalar};

/// A dense k-way array with every side of length `n`. Entries are stored in
/// lexicographic index order, last index fastest. Indices are 0-based here
/// and 1-based in the file format.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypermatrix {
    n: usize,
    k: usize,
    entries: Vec<Scalar>,
}

impl Hypermatrix {
    pub fn new(n: usize, k: usize, entries: Vec<Scalar>) -> Result<Hypermatrix> {
        if k < 2 {
            return Err(Error::DimensionMismatch(format!("order k = {k}, need k ≥ 2")));
        }
        let expected = n
            .checked_pow(k as u32)
            .ok_or_else(|| Error::DimensionMismatch(format!("n^k overflows for n = {n}, k = {k}")))?;
        if entries.len() != expected {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for n = {n}, k = {k} (need {expected})",
                entries.len()
            )));
        }
        Ok(Hypermatrix { n, k, entries })
    }

    /// Fills entries from a function of the 0-based multi-index.
    pub fn from_fn(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> Scalar) -> Hypermatrix {
        assert!(k >= 2, "hypermatrix order must be at least 2");
        let total = n.pow(k as u32);
        let mut idx = vec![0usize; k];
        let mut entries = Vec::with_capacity(total);
        for _ in 0..total {
            entries.push(f(&idx));
            for axis in (0..k).rev() {
                idx[axis] += 1;
                if idx[axis] < n {
                    break;
                }
                idx[axis] = 0;
            }
        }
        Hypermatrix { n, k, entries }
    }

    pub fn from_matrix(m: &Matrix) -> Hypermatrix {
        Hypermatrix {
            n: m.size(),
            k: 2,
            entries: m.entries().to_vec(),
        }
    }

    pub fn side(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.k
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    #[inline]
    pub fn offset(&self, index: &[usize]) -> usize {
        index.iter().fold(0, |acc, &i| acc * self.n + i)
    }

    #[inline]
    pub fn get(&self, index: &[usize]) -> &Scalar {
        &self.entries[self.offset(index)]
    }

    #[inline]
    pub(crate) fn at(&self, offset: usize) -> &Scalar {
        &self.entries[offset]
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Hypermatrix {
        Hypermatrix {
            n: self.n,
            k: self.k,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// The `n × n` matrix `(i, j) ↦ M[i, j, σ_3(i), …, σ_k(i)]`.
    pub fn slice(&self, sigmas: &[&Permutation]) -> Result<Matrix> {
        if sigmas.len() + 2 != self.k {
            return Err(Error::ArityMismatch {
                expected: self.k - 2,
                found: sigmas.len(),
            });
        }
        if let Some(p) = sigmas.iter().find(|p| p.len() != self.n) {
            return Err(Error::DimensionMismatch(format!(
                "permutation {p} acts on {} points, hypermatrix side is {}",
                p.len(),
                self.n
            )));
        }
        let mut idx = vec![0usize; self.k];
        Ok(Matrix::from_fn(self.n, |i, j| {
            idx[0] = i;
            idx[1] = j;
            for (t, s) in sigmas.iter().enumerate() {
                idx[t + 2] = s.apply(i);
            }
            self.get(&idx).clone()
        }))
    }

    /// `g.M`: contract `g` against the second index,
    /// `(g.M)[i₁, i₂, …] = Σ_j g[i₂, j] · M[i₁, j, i₃, …]`.
    pub fn group_action(&self, g: &Matrix) -> Result<Hypermatrix> {
        if g.size() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "{0}×{0} matrix acting on a hypermatrix of side {1}",
                g.size(),
                self.n
            )));
        }
        let mut src = vec![0usize; self.k];
        Ok(Hypermatrix::from_fn(self.n, self.k, |idx| {
            src.copy_from_slice(idx);
            let mut acc = Scalar::zero();
            for j in 0..self.n {
                src[1] = j;
                let c = g.get(idx[1], j);
                if !c.is_zero() {
                    acc += &(c * self.get(&src));
                }
            }
            acc
        }))
    }

    /// File format: header `hypermatrix <n> <k>` then `n^k` scalar lines.
    pub fn to_text(&self) -> String {
        let mut out = format!("hypermatrix {} {}\n", self.n, self.k);
        for e in &self.entries {
            writeln!(out, "{e}").expect("string write");
        }
        out
    }

    pub fn parse(text: &str) -> Result<Hypermatrix> {
        let mut header: Option<(usize, usize)> = None;
        let mut entries = Vec::new();
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            last_line = line_no;
            let Some((n, k)) = header else {
                let fields: Vec<&str> = line.split_whitespace().collect();
                header = match fields.as_slice() {
                    ["hypermatrix", n, k] => match (n.parse(), k.parse()) {
                        (Ok(n), Ok(k)) if k >= 2 => Some((n, k)),
                        _ => {
                            return Err(Error::Parse {
                                line: line_no,
                                message: "header needs integer n ≥ 0 and k ≥ 2".into(),
                            })
                        }
                    },
                    _ => {
                        return Err(Error::Parse {
                            line: line_no,
                            message: "expected header `hypermatrix <n> <k>`".into(),
                        })
                    }
                };
                continue;
            };
            if entries.len() == n.pow(k as u32) {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("more than {} entries", n.pow(k as u32)),
                });
            }
            let v = parse_scalar(line).map_err(|e| Error::Parse {
                line: line_no,
                message: e.to_string(),
            })?;
            entries.push(v);
        }
        let (n, k) = header.ok_or(Error::Parse {
            line: 1,
            message: "missing header `hypermatrix <n> <k>`".into(),
        })?;
        if entries.len() != n.pow(k as u32) {
            return Err(Error::Parse {
                line: last_line,
                message: format!("expected {} entries, found {}", n.pow(k as u32), entries.len()),
            });
        }
        Hypermatrix::new(n, k, entries)
    }
}
