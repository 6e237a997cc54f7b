//! Möbius inversion on a semilattice and the factorization theorems for
//! meet hypermatrices: whole lattice, meet-closed and factor-closed index
//! sets, and the general expansion over subsets of the order ideal.
//!
//! Every evaluator here has a brute-force counterpart: build the hypermatrix
//! with [`build_meet_hypermatrix`] and hand it to
//! [`crate::hyperdet::fdet_bruteforce`].

mod grounded;

use itertools::Itertools;
use rayon::prelude::*;

pub use grounded::{symbol_name, GroundedFunction};

use crate::error::{Error, Result};
use crate::hyperdet::{fdet_expansion, FMap, Hypermatrix, Matrix};
use crate::lattice::{MeetSemilattice, Poset};
use crate::scalar::Scalar;

/// `F(x) = Σ_{y ≤ x} f(y)` over all elements of the poset.
pub fn zeta_transform(p: &Poset, f: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(f.len(), p.len(), "function must be defined on every element");
    (0..p.len())
        .map(|x| (0..p.len()).filter(|&y| p.leq(y, x)).map(|y| &f[y]).sum())
        .collect()
}

/// `f(x) = Σ_y μ(y, x) F(y)`, the inverse of [`zeta_transform`].
pub fn mobius_transform(p: &Poset, big_f: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(big_f.len(), p.len(), "function must be defined on every element");
    let mu = p.mobius_matrix();
    (0..p.len())
        .map(|x| {
            (0..p.len())
                .filter(|&y| mu.get(y, x) != 0)
                .map(|y| &Scalar::int(mu.get(y, x)) * &big_f[y])
                .sum()
        })
        .collect()
}

fn check_order(k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::DimensionMismatch(format!("order k = {k}, need k ≥ 2")));
    }
    Ok(())
}

/// The hypermatrix `F_{x_{i₁}}(z_{x_{i₁}} ∧ x_{i₂} ∧ ⋯ ∧ x_{i_k})`.
pub fn build_meet_hypermatrix(gf: &GroundedFunction, k: usize) -> Result<Hypermatrix> {
    check_order(k)?;
    let xs = gf.index_set();
    let sl = gf.lattice();
    Ok(Hypermatrix::from_fn(xs.len(), k, |idx| {
        let head = xs[idx[0]];
        let z = gf.ground_at(idx[0]);
        let m = idx[1..].iter().fold(z, |acc, &i| sl.meet(acc, xs[i]));
        gf.value(head, m)
    }))
}

fn require_whole_lattice(gf: &GroundedFunction) -> Result<()> {
    let mut sorted = gf.index_set().to_vec();
    sorted.sort_unstable();
    if sorted != (0..gf.lattice().len()).collect::<Vec<_>>() {
        return Err(Error::IndexSetNotWholeLattice);
    }
    Ok(())
}

fn diagonal_product(gf: &GroundedFunction) -> Scalar {
    gf.index_set().iter().map(|&x| gf.mobius_value(x, x)).product()
}

/// Determinant of `(F_x(z_x ∧ y))_{x,y ∈ L}`: `∏_x f_x(x)` when `z_x = x`
/// for every `x`, and zero otherwise.
pub fn lindstrom_det(gf: &GroundedFunction) -> Result<Scalar> {
    require_whole_lattice(gf)?;
    if !gf.grounds_are_identity() {
        return Ok(Scalar::zero());
    }
    Ok(diagonal_product(gf))
}

/// `Det_𝔉` of the meet hypermatrix over the whole lattice:
/// `𝔉(Id, …, Id) ∏_x f_x(x)` when `z_x = x` for every `x`, zero otherwise.
pub fn lindstrom_fdet(gf: &GroundedFunction, k: usize, f: &FMap) -> Result<Scalar> {
    check_order(k)?;
    require_whole_lattice(gf)?;
    f.check(gf.len(), k)?;
    if !gf.grounds_are_identity() {
        return Ok(Scalar::zero());
    }
    let lead = f.at_identity(gf.len(), k);
    if lead.is_zero() {
        return Ok(lead);
    }
    Ok(&lead * &diagonal_product(gf))
}

/// `f̂(y_i) = Σ_{x ⊴ y_i} f(x)` for a meet-closed subset listed along a
/// linear extension; `f` is a function on the whole lattice. Entry `i` of
/// the result is `f̂(ordered[i])`.
pub fn hat_transform(sl: &MeetSemilattice, ordered: &[usize], f: &[Scalar]) -> Result<Vec<Scalar>> {
    assert_eq!(f.len(), sl.len(), "function must be defined on every element");
    if let Some((a, b)) = sl.meet_closure_witness(ordered) {
        let p = sl.poset();
        return Err(Error::SubsetNotMeetClosed(format!(
            "{} ∧ {} = {} is missing",
            p.label(a),
            p.label(b),
            p.label(sl.meet(a, b))
        )));
    }
    if !sl.poset().is_linear_extension_of(ordered) {
        return Err(Error::InvalidLinearExtension);
    }
    let mut out = vec![Scalar::zero(); ordered.len()];
    for x in sl.poset().order_ideal_closure(ordered) {
        let i = sl.poset().triangle_index(ordered, x)?;
        out[i] += &f[x];
    }
    Ok(out)
}

/// The index set sorted along the lattice's deterministic linear extension.
fn along_extension(gf: &GroundedFunction) -> Vec<usize> {
    gf.poset()
        .linear_extension()
        .into_iter()
        .filter(|e| gf.index_set().contains(e))
        .collect()
}

fn require_identity_grounds(gf: &GroundedFunction) -> Result<()> {
    match gf.first_lowered() {
        Some(x) => Err(Error::GroundingNotIdentity(gf.label(x))),
        None => Ok(()),
    }
}

/// `Det_𝔉` of the meet hypermatrix on a meet-closed index set `S`:
/// `𝔉(Id, …, Id) ∏_i f̂_{y_i}(y_i)`.
pub fn meet_closed_fdet(gf: &GroundedFunction, k: usize, f: &FMap) -> Result<Scalar> {
    check_order(k)?;
    f.check(gf.len(), k)?;
    require_identity_grounds(gf)?;
    let sl = gf.lattice();
    let ordered = along_extension(gf);
    let mut acc = f.at_identity(gf.len(), k);
    for (i, &y) in ordered.iter().enumerate() {
        if acc.is_zero() {
            break;
        }
        let fy: Vec<Scalar> = (0..sl.len())
            .map(|x| {
                if sl.leq(x, y) {
                    gf.mobius_value(y, x)
                } else {
                    Scalar::zero()
                }
            })
            .collect();
        let hat = hat_transform(sl, &ordered, &fy)?;
        acc = &acc * &hat[i];
    }
    Ok(acc)
}

/// `Det_𝔉` of the meet hypermatrix on a factor-closed index set:
/// `𝔉(Id, …, Id) ∏_x f_x(x)`.
pub fn factor_closed_fdet(gf: &GroundedFunction, k: usize, f: &FMap) -> Result<Scalar> {
    check_order(k)?;
    f.check(gf.len(), k)?;
    let p = gf.poset();
    if let Some(missing) = p
        .order_ideal_closure(gf.index_set())
        .into_iter()
        .find(|e| !gf.index_set().contains(e))
    {
        return Err(Error::SubsetNotFactorClosed(p.label(missing)));
    }
    require_identity_grounds(gf)?;
    let lead = f.at_identity(gf.len(), k);
    if lead.is_zero() {
        return Ok(lead);
    }
    Ok(&lead * &diagonal_product(gf))
}

/// `C_{x,y} = f_x(y) ζ(y, z_x)` for `x ∈ X`, `y ∈ X̄`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CMatrix {
    rows: Vec<usize>,
    cols: Vec<usize>,
    entries: Vec<Scalar>,
}

impl CMatrix {
    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    /// Column elements: `X` in index-set order, then the rest of the order
    /// ideal `X̄` ascending.
    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols.len() + j]
    }

    /// The square submatrix on the given column positions.
    pub fn minor(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.rows.len(), |i, j| self.get(i, cols[j]).clone())
    }
}

/// `X̄` ordered as `X` first, then the remaining elements ascending.
pub fn closure_order(gf: &GroundedFunction) -> Vec<usize> {
    let xs = gf.index_set();
    let mut out = xs.to_vec();
    out.extend(
        gf.poset()
            .order_ideal_closure(xs)
            .into_iter()
            .filter(|e| !xs.contains(e)),
    );
    out
}

pub fn c_matrix(gf: &GroundedFunction) -> CMatrix {
    let rows = gf.index_set().to_vec();
    let cols = closure_order(gf);
    let mut entries = Vec::with_capacity(rows.len() * cols.len());
    for (i, &x) in rows.iter().enumerate() {
        let z = gf.ground_at(i);
        for &y in &cols {
            entries.push(if gf.lattice().leq(y, z) {
                gf.mobius_value(x, y)
            } else {
                Scalar::zero()
            });
        }
    }
    CMatrix { rows, cols, entries }
}

/// `det(ζ(x̄_{K_i}, x_j))` for column positions `K` of `X̄`.
fn zeta_minor(gf: &GroundedFunction, cols: &[usize], subset: &[usize]) -> Scalar {
    let xs = gf.index_set();
    Matrix::from_fn(xs.len(), |i, j| {
        Scalar::int(i64::from(gf.lattice().leq(cols[subset[i]], xs[j])))
    })
    .det()
}

/// `det(F_{x_i}(z_{x_i} ∧ x_j))` as
/// `Σ_{K} det(C_{x_i, x̄_{K_j}}) · det(ζ(x̄_{K_i}, x_j))` over all
/// `|X|`-element subsets `K` of `X̄`.
pub fn li_expansion_det(gf: &GroundedFunction) -> Scalar {
    let c = c_matrix(gf);
    let n = gf.len();
    (0..c.cols.len())
        .combinations(n)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|subset| {
            let z = zeta_minor(gf, &c.cols, subset);
            if z.is_zero() {
                return z;
            }
            &c.minor(subset).det() * &z
        })
        .reduce(Scalar::zero, |a, b| a + b)
}

/// `Σ_K Det_𝔉(f_{x_{i₁}}(x̄_{K_{i₂}}) ζ(x̄_{K_{i₂}}, z_{x_{i₁}} ∧ x_{i₃} ∧ ⋯ ∧ x_{i_k})) · det(ζ(x̄_{K_i}, x_j))`.
pub fn ligen_fdet(gf: &GroundedFunction, k: usize, f: &FMap) -> Result<Scalar> {
    check_order(k)?;
    f.check(gf.len(), k)?;
    let cols = closure_order(gf);
    let n = gf.len();
    let subsets: Vec<Vec<usize>> = (0..cols.len()).combinations(n).collect();
    let terms = subsets
        .par_iter()
        .map(|subset| -> Result<Scalar> {
            let z = zeta_minor(gf, &cols, subset);
            if z.is_zero() {
                return Ok(z);
            }
            let inner = inner_hypermatrix(gf, k, &cols, subset, |x, y| gf.mobius_value(x, y));
            Ok(&fdet_expansion(&inner, f)? * &z)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(terms.into_iter().sum())
}

/// `weight(x_{i₁}, x̄_{K_{i₂}}) · ζ(x̄_{K_{i₂}}, z_{x_{i₁}} ∧ x_{i₃} ∧ ⋯ ∧ x_{i_k})`.
fn inner_hypermatrix(
    gf: &GroundedFunction,
    k: usize,
    cols: &[usize],
    subset: &[usize],
    weight: impl Fn(usize, usize) -> Scalar,
) -> Hypermatrix {
    let xs = gf.index_set();
    let sl = gf.lattice();
    Hypermatrix::from_fn(xs.len(), k, |idx| {
        let y = cols[subset[idx[1]]];
        let bound = idx[2..]
            .iter()
            .fold(gf.ground_at(idx[0]), |acc, &i| sl.meet(acc, xs[i]));
        if sl.leq(y, bound) {
            weight(xs[idx[0]], y)
        } else {
            Scalar::zero()
        }
    })
}

/// [`ligen_fdet`] when every `F_x` is the same function `F`: the column
/// weights `f(x̄_{K_i})` factor out of each inner F-determinant, leaving
/// `Σ_K ∏_i f(x̄_{K_i}) · Det_𝔉(ζ(x̄_{K_{i₂}}, z_{x_{i₁}} ∧ ⋯)) · det(ζ(x̄_{K_i}, x_j))`.
pub fn genhauk_fdet(gf: &GroundedFunction, k: usize, f: &FMap) -> Result<Scalar> {
    check_order(k)?;
    f.check(gf.len(), k)?;
    if let Some((a, b, z)) = gf.uniformity_witness() {
        return Err(Error::FunctionsNotUniform(format!(
            "F_{}({}) ≠ F_{}({})",
            gf.label(a),
            gf.label(z),
            gf.label(b),
            gf.label(z)
        )));
    }
    let cols = closure_order(gf);
    // the common F on X̄ and its Möbius transform
    let owner = |y: usize| {
        *gf.index_set()
            .iter()
            .find(|&&x| gf.lattice().leq(y, x))
            .expect("closure element lies below some index")
    };
    let small_f: Vec<(usize, Scalar)> = cols.iter().map(|&y| (y, gf.mobius_value(owner(y), y))).collect();
    let f_of = |y: usize| {
        small_f
            .iter()
            .find(|(e, _)| *e == y)
            .map(|(_, v)| v.clone())
            .expect("closure element")
    };
    let n = gf.len();
    let subsets: Vec<Vec<usize>> = (0..cols.len()).combinations(n).collect();
    let terms = subsets
        .par_iter()
        .map(|subset| -> Result<Scalar> {
            let z = zeta_minor(gf, &cols, subset);
            if z.is_zero() {
                return Ok(z);
            }
            let weights: Scalar = subset.iter().map(|&c| f_of(cols[c])).product();
            if weights.is_zero() {
                return Ok(weights);
            }
            let inner = inner_hypermatrix(gf, k, &cols, subset, |_, _| Scalar::one());
            Ok(&(&weights * &fdet_expansion(&inner, f)?) * &z)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(terms.into_iter().sum())
}

/// Number of `|X|`-subsets of `X̄` the general expansions sum over.
pub fn subset_count(gf: &GroundedFunction) -> u128 {
    let m = gf.poset().order_ideal_closure(gf.index_set()).len() as u128;
    let n = gf.len() as u128;
    (0..n).fold(1u128, |acc, i| acc * (m - i) / (i + 1))
}

#[cfg(test)]
mod tests;
