//! Hypermatrices and their determinants: Cayley's `Det`, `Det_1`, and the
//! F-determinant, both by literal enumeration and by expansion into
//! ordinary determinants of slices.

mod fmap;
mod hypermatrix;
mod matrix;
mod perm;

use num_bigint::BigUint;
use rayon::prelude::*;

pub use fmap::{FMap, FTable};
pub use hypermatrix::Hypermatrix;
pub use matrix::Matrix;
pub use perm::Permutation;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub fn det(m: &Matrix) -> Scalar {
    m.det()
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// `(n!)^count`, the number of `count`-tuples of permutations of `n` points.
pub fn tuple_count(n: usize, count: usize) -> BigUint {
    factorial(n).pow(count as u32)
}

/// Sums `term` over every `len`-tuple drawn from `perms`, in lexicographic
/// order of the tuple. The first component is split across the rayon pool;
/// exact addition makes the result independent of the split.
fn sum_over_tuples<F>(perms: &[Permutation], len: usize, term: F) -> Scalar
where
    F: Fn(&[&Permutation]) -> Scalar + Sync,
{
    if len == 0 {
        return term(&[]);
    }
    let m = perms.len();
    (0..m)
        .into_par_iter()
        .map(|first| {
            let mut digits = vec![0usize; len];
            digits[0] = first;
            let mut tuple: Vec<&Permutation> = digits.iter().map(|&d| &perms[d]).collect();
            let mut acc = Scalar::zero();
            loop {
                acc += &term(&tuple);
                // odometer over digits[1..]
                let mut axis = len - 1;
                loop {
                    if axis == 0 {
                        return acc;
                    }
                    digits[axis] += 1;
                    if digits[axis] < m {
                        tuple[axis] = &perms[digits[axis]];
                        break;
                    }
                    digits[axis] = 0;
                    tuple[axis] = &perms[0];
                    axis -= 1;
                }
            }
        })
        .reduce(Scalar::zero, |a, b| a + b)
}

/// `∏_i M[row(i), σ_1(i), …]` where the first index of entry `i` is given
/// by `row`, followed by the images of `i` under each permutation.
fn entry_product(m: &Hypermatrix, first: Option<&Permutation>, rest: &[&Permutation]) -> Scalar {
    let n = m.side();
    let mut acc = Scalar::one();
    for i in 0..n {
        let mut off = first.map_or(i, |p| p.apply(i));
        for p in rest {
            off = off * n + p.apply(i);
        }
        let e = m.at(off);
        if e.is_zero() {
            return Scalar::zero();
        }
        acc *= e;
    }
    acc
}

/// Cayley's hyperdeterminant `(1/n!) Σ_{σ ∈ 𝔖_n^k} sign(σ) M^σ`. For integer
/// hypermatrices the division must be exact in the integers.
pub fn cayley_det(m: &Hypermatrix) -> Result<Scalar> {
    let perms = Permutation::all(m.side());
    let sum = sum_over_tuples(&perms, m.order(), |t| {
        let prod = entry_product(m, Some(t[0]), &t[1..]);
        if prod.is_zero() {
            return prod;
        }
        let sign: i64 = t.iter().map(|p| p.sign()).product();
        if sign < 0 {
            -prod
        } else {
            prod
        }
    });
    let nf = Scalar::Integer(factorial(m.side()).into());
    sum.exact_div(&nf).map_err(|e| match e {
        Error::DivisionNotExact { dividend, divisor } => Error::ScalarNotDivisible { sum: dividend, divisor },
        other => other,
    })
}

/// `Det_1`: the alternating sum with `σ_1` fixed to the identity.
pub fn det1(m: &Hypermatrix) -> Scalar {
    let perms = Permutation::all(m.side());
    sum_over_tuples(&perms, m.order() - 1, |t| {
        let prod = entry_product(m, None, t);
        if prod.is_zero() {
            return prod;
        }
        let sign: i64 = t.iter().map(|p| p.sign()).product();
        if sign < 0 {
            -prod
        } else {
            prod
        }
    })
}

/// F-determinant by literal enumeration of `𝔖_n^{k−1}`:
/// `Σ sign(σ_2) 𝔉(σ_3, …, σ_k) ∏_i M[i, σ_2(i), …, σ_k(i)]`.
pub fn fdet_bruteforce(m: &Hypermatrix, f: &FMap) -> Result<Scalar> {
    f.check(m.side(), m.order())?;
    let perms = Permutation::all(m.side());
    Ok(sum_over_tuples(&perms, m.order() - 1, |t| {
        let coeff = f.eval(&t[1..]);
        if coeff.is_zero() {
            return coeff;
        }
        let prod = entry_product(m, None, t);
        if prod.is_zero() {
            return prod;
        }
        let term = &coeff * &prod;
        if t[0].sign() < 0 {
            -term
        } else {
            term
        }
    }))
}

/// F-determinant as `Σ_{σ_3…σ_k} 𝔉(σ_3, …, σ_k) det(M^{σ_3,…,σ_k})`.
pub fn fdet_expansion(m: &Hypermatrix, f: &FMap) -> Result<Scalar> {
    f.check(m.side(), m.order())?;
    let perms = Permutation::all(m.side());
    Ok(sum_over_tuples(&perms, m.order() - 2, |t| {
        let coeff = f.eval(t);
        if coeff.is_zero() {
            return coeff;
        }
        let minor = m.slice(t).expect("arity checked").det();
        &coeff * &minor
    }))
}

/// `g.M`; see [`Hypermatrix::group_action`].
pub fn group_action(g: &Matrix, m: &Hypermatrix) -> Result<Hypermatrix> {
    m.group_action(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Cofactor expansion along the first row; independent of both
    /// Bareiss elimination and permutation enumeration.
    fn cofactor_det(m: &Matrix) -> Scalar {
        let n = m.size();
        if n == 0 {
            return Scalar::one();
        }
        let mut acc = Scalar::zero();
        for j in 0..n {
            let minor = Matrix::from_fn(n - 1, |r, c| m.get(r + 1, if c < j { c } else { c + 1 }).clone());
            let t = m.get(0, j) * &cofactor_det(&minor);
            acc = if j % 2 == 0 { acc + t } else { acc - t };
        }
        acc
    }

    fn lcg(seed: &mut u64) -> i64 {
        *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((*seed >> 33) % 11) as i64 - 5
    }

    #[test]
    fn bareiss_matches_cofactor_oracle() {
        let mut seed = 7u64;
        for n in 0..=4 {
            for _ in 0..25 {
                let m = Matrix::from_fn(n, |_, _| Scalar::int(lcg(&mut seed)));
                assert_eq!(m.det(), cofactor_det(&m), "n = {n}\n{m}");
            }
        }
    }

    #[test]
    fn det1_diagonal_example() {
        // n = 2, k = 3, M_{iii} = 1 else 0: only (Id, Id) contributes.
        let m = Hypermatrix::from_fn(2, 3, |i| Scalar::int(i64::from(i[0] == i[1] && i[1] == i[2])));
        assert_eq!(det1(&m), Scalar::one());
        let single = Hypermatrix::new(1, 3, vec![Scalar::int(7)]).unwrap();
        assert_eq!(det1(&single), Scalar::int(7));
    }

    #[test]
    fn order_two_reduces_to_det() {
        let mut seed = 3u64;
        let m = Hypermatrix::from_fn(3, 2, |_| Scalar::int(lcg(&mut seed)));
        let d = m.slice(&[]).unwrap().det();
        assert_eq!(det1(&m), d);
        assert_eq!(cayley_det(&m).unwrap(), d);
        assert_eq!(fdet_bruteforce(&m, &FMap::SignProduct).unwrap(), d);
        assert_eq!(fdet_expansion(&m, &FMap::ConstantOne).unwrap(), d);
    }

    #[test]
    fn odd_order_cayley_vanishes() {
        let mut seed = 11u64;
        let m = Hypermatrix::from_fn(3, 3, |_| Scalar::int(lcg(&mut seed)));
        assert!(cayley_det(&m).unwrap().is_zero());
    }

    #[test]
    fn single_entry_odd_order_does_not_vanish() {
        let m = Hypermatrix::from_fn(1, 3, |_| Scalar::int(7));
        assert_eq!(cayley_det(&m).unwrap(), Scalar::int(7));
    }

    #[test]
    fn expansion_equals_enumeration_small() {
        let mut seed = 5u64;
        let m = Hypermatrix::from_fn(3, 3, |_| Scalar::int(lcg(&mut seed)));
        for f in [FMap::SignProduct, FMap::ConstantOne] {
            assert_eq!(fdet_expansion(&m, &f).unwrap(), fdet_bruteforce(&m, &f).unwrap());
        }
        assert_eq!(fdet_bruteforce(&m, &FMap::SignProduct).unwrap(), det1(&m));
    }

    #[test]
    fn single_table_entry_picks_one_minor() {
        let mut seed = 9u64;
        let m = Hypermatrix::from_fn(3, 3, |_| Scalar::int(lcg(&mut seed)));
        let sigma: Permutation = "3,1,2".parse().unwrap();
        let mut t = FTable::new(Scalar::zero());
        t.insert(vec![sigma.clone()], Scalar::int(4)).unwrap();
        let f = FMap::Table(t);
        let expected = &Scalar::int(4) * &m.slice(&[&sigma]).unwrap().det();
        assert_eq!(fdet_expansion(&m, &f).unwrap(), expected);
        assert_eq!(fdet_bruteforce(&m, &f).unwrap(), expected);
    }

    #[test]
    fn scalar_group_action_scales_by_det() {
        let mut seed = 13u64;
        let m = Hypermatrix::from_fn(2, 3, |_| Scalar::int(lcg(&mut seed)));
        let g = Matrix::from_i64_rows(&[&[2, 0], &[0, 2]]).unwrap();
        let gm = group_action(&g, &m).unwrap();
        let base = fdet_expansion(&m, &FMap::SignProduct).unwrap();
        assert_eq!(
            fdet_expansion(&gm, &FMap::SignProduct).unwrap(),
            &Scalar::int(4) * &base
        );
    }

    #[test]
    fn arity_is_checked() {
        let m = Hypermatrix::from_fn(2, 3, |_| Scalar::one());
        let f = FMap::parse_table("1,2;1,2 -> 1\n").unwrap();
        assert!(matches!(fdet_bruteforce(&m, &f), Err(Error::ArityMismatch { .. })));
        assert!(matches!(fdet_expansion(&m, &f), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn cayley_integer_division() {
        // Every raw sum is n!·Det_1 for even k, so the division succeeds on
        // integers; rational entries stay rational.
        let m = Hypermatrix::from_fn(2, 2, |i| Scalar::ratio(i[0] as i64 + 1, i[1] as i64 + 2));
        let d = cayley_det(&m).unwrap();
        assert_eq!(d, m.slice(&[]).unwrap().det());
    }

    #[test]
    fn counts() {
        assert_eq!(tuple_count(4, 2), BigUint::from(576u32));
        assert_eq!(tuple_count(4, 1), BigUint::from(24u32));
        assert_eq!(tuple_count(3, 0), BigUint::from(1u32));
    }
}
