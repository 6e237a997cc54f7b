//! The divisibility semilattice of positive integers: gcd-closed sets,
//! arithmetic functions, Dirichlet convolution and gcd hypermatrices.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::hyperdet::Hypermatrix;
use crate::lattice::{MeetSemilattice, Poset};
use crate::scalar::Scalar;

/// The semilattice `(S, |)` with meet `gcd`. Element `i` is `S[i]` after
/// sorting, and carries its value as label.
pub fn divisor_semilattice(set: &[u64]) -> Result<(MeetSemilattice, Vec<u64>)> {
    let elems = checked_set(set)?;
    for (i, &a) in elems.iter().enumerate() {
        for &b in &elems[i + 1..] {
            if elems.binary_search(&a.gcd(&b)).is_err() {
                return Err(Error::NotGcdClosed(a, b));
            }
        }
    }
    let n = elems.len();
    let mut leq = vec![false; n * n];
    for (i, &a) in elems.iter().enumerate() {
        for (j, &b) in elems.iter().enumerate() {
            leq[i * n + j] = b % a == 0;
        }
    }
    let poset = Poset::from_relation(n, leq)?.with_labels(elems.iter().map(u64::to_string));
    Ok((MeetSemilattice::new(poset)?, elems))
}

fn checked_set(set: &[u64]) -> Result<Vec<u64>> {
    if set.is_empty() {
        return Err(Error::EmptyIndexSet);
    }
    if set.contains(&0) {
        return Err(Error::NonPositiveInteger(0));
    }
    Ok(set.iter().copied().collect::<BTreeSet<_>>().into_iter().collect())
}

/// Smallest gcd-closed superset, sorted.
pub fn gcd_closure(set: &[u64]) -> Result<Vec<u64>> {
    let mut out: BTreeSet<u64> = checked_set(set)?.into_iter().collect();
    loop {
        let cur: Vec<u64> = out.iter().copied().collect();
        let before = out.len();
        for (i, &a) in cur.iter().enumerate() {
            for &b in &cur[i + 1..] {
                out.insert(a.gcd(&b));
            }
        }
        if out.len() == before {
            return Ok(cur);
        }
    }
}

/// Every divisor of every member, sorted.
pub fn divisor_closure(set: &[u64]) -> Result<Vec<u64>> {
    let mut out = BTreeSet::new();
    for a in checked_set(set)? {
        out.extend(divisors(a));
    }
    Ok(out.into_iter().collect())
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Prime factorization by trial division.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "φ is defined on positive integers");
    factorize(n).into_iter().fold(n, |acc, (p, _)| acc / p * (p - 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    Id,
    One,
    Phi,
    Mu,
    Tau,
    Sigma,
}

impl Builtin {
    pub const ALL: [Builtin; 6] = [
        Builtin::Id,
        Builtin::One,
        Builtin::Phi,
        Builtin::Mu,
        Builtin::Tau,
        Builtin::Sigma,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Id => "id",
            Builtin::One => "one",
            Builtin::Phi => "phi",
            Builtin::Mu => "mu",
            Builtin::Tau => "tau",
            Builtin::Sigma => "sigma",
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Builtin> {
        Builtin::ALL.into_iter().find(|b| b.name() == s).ok_or_else(|| {
            Error::UnknownLabel(format!(
                "arithmetic function {s:?} (expected id, one, phi, mu, tau or sigma)"
            ))
        })
    }
}

/// A function on `1..=bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArithmeticFunction {
    values: Vec<Scalar>,
}

impl ArithmeticFunction {
    pub fn from_fn(bound: u64, mut f: impl FnMut(u64) -> Scalar) -> ArithmeticFunction {
        ArithmeticFunction {
            values: (1..=bound).map(&mut f).collect(),
        }
    }

    pub fn builtin(kind: Builtin, bound: u64) -> ArithmeticFunction {
        match kind {
            Builtin::Id => Self::from_fn(bound, |n| Scalar::int(n as i64)),
            Builtin::One => Self::from_fn(bound, |_| Scalar::one()),
            Builtin::Phi => Self::from_fn(bound, |n| Scalar::int(euler_phi(n) as i64)),
            Builtin::Mu => mobius_function(bound),
            Builtin::Tau => Self::from_fn(bound, |n| Scalar::int(divisors(n).len() as i64)),
            Builtin::Sigma => Self::from_fn(bound, |n| Scalar::int(divisors(n).iter().sum::<u64>() as i64)),
        }
    }

    /// `ε(1) = 1`, `ε(n) = 0` otherwise.
    pub fn unit(bound: u64) -> ArithmeticFunction {
        Self::from_fn(bound, |n| if n == 1 { Scalar::one() } else { Scalar::zero() })
    }

    pub fn bound(&self) -> u64 {
        self.values.len() as u64
    }

    pub fn at(&self, n: u64) -> Result<&Scalar> {
        if n == 0 || n > self.bound() {
            return Err(Error::OutOfBound { bound: self.bound(), n });
        }
        Ok(&self.values[n as usize - 1])
    }

    /// `n ↦ f(gcd(m, n))`.
    pub fn compose_gcd(&self, m: u64) -> ArithmeticFunction {
        Self::from_fn(self.bound(), |n| self.values[m.gcd(&n) as usize - 1].clone())
    }
}

/// Classical `μ(d)` read off the lattice Möbius function `μ(1, d)` of the
/// divisor lattice `{1, …, bound}`.
fn mobius_function(bound: u64) -> ArithmeticFunction {
    if bound == 0 {
        return ArithmeticFunction { values: Vec::new() };
    }
    let all: Vec<u64> = (1..=bound).collect();
    let (sl, _) = divisor_semilattice(&all).expect("{1..n} is gcd-closed");
    let mu = sl.poset().mobius_matrix();
    ArithmeticFunction::from_fn(bound, |d| mu.scalar(0, d as usize - 1))
}

/// `(f ∗ g)(n) = Σ_{d | n} f(d) g(n/d)`.
pub fn dirichlet_convolution(f: &ArithmeticFunction, g: &ArithmeticFunction, n: u64) -> Result<Scalar> {
    let mut acc = Scalar::zero();
    for d in divisors(n) {
        acc += &(f.at(d)? * g.at(n / d)?);
    }
    Ok(acc)
}

/// `((μ ∗ (f ∘ gcd_m))(n), right)` where `right` is `(f ∗ μ)(n)` if
/// `n | m` and 0 otherwise.
///
/// The left side is computed directly. The right side is the value the
/// identity actually takes: with `F = f ∘ gcd_m`, Möbius inversion gives
/// `(μ ∗ F)(n) = (μ ∗ f)(n)` for `n | m` and zero for `n ∤ m`.
pub fn cesaro_check(f: &ArithmeticFunction, m: u64, n: u64) -> Result<(Scalar, Scalar)> {
    f.at(m)?;
    f.at(n)?;
    let bound = f.bound();
    let mu = ArithmeticFunction::builtin(Builtin::Mu, bound);
    let left = dirichlet_convolution(&mu, &f.compose_gcd(m), n)?;
    let right = if m.is_multiple_of(n) {
        dirichlet_convolution(f, &mu, n)?
    } else {
        Scalar::zero()
    };
    Ok((left, right))
}

/// `F(gcd(s_{i₁}, …, s_{i_k}))`.
pub fn gcd_hypermatrix(set: &[u64], k: usize, f: &ArithmeticFunction) -> Result<Hypermatrix> {
    if k < 2 {
        return Err(Error::DimensionMismatch(format!("order k = {k}, need k ≥ 2")));
    }
    if set.is_empty() {
        return Err(Error::EmptyIndexSet);
    }
    if let Some(&bad) = set.iter().find(|&&s| s == 0) {
        return Err(Error::NonPositiveInteger(bad as i64));
    }
    for &s in set {
        f.at(s)?;
    }
    Ok(Hypermatrix::from_fn(set.len(), k, |idx| {
        let g = idx.iter().fold(0u64, |acc, &i| acc.gcd(&set[i]));
        f.values[g as usize - 1].clone()
    }))
}

/// Parses `1,2,3` or a range `1..6` into a set of positive integers.
pub fn parse_int_set(text: &str) -> Result<Vec<u64>> {
    let parse = |t: &str| -> Result<u64> {
        let v: i64 = t
            .trim()
            .parse()
            .map_err(|_| Error::Syntax(format!("not an integer: {t:?}")))?;
        if v <= 0 {
            return Err(Error::NonPositiveInteger(v));
        }
        Ok(v as u64)
    };
    if let Some((a, b)) = text.split_once("..") {
        let (a, b) = (parse(a)?, parse(b)?);
        return Ok((a..=b).collect());
    }
    text.split(',').map(parse).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperdet::det;

    #[test]
    fn diamond() {
        let (sl, elems) = divisor_semilattice(&[6, 1, 3, 2]).unwrap();
        assert_eq!(elems, vec![1, 2, 3, 6]);
        assert_eq!(sl.meet(1, 2), 0);
        assert_eq!(sl.poset().label(3), "6");
        assert_eq!(sl.poset().covers().len(), 4);
    }

    #[test]
    fn needs_gcd_closure() {
        assert_eq!(divisor_semilattice(&[2, 3]).unwrap_err(), Error::NotGcdClosed(2, 3));
        assert!(divisor_semilattice(&[]).is_err());
        assert!(divisor_semilattice(&[0, 1]).is_err());
    }

    #[test]
    fn meets_are_gcds() {
        let all: Vec<u64> = (1..=24).collect();
        let (sl, elems) = divisor_semilattice(&all).unwrap();
        for i in 0..elems.len() {
            for j in 0..elems.len() {
                assert_eq!(elems[sl.meet(i, j)], elems[i].gcd(&elems[j]));
            }
        }
    }

    #[test]
    fn closures() {
        assert_eq!(gcd_closure(&[4, 6]).unwrap(), vec![2, 4, 6]);
        assert_eq!(gcd_closure(&[2, 4, 8]).unwrap(), vec![2, 4, 8]);
        assert_eq!(gcd_closure(&[12, 18, 10]).unwrap(), vec![2, 6, 10, 12, 18]);
        assert_eq!(divisor_closure(&[6]).unwrap(), vec![1, 2, 3, 6]);
        assert_eq!(divisor_closure(&[4, 9]).unwrap(), vec![1, 2, 3, 4, 9]);
    }

    #[test]
    fn totient() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(6), 2);
        assert_eq!(euler_phi(97), 96);
        for n in 1..=100 {
            let coprime = (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64;
            assert_eq!(euler_phi(n), coprime);
            assert_eq!(divisors(n).into_iter().map(euler_phi).sum::<u64>(), n);
        }
    }

    #[test]
    fn mobius_values() {
        let mu = ArithmeticFunction::builtin(Builtin::Mu, 12);
        let want = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (n, w) in (1..=12).zip(want) {
            assert_eq!(mu.at(n).unwrap(), &Scalar::int(w), "μ({n})");
        }
    }

    #[test]
    fn convolution_identities() {
        let b = 30;
        let phi = ArithmeticFunction::builtin(Builtin::Phi, b);
        let one = ArithmeticFunction::builtin(Builtin::One, b);
        let mu = ArithmeticFunction::builtin(Builtin::Mu, b);
        let eps = ArithmeticFunction::unit(b);
        let tau = ArithmeticFunction::builtin(Builtin::Tau, b);
        for n in 1..=b {
            assert_eq!(dirichlet_convolution(&phi, &one, n).unwrap(), Scalar::int(n as i64));
            assert_eq!(dirichlet_convolution(&phi, &eps, n).unwrap(), *phi.at(n).unwrap());
            assert_eq!(dirichlet_convolution(&mu, &one, n).unwrap(), *eps.at(n).unwrap());
            assert_eq!(dirichlet_convolution(&one, &one, n).unwrap(), *tau.at(n).unwrap());
        }
        assert!(dirichlet_convolution(&phi, &one, 31).is_err());
    }

    #[test]
    fn cesaro_diagonal() {
        let f = ArithmeticFunction::builtin(Builtin::Id, 30);
        assert_eq!(cesaro_check(&f, 6, 6).unwrap(), (Scalar::int(2), Scalar::int(2)));
        assert_eq!(cesaro_check(&f, 1, 1).unwrap(), (Scalar::one(), Scalar::one()));
    }

    #[test]
    fn cesaro_sides_agree_everywhere() {
        for kind in [Builtin::Id, Builtin::Phi, Builtin::One] {
            let f = ArithmeticFunction::builtin(kind, 30);
            for m in 1..=30 {
                for n in 1..=30 {
                    let (l, r) = cesaro_check(&f, m, n).unwrap();
                    assert_eq!(l, r, "{kind} m={m} n={n}");
                }
            }
        }
    }

    #[test]
    fn proper_divisor_of_m_is_not_zero() {
        let f = ArithmeticFunction::builtin(Builtin::Id, 2);
        let (left, _) = cesaro_check(&f, 2, 1).unwrap();
        assert_eq!(left, Scalar::one());
    }

    #[test]
    fn gcd_tables() {
        let id = ArithmeticFunction::builtin(Builtin::Id, 8);
        let m = gcd_hypermatrix(&[1, 2, 3], 2, &id).unwrap();
        let rows: Vec<i64> = m.entries().iter().map(|s| s.to_string().parse().unwrap()).collect();
        assert_eq!(rows, vec![1, 1, 1, 1, 2, 1, 1, 1, 3]);
        let m4 = gcd_hypermatrix(&[1, 2], 4, &id).unwrap();
        assert_eq!(m4.entries().iter().filter(|s| s.is_one()).count(), 15);
        assert!(gcd_hypermatrix(&[9], 2, &id).is_err());
    }

    #[test]
    fn smith() {
        let id = ArithmeticFunction::builtin(Builtin::Id, 8);
        for n in 1..=8u64 {
            let set: Vec<u64> = (1..=n).collect();
            let m = gcd_hypermatrix(&set, 2, &id).unwrap().slice(&[]).unwrap();
            let want: u64 = set.iter().map(|&i| euler_phi(i)).product();
            assert_eq!(det(&m), Scalar::int(want as i64));
        }
    }

    #[test]
    fn int_sets() {
        assert_eq!(parse_int_set("1,2, 6").unwrap(), vec![1, 2, 6]);
        assert_eq!(parse_int_set("1..4").unwrap(), vec![1, 2, 3, 4]);
        assert!(parse_int_set("1,x").is_err());
        assert!(parse_int_set("0,1").is_err());
    }
}
