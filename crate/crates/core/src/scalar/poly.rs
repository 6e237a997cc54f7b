//! Sparse multivariate polynomials with rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A power product of named indeterminates, kept sorted by name with
/// strictly positive exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    vars: Vec<(String, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { vars: Vec::new() }
    }

    pub fn var(name: impl Into<String>) -> Self {
        Monomial {
            vars: vec![(name.into(), 1)],
        }
    }

    /// Builds a monomial from arbitrary `(name, exponent)` pairs, merging
    /// repeated names and dropping zero exponents.
    pub fn from_powers<I, S>(powers: I) -> Self
    where
        I: IntoIterator<Item = (S, u32)>,
        S: Into<String>,
    {
        let mut acc: BTreeMap<String, u32> = BTreeMap::new();
        for (name, e) in powers {
            if e > 0 {
                *acc.entry(name.into()).or_insert(0) += e;
            }
        }
        Monomial {
            vars: acc.into_iter().collect(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.vars.iter().map(|(_, e)| u64::from(*e)).sum()
    }

    pub fn powers(&self) -> impl Iterator<Item = (&str, u32)> {
        self.vars.iter().map(|(n, e)| (n.as_str(), *e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.vars.len() + other.vars.len());
        let (mut i, mut j) = (0, 0);
        while i < self.vars.len() && j < other.vars.len() {
            let (a, b) = (&self.vars[i], &other.vars[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a.0.clone(), a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.vars[i..]);
        out.extend_from_slice(&other.vars[j..]);
        Monomial { vars: out }
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.vars.len());
        let mut j = 0;
        for (name, e) in &self.vars {
            if j < other.vars.len() && other.vars[j].0 < *name {
                return None;
            }
            if j < other.vars.len() && other.vars[j].0 == *name {
                let d = other.vars[j].1;
                j += 1;
                match e.cmp(&d) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((name.clone(), e - d)),
                }
            } else {
                out.push((name.clone(), *e));
            }
        }
        if j < other.vars.len() {
            return None;
        }
        Some(Monomial { vars: out })
    }
}

/// Canonical order: higher total degree first, ties broken lexicographically
/// by indeterminate name (a monomial carrying the alphabetically smaller
/// name, or a larger power of it, comes first). `Less` means "printed
/// earlier". This is graded-lex, hence a monomial order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.degree().cmp(&self.degree()).then_with(|| {
            for (a, b) in self.vars.iter().zip(other.vars.iter()) {
                match a.0.cmp(&b.0) {
                    Ordering::Equal => match b.1.cmp(&a.1) {
                        Ordering::Equal => continue,
                        o => return o,
                    },
                    o => return o,
                }
            }
            other.vars.len().cmp(&self.vars.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.vars.is_empty() {
            return f.write_str("1");
        }
        for (i, (name, e)) in self.vars.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            f.write_str(name)?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial over the rationals. Zero coefficients are never stored; the
/// zero polynomial is the empty map.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(name: impl Into<String>) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(Monomial::var(name), BigRational::one());
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRational)>>(terms: I) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// The constant value, if the polynomial has no indeterminates.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Polynomial) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder. Panics are impossible; a zero divisor yields `None`.
    pub fn exact_div(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (lm, lc) = divisor.leading()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = Polynomial::zero();
        // If divisor | self then every remainder is a multiple of the
        // divisor, so its leading monomial must be divisible by `lm`.
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.checked_div(&lm)?;
            let qc = rc / &lc;
            let mut step = Polynomial::zero();
            step.add_term(qm, qc);
            rem = rem.sub(&step.mul(divisor));
            quot.add_assign(&step);
        }
        Some(quot)
    }

    pub fn variables(&self) -> Vec<String> {
        let mut names: Vec<String> = self
            .terms
            .keys()
            .flat_map(|m| m.powers().map(|(n, _)| n.to_owned()))
            .collect();
        names.sort();
        names.dedup();
        names
    }
}

pub(crate) fn fmt_rational(f: &mut fmt::Formatter<'_>, c: &BigRational) -> fmt::Result {
    if c.denom().is_one() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                fmt_rational(f, &abs)?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                fmt_rational(f, &abs)?;
                write!(f, "*{m}")?;
            }
        }
        Ok(())
    }
}

pub(crate) fn int_to_rational(i: &BigInt) -> BigRational {
    BigRational::from_integer(i.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn canonical_order_is_graded_then_lex() {
        let x2 = Monomial::from_powers([("x", 2)]);
        let xy = Monomial::from_powers([("x", 1), ("y", 1)]);
        let y2 = Monomial::from_powers([("y", 2)]);
        let x = Monomial::var("x");
        let one = Monomial::one();
        let mut v = vec![one.clone(), y2.clone(), x.clone(), xy.clone(), x2.clone()];
        v.sort();
        assert_eq!(v, vec![x2, xy, y2, x, one]);
    }

    #[test]
    fn display_matches_text_format() {
        let p = Polynomial::from_terms([
            (Monomial::from_powers([("x", 2), ("y", 1)]), q(3, 1)),
            (Monomial::one(), q(-1, 2)),
        ]);
        assert_eq!(p.to_string(), "3*x^2*y - 1/2");
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(Polynomial::var("x").neg().to_string(), "-x");
    }

    #[test]
    fn monomial_division() {
        let a = Monomial::from_powers([("x", 2), ("y", 1)]);
        let b = Monomial::from_powers([("x", 1)]);
        assert_eq!(a.checked_div(&b), Some(Monomial::from_powers([("x", 1), ("y", 1)])));
        assert_eq!(b.checked_div(&a), None);
        assert_eq!(a.checked_div(&Monomial::var("z")), None);
    }

    #[test]
    fn exact_division_detects_remainder() {
        let x = Polynomial::var("x");
        let one = Polynomial::constant(q(1, 1));
        let x2m1 = x.mul(&x).sub(&one);
        assert_eq!(x2m1.exact_div(&x.sub(&one)), Some(x.add(&one)));
        assert_eq!(x2m1.exact_div(&x), None);
        assert_eq!(x.exact_div(&Polynomial::zero()), None);
    }
}
