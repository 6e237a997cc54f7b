//! Exact scalars: big integers, big rationals and sparse polynomials over
//! the rationals, behind one `Scalar` type.
//!
//! Mixed operations promote along Integer → Rational → Polynomial. Values
//! keep the variant they were computed in (a rational `4/2` stays a
//! rational), but equality compares values, so `Integer(2) == Rational(2)`.

mod parse;
mod poly;

use std::collections::BTreeMap;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use parse::{is_valid_name, parse_scalar};
pub use poly::{Monomial, Polynomial};

use crate::error::{Error, Result};
use poly::int_to_rational;

#[derive(Clone, Debug)]
pub enum Scalar {
    Integer(BigInt),
    Rational(BigRational),
    Polynomial(Polynomial),
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Integer(BigInt::zero())
    }

    pub fn one() -> Self {
        Scalar::Integer(BigInt::one())
    }

    pub fn int(v: i64) -> Self {
        Scalar::Integer(BigInt::from(v))
    }

    /// `num/den` as a rational. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn var(name: impl Into<String>) -> Self {
        Scalar::Polynomial(Polynomial::var(name))
    }

    fn rank(&self) -> u8 {
        match self {
            Scalar::Integer(_) => 0,
            Scalar::Rational(_) => 1,
            Scalar::Polynomial(_) => 2,
        }
    }

    pub fn variant_name(&self) -> &'static str {
        match self {
            Scalar::Integer(_) => "integer",
            Scalar::Rational(_) => "rational",
            Scalar::Polynomial(_) => "polynomial",
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Integer(i) => i.is_zero(),
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Polynomial(p) => p.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Integer(i) => i.is_one(),
            Scalar::Rational(r) => r.is_one(),
            Scalar::Polynomial(p) => p.as_constant().is_some_and(|c| c.is_one()),
        }
    }

    pub fn as_integer(&self) -> Option<&BigInt> {
        match self {
            Scalar::Integer(i) => Some(i),
            _ => None,
        }
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Integer(i) => Some(int_to_rational(i)),
            Scalar::Rational(r) => Some(r.clone()),
            Scalar::Polynomial(p) => p.as_constant(),
        }
    }

    fn to_polynomial(&self) -> Polynomial {
        match self {
            Scalar::Integer(i) => Polynomial::constant(int_to_rational(i)),
            Scalar::Rational(r) => Polynomial::constant(r.clone()),
            Scalar::Polynomial(p) => p.clone(),
        }
    }

    /// Re-expresses `self` in the variant of rank `rank` (never demotes).
    pub fn promote_to(&self, other: &Scalar) -> Scalar {
        if self.rank() >= other.rank() {
            return self.clone();
        }
        match other {
            Scalar::Rational(_) => Scalar::Rational(self.to_rational().expect("rank below rational")),
            Scalar::Polynomial(_) => Scalar::Polynomial(self.to_polynomial()),
            Scalar::Integer(_) => self.clone(),
        }
    }

    /// The most general variant appearing in `items`, as a zero of that
    /// variant.
    pub fn common_variant<'a, I: IntoIterator<Item = &'a Scalar>>(items: I) -> Scalar {
        let rank = items.into_iter().map(Scalar::rank).max().unwrap_or(0);
        match rank {
            0 => Scalar::zero(),
            1 => Scalar::Rational(BigRational::zero()),
            _ => Scalar::Polynomial(Polynomial::zero()),
        }
    }

    /// Exact quotient in the ring of the operands: integer division must
    /// leave no remainder, rational division always succeeds, polynomial
    /// division must be exact over the rationals.
    pub fn exact_div(&self, divisor: &Scalar) -> Result<Scalar> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match (self, divisor) {
            (Scalar::Integer(a), Scalar::Integer(b)) => {
                let (q, r) = a.div_rem(b);
                if r.is_zero() {
                    Ok(Scalar::Integer(q))
                } else {
                    Err(Error::DivisionNotExact {
                        dividend: self.to_string(),
                        divisor: divisor.to_string(),
                    })
                }
            }
            (Scalar::Polynomial(_), _) | (_, Scalar::Polynomial(_)) => {
                let a = self.to_polynomial();
                let b = divisor.to_polynomial();
                if let Some(c) = b.as_constant() {
                    return Ok(Scalar::Polynomial(a.scale(&c.recip())));
                }
                a.exact_div(&b)
                    .map(Scalar::Polynomial)
                    .ok_or_else(|| Error::DivisionNotExact {
                        dividend: self.to_string(),
                        divisor: divisor.to_string(),
                    })
            }
            _ => {
                let a = self.to_rational().expect("non-polynomial");
                let b = divisor.to_rational().expect("non-polynomial");
                Ok(Scalar::Rational(a / b))
            }
        }
    }

    /// Substitutes indeterminates by scalars. Unbound names stay symbolic.
    /// A polynomial that becomes constant is returned as an integer when its
    /// value is integral and as a rational otherwise.
    pub fn substitute(&self, bindings: &BTreeMap<String, Scalar>) -> Scalar {
        let p = match self {
            Scalar::Polynomial(p) => p,
            other => return other.clone(),
        };
        let mut acc = Scalar::zero();
        for (m, c) in p.terms() {
            let mut term = Scalar::Rational(c.clone());
            let mut rest = Vec::new();
            for (name, e) in m.powers() {
                match bindings.get(name) {
                    Some(v) => {
                        for _ in 0..e {
                            term = &term * v;
                        }
                    }
                    None => rest.push((name.to_owned(), e)),
                }
            }
            if !rest.is_empty() {
                let free = Polynomial::from_terms([(Monomial::from_powers(rest), BigRational::one())]);
                term = &term * &Scalar::Polynomial(free);
            }
            acc += &term;
        }
        acc.simplified()
    }

    /// Demotes constants: a constant polynomial becomes a rational, an
    /// integral rational becomes an integer.
    pub fn simplified(self) -> Scalar {
        match self {
            Scalar::Polynomial(p) => match p.as_constant() {
                Some(c) => Scalar::Rational(c).simplified(),
                None => Scalar::Polynomial(p),
            },
            Scalar::Rational(r) if r.denom().is_one() => Scalar::Integer(r.numer().clone()),
            other => other,
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one().promote_to(self);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn is_negative_integer(&self) -> bool {
        matches!(self, Scalar::Integer(i) if i.is_negative())
    }
}

fn binary(a: &Scalar, b: &Scalar, op: Op) -> Scalar {
    match (a, b) {
        (Scalar::Integer(x), Scalar::Integer(y)) => Scalar::Integer(match op {
            Op::Add => x + y,
            Op::Sub => x - y,
            Op::Mul => x * y,
        }),
        (Scalar::Polynomial(_), _) | (_, Scalar::Polynomial(_)) => {
            let (x, y) = (a.to_polynomial(), b.to_polynomial());
            Scalar::Polynomial(match op {
                Op::Add => x.add(&y),
                Op::Sub => x.sub(&y),
                Op::Mul => x.mul(&y),
            })
        }
        _ => {
            let (x, y) = (a.to_rational().expect("rational"), b.to_rational().expect("rational"));
            Scalar::Rational(match op {
                Op::Add => x + y,
                Op::Sub => x - y,
                Op::Mul => x * y,
            })
        }
    }
}

#[derive(Clone, Copy)]
enum Op {
    Add,
    Sub,
    Mul,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Integer(a), Scalar::Integer(b)) => a == b,
            (Scalar::Polynomial(_), _) | (_, Scalar::Polynomial(_)) => self.to_polynomial() == other.to_polynomial(),
            _ => self.to_rational() == other.to_rational(),
        }
    }
}

impl Eq for Scalar {}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        binary(self, rhs, Op::Add)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        binary(self, rhs, Op::Sub)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        binary(self, rhs, Op::Mul)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(mut self, rhs: Scalar) -> Scalar {
        self += &rhs;
        self
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(mut self, rhs: Scalar) -> Scalar {
        self -= &rhs;
        self
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Integer(x), Scalar::Integer(y)) => *x += y,
            (Scalar::Rational(x), Scalar::Rational(y)) => *x += y,
            (Scalar::Polynomial(x), Scalar::Polynomial(y)) => x.add_assign(y),
            _ => *self = binary(self, rhs, Op::Add),
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Integer(x), Scalar::Integer(y)) => *x -= y,
            (Scalar::Rational(x), Scalar::Rational(y)) => *x -= y,
            _ => *self = binary(self, rhs, Op::Sub),
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Integer(x), Scalar::Integer(y)) => *x *= y,
            (Scalar::Rational(x), Scalar::Rational(y)) => *x *= y,
            _ => *self = binary(self, rhs, Op::Mul),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Integer(i) => Scalar::Integer(-i),
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Polynomial(p) => Scalar::Polynomial(p.neg()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl<'a> Sum<&'a Scalar> for Scalar {
    fn sum<I: Iterator<Item = &'a Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |mut acc, x| {
            acc *= &x;
            acc
        })
    }
}

impl<'a> Product<&'a Scalar> for Scalar {
    fn product<I: Iterator<Item = &'a Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |mut acc, x| {
            acc *= x;
            acc
        })
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::int(v)
    }
}

impl From<BigInt> for Scalar {
    fn from(v: BigInt) -> Self {
        Scalar::Integer(v)
    }
}

impl From<BigRational> for Scalar {
    fn from(v: BigRational) -> Self {
        Scalar::Rational(v)
    }
}

impl From<Polynomial> for Scalar {
    fn from(v: Polynomial) -> Self {
        Scalar::Polynomial(v)
    }
}

/// Canonical text: integers in decimal, rationals as `p/q` (or `p` when
/// integral), polynomials as signed terms in graded-lex order.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Integer(i) => write!(f, "{i}"),
            Scalar::Rational(r) => poly::fmt_rational(f, r),
            Scalar::Polynomial(p) => write!(f, "{p}"),
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Scalar> {
        parse_scalar(s)
    }
}
