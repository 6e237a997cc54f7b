use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{Monomial, Polynomial, Scalar};
use crate::error::{Error, Result};

/// Indeterminate names: `[A-Za-z_][A-Za-z0-9_()]*`.
pub fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(is_name_char)
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '(' || c == ')'
}

/// Parses the scalar text format: `-?[0-9]+`, `p/q`, or a signed sum of
/// terms such as `3*x^2*y - 1/2`.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    Parser {
        src: text.as_bytes(),
        pos: 0,
    }
    .expr()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

enum Factor {
    Number(BigInt),
    Fraction(BigRational),
    Power(String, u32),
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax(format!(
            "{msg} at column {} in {:?}",
            self.pos + 1,
            String::from_utf8_lossy(self.src)
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            None => return Err(self.err("empty scalar")),
            _ => false,
        };
        let mut acc: Option<Scalar> = None;
        loop {
            let t = self.term()?;
            let t = if negative { -t } else { t };
            acc = Some(match acc {
                None => t,
                Some(a) => a + t,
            });
            match self.peek() {
                None => break,
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(_) => return Err(self.err("expected '+', '-' or '*'")),
            }
            self.pos += 1;
        }
        Ok(acc.expect("at least one term"))
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut coeff: Option<Scalar> = None;
        let mut powers: Vec<(String, u32)> = Vec::new();
        loop {
            match self.factor()? {
                Factor::Number(n) => {
                    let v = Scalar::Integer(n);
                    coeff = Some(coeff.map_or(v.clone(), |c| &c * &v));
                }
                Factor::Fraction(r) => {
                    let v = Scalar::Rational(r);
                    coeff = Some(coeff.map_or(v.clone(), |c| &c * &v));
                }
                Factor::Power(name, e) => powers.push((name, e)),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        let coeff = coeff.unwrap_or_else(Scalar::one);
        if powers.is_empty() {
            return Ok(coeff);
        }
        let rational = coeff.to_rational().expect("numeric coefficient");
        let mono = Monomial::from_powers(powers);
        Ok(Scalar::Polynomial(Polynomial::from_terms([(mono, rational)])))
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn factor(&mut self) -> Result<Factor> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().expect("digit").parse().expect("digits");
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let Some(den) = self.digits() else {
                        return Err(self.err("expected denominator"));
                    };
                    let den: BigInt = den.parse().expect("digits");
                    if den.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    Ok(Factor::Fraction(BigRational::new(num, den)))
                } else {
                    Ok(Factor::Number(num))
                }
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                self.pos += 1;
                while self.pos < self.src.len() && is_name_char(self.src[self.pos] as char) {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos])
                    .expect("ascii")
                    .to_owned();
                let mut exp = 1u32;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.skip_ws();
                    let Some(digits) = self.digits() else {
                        return Err(self.err("expected exponent"));
                    };
                    exp = digits.parse().map_err(|_| self.err("exponent out of range"))?;
                }
                Ok(Factor::Power(name, exp))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}
