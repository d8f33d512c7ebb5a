//! Recursive-descent parser for polynomial expressions in one variable.
//!
//! Accepts `t` or `p` as the variable, integer literals, `+ - * / ^`,
//! parentheses and implicit multiplication (`2t`, `t(t+1)`). Division is
//! only allowed by constants.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::IntPoly;
use crate::error::{Error, Result};

pub(super) fn parse(input: &str) -> Result<IntPoly> {
    let normalized: Vec<char> = input
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| if c == '−' { '-' } else { c })
        .collect();
    let mut parser = Parser { src: input, chars: normalized, pos: 0 };
    let value = parser.expr()?;
    if parser.pos != parser.chars.len() {
        return Err(parser.error("trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, reason: &str) -> Error {
        Error::PolyParse {
            input: self.src.to_string(),
            reason: format!("{reason} at offset {}", self.pos),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<IntPoly> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<IntPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some('/') => {
                    self.pos += 1;
                    let d = self.power()?;
                    let c = match d.degree() {
                        Some(0) => d.coeff(0),
                        _ => return Err(self.error("division by a non-constant")),
                    };
                    acc = acc.scale(&(BigRational::from_integer(1.into()) / c));
                }
                Some(c) if c == '(' || c == 't' || c == 'p' || c.is_ascii_digit() => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<IntPoly> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<IntPoly> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let e = self.integer()?;
        let e: usize = e
            .try_into()
            .map_err(|_| self.error("exponent out of range"))?;
        Ok((0..e).fold(IntPoly::one(), |acc, _| &acc * &base))
    }

    fn atom(&mut self) -> Result<IntPoly> {
        match self.peek() {
            Some('t' | 'p') => {
                self.pos += 1;
                Ok(IntPoly::t())
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let c = BigRational::from_integer(n);
                Ok(if c.is_zero() { IntPoly::zero() } else { IntPoly::constant(c) })
            }
            _ => Err(self.error("expected a term")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().map_err(|_| self.error("bad integer"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_closed_form_expressions() {
        let f = parse("p(p+1)^2(p+2)/12-p(p-1)^2(p-2)/12").unwrap();
        assert_eq!(f, parse("t(2t^2+1)/3").unwrap());
        assert_eq!(parse("p^4").unwrap(), IntPoly::t_pow(4));
        assert_eq!(parse("1").unwrap(), IntPoly::one());
        assert_eq!(parse("-3t + 2*t").unwrap(), -IntPoly::t());
        assert_eq!(parse("p^3+p^2+p").unwrap(), IntPoly::from_ints(&[0, 1, 1, 1]));
        assert_eq!(parse("t − 1").unwrap(), IntPoly::affine(-1, 1));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse("t+").is_err());
        assert!(parse("t/(t+1)").is_err());
        assert!(parse("x").is_err());
        assert!(parse("(t").is_err());
        assert!(parse("t)").is_err());
    }
}
