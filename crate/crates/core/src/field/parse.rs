use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{FieldError, Rat, RatFunc};

/// Recursive-descent parser for rational expressions in `s`.
///
/// ```text
/// expr   := ['+'|'-'] term (('+'|'-') term)*
/// term   := power (['*'|'/'] power)*        // '*' may be omitted
/// power  := atom ['^' integer]
/// atom   := integer | 's' | '(' expr ')'
/// ```
struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, reason: &str) -> FieldError {
        FieldError::Parse(format!("{reason} at offset {}", self.pos))
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

    fn expr(&mut self) -> Result<RatFunc, FieldError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc, FieldError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc * self.power()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.power()?;
                    acc = acc.try_div(&d)?;
                }
                Some(c) if c == b's' || c == b'(' || c.is_ascii_digit() => {
                    acc = acc * self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<RatFunc, FieldError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
            let mut acc = RatFunc::one();
            for _ in 0..e {
                acc = acc * &base;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFunc, FieldError> {
        match self.peek() {
            Some(b's') => {
                self.pos += 1;
                Ok(RatFunc::s())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(RatFunc::from_rat(Rat::from_integer(n)))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt, FieldError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse as integer"))
    }
}

impl FromStr for RatFunc {
    type Err = FieldError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut p = Parser {
            src: text.as_bytes(),
            pos: 0,
        };
        let value = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(value)
    }
}

/// Parses a rational constant such as `3`, `-1/2` or `0.25`.
pub fn parse_rat(text: &str) -> Result<Rat, FieldError> {
    let text = text.trim();
    let bad = || FieldError::Parse(format!("not a rational number: {text:?}"));
    if let Some((int, frac)) = text.split_once('.') {
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        let n: BigInt = digits.parse().map_err(|_| bad())?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let r = Rat::new(n, d);
        return Ok(if neg { -r } else { r });
    }
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(FieldError::ZeroDenominator);
        }
        return Ok(Rat::new(n, d));
    }
    let n: BigInt = text.parse().map_err(|_| bad())?;
    Ok(Rat::from_integer(n))
}

impl RatFunc {
    /// Shorthand for parsing, panicking on malformed input. Intended for
    /// tests and literals.
    pub fn parse(text: &str) -> RatFunc {
        text.parse()
            .unwrap_or_else(|e| panic!("bad rational function {text:?}: {e}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat_func, Poly};

    #[test]
    fn parses_canonical_text() {
        let f: RatFunc = "(3*s^2+2*s+2)/(s)".parse().unwrap();
        assert_eq!(f, rat_func(Poly::from_ints(&[2, 2, 3]), Poly::s()).unwrap());
    }

    #[test]
    fn implicit_multiplication() {
        let f: RatFunc = "3s^2 + 2s + 2".parse().unwrap();
        assert_eq!(f, RatFunc::from_poly(Poly::from_ints(&[2, 2, 3])));
        let g: RatFunc = "(s^2+1)/(s+2)".parse().unwrap();
        assert_eq!(g.num(), &Poly::from_ints(&[1, 0, 1]));
        assert_eq!(g.den(), &Poly::from_ints(&[2, 1]));
    }

    #[test]
    fn unary_minus_and_fractions() {
        assert_eq!(
            RatFunc::parse("-1/4"),
            RatFunc::from_rat(Rat::new((-1).into(), 4.into()))
        );
        assert_eq!(RatFunc::parse("1/(2*s)").to_string(), "(1)/(2*s)");
    }

    #[test]
    fn rejects_garbage() {
        assert!("s +".parse::<RatFunc>().is_err());
        assert!("(s".parse::<RatFunc>().is_err());
        assert!("x".parse::<RatFunc>().is_err());
        assert_eq!(
            "1/(s-s)".parse::<RatFunc>(),
            Err(FieldError::DivisionByZero)
        );
    }

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rat("1/2").unwrap(), Rat::new(1.into(), 2.into()));
        assert_eq!(parse_rat("-3").unwrap(), Rat::from_integer((-3).into()));
        assert_eq!(parse_rat("0.25").unwrap(), Rat::new(1.into(), 4.into()));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("abc").is_err());
    }
}
