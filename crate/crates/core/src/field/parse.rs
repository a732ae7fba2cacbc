//! Text grammar for polynomials and rational functions in `t`:
//! integer coefficients, `+ - * / ^`, parentheses, e.g. `t^2+3*t+1`,
//! `(t+3)/(t+1)`. Juxtaposition multiplies (`3t`).

use super::{FiniteField, Place, Poly, RatFunc};
use crate::error::{Error, Result};

pub fn parse_ratfunc(field: &FiniteField, s: &str) -> Result<RatFunc> {
    let mut p = Parser::new(field, s);
    let r = p.expr()?;
    p.finish()?;
    Ok(r)
}

/// Like [`parse_ratfunc`] but rejects non-polynomial results.
pub fn parse_poly(field: &FiniteField, s: &str) -> Result<Poly> {
    let r = parse_ratfunc(field, s)?;
    if !r.den().is_one() {
        return Err(Error::Parse(format!("`{s}` is not a polynomial")));
    }
    Ok(r.num().clone())
}

/// `inf`/`infinity`/`∞`, or a polynomial which is made monic and must be irreducible.
pub fn parse_place(field: &FiniteField, s: &str) -> Result<Place> {
    let trimmed = s.trim();
    if matches!(trimmed, "inf" | "infinity" | "∞" | "oo") {
        return Ok(Place::infinity(field));
    }
    let p = parse_poly(field, trimmed)?;
    if p.degree().unwrap_or(0) == 0 {
        return Err(Error::Parse(format!("`{s}` is not a place")));
    }
    Place::finite(p.monic())
}

pub(crate) struct Parser<'a> {
    field: &'a FiniteField,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    pub(crate) fn new(field: &'a FiniteField, s: &str) -> Self {
        Parser { field, chars: s.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0 }
    }

    pub(crate) fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    pub(crate) fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<()> {
        match self.bump() {
            Some(d) if d == c => Ok(()),
            other => Err(self.error(&format!("expected `{c}`, found {other:?}"))),
        }
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    pub(crate) fn finish(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("trailing input"))
        }
    }

    pub(crate) fn error(&self, msg: &str) -> Error {
        let s: String = self.chars.iter().collect();
        Error::Parse(format!("{msg} at position {} in `{s}`", self.pos))
    }

    pub(crate) fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.error("integer too large"))
    }

    pub(crate) fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.bump();
                self.term()?.neg()
            }
            Some('+') => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some('+') => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some('-') => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.bump();
                    acc = acc.mul(&self.power()?);
                }
                Some('/') => {
                    self.bump();
                    let d = self.power()?;
                    acc = acc.div(&d).map_err(|_| self.error("division by zero"))?;
                }
                Some('t') | Some('(') => acc = acc.mul(&self.power()?),
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.bump();
            let e = self.integer()?;
            let e = i64::try_from(e).map_err(|_| self.error("exponent too large"))?;
            return base.pow(e).map_err(|_| self.error("zero to a power"));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFunc> {
        match self.peek() {
            Some('t') => {
                self.bump();
                Ok(RatFunc::t(self.field))
            }
            Some('(') => {
                self.bump();
                let r = self.expr()?;
                self.expect(')')?;
                Ok(r)
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()? % self.field.characteristic();
                Ok(RatFunc::from_int(self.field, v as i64))
            }
            other => Err(self.error(&format!("unexpected {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_polynomials() {
        let f5 = FiniteField::prime(5).unwrap();
        assert_eq!(parse_poly(&f5, "t^2+3*t+1").unwrap(), Poly::from_ints(&f5, &[1, 3, 1]));
        assert_eq!(parse_poly(&f5, "3t - 7").unwrap(), Poly::from_ints(&f5, &[-7, 3]));
        assert_eq!(parse_poly(&f5, "-(t+1)^2").unwrap(), Poly::from_ints(&f5, &[-1, -2, -1]));
        assert!(parse_poly(&f5, "1/t").is_err());
    }

    #[test]
    fn parses_rational_functions() {
        let f5 = FiniteField::prime(5).unwrap();
        let r = parse_ratfunc(&f5, "(t+3)/(t+1)").unwrap();
        assert_eq!(r.num(), &Poly::from_ints(&f5, &[3, 1]));
        assert_eq!(r.den(), &Poly::from_ints(&f5, &[1, 1]));
        let r = parse_ratfunc(&f5, "t^2/(t+1)").unwrap();
        assert_eq!(r.num(), &Poly::from_ints(&f5, &[0, 0, 1]));
        assert!(parse_ratfunc(&f5, "1/0").is_err());
        assert!(parse_ratfunc(&f5, "t+").is_err());
        assert!(parse_ratfunc(&f5, "t)").is_err());
        assert!(parse_ratfunc(&f5, "x").is_err());
    }

    #[test]
    fn parses_places() {
        let f5 = FiniteField::prime(5).unwrap();
        assert!(parse_place(&f5, "inf").unwrap().is_infinity());
        assert_eq!(parse_place(&f5, "2t").unwrap().to_string(), "(t)");
        assert!(parse_place(&f5, "t^2-1").is_err());
        assert!(parse_place(&f5, "3").is_err());
    }
}
