use std::fmt;

use super::{FieldElement, FiniteField, Poly};
use crate::error::{Error, Result};

/// An element of `F_q(t)` in lowest terms with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroElement);
        }
        if num.is_zero() {
            let field = num.field().clone();
            return Ok(RatFunc { num, den: Poly::one(&field) });
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g)?;
        let den = den.div_exact(&g)?;
        let lc = den.leading().unwrap().inv()?;
        Ok(RatFunc { num: num.scale(&lc), den: den.scale(&lc) })
    }

    pub fn from_poly(p: Poly) -> Self {
        let field = p.field().clone();
        RatFunc { num: p, den: Poly::one(&field) }
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_int(field: &FiniteField, v: i64) -> Self {
        Self::constant(field.from_int(v))
    }

    pub fn t(field: &FiniteField) -> Self {
        Self::from_poly(Poly::t(field))
    }

    pub fn field(&self) -> &FiniteField {
        self.num.field()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        Self::new(&self.num * &other.num, &self.den * &other.den).expect("nonzero denominators")
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        Self::new(num, &self.den * &other.den).expect("nonzero denominators")
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<RatFunc> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(RatFunc { num: base.num.pow(k), den: base.den.pow(k) })
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &Poly| {
            let s = p.to_string();
            if s.contains('+') || s.contains('*') {
                format!("({s})")
            } else {
                s
            }
        };
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
