use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{FieldElement, FiniteField};
use crate::error::{Error, Result};

/// A univariate polynomial in `t` over a finite field. Coefficients are stored
/// low degree first with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FiniteField,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(field: &FiniteField, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    /// Builds a polynomial from integer coefficients (low degree first).
    pub fn from_ints(field: &FiniteField, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &FiniteField) -> Self {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &FiniteField) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: FieldElement) -> Self {
        let field = c.field().clone();
        Self::new(&field, vec![c])
    }

    /// The polynomial `t`.
    pub fn t(field: &FiniteField) -> Self {
        Self::new(field, vec![field.zero(), field.one()])
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of `t^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    /// Divides by the leading coefficient; the zero polynomial stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Poly {
        Self::new(&self.field, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &self.field.from_int((i as u64 % self.field.characteristic()) as i64))
            .collect();
        Self::new(&self.field, coeffs)
    }

    /// Evaluates at `x`, which may live in any extension of the coefficient field.
    pub fn eval(&self, x: &FieldElement) -> Result<FieldElement> {
        let target = x.field();
        let mut acc = target.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &target.embed(c)?;
        }
        Ok(acc)
    }

    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d.degree().ok_or(Error::ZeroElement)?;
        let inv_lc = d.leading().unwrap().inv()?;
        let mut rem = self.coeffs.clone();
        let n = match self.degree() {
            Some(n) if n >= dd => n,
            _ => return Ok((Poly::zero(&self.field), self.clone())),
        };
        let mut quot = vec![self.field.zero(); n - dd + 1];
        for i in (dd..=n).rev() {
            let c = &rem[i] * &inv_lc;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                rem[i - dd + j] = &rem[i - dd + j] - &(&c * dj);
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(&self.field, quot), Self::new(&self.field, rem)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.divrem(d)?.1)
    }

    /// Exact division; errors if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(d)?;
        if !r.is_zero() {
            return Err(Error::Inconsistent(format!("{d} does not divide {self}")));
        }
        Ok(q)
    }

    /// Monic gcd (zero when both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut acc = Poly::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Result<Poly> {
        let mut acc = Poly::one(&self.field).rem(m)?;
        let mut base = self.rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(m)?;
            }
            base = (&base * &base).rem(m)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Multiplicity of the irreducible `pi` in `self`, and the cofactor.
    pub fn split_off(&self, pi: &Poly) -> Result<(u32, Poly)> {
        if self.is_zero() {
            return Err(Error::ValuationOfZero);
        }
        let mut mult = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.divrem(pi)?;
            if !r.is_zero() {
                return Ok((mult, cur));
            }
            cur = q;
            mult += 1;
        }
    }

    fn cmp_key(&self) -> (Option<usize>, Vec<u64>) {
        (self.degree(), self.coeffs.iter().map(|c| c.index()).collect())
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then coefficient indices from the constant term up.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_key().cmp(&other.cmp_key())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: Self) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect();
        Poly::new(&self.field, coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: Self) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect();
        Poly::new(&self.field, coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: Self) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(&self.field, out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(&self.field, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let show_coeff = !c.is_one() || i == 0;
            if show_coeff {
                write!(f, "{c}")?;
            }
            match i {
                0 => {}
                1 if show_coeff => write!(f, "*t")?,
                1 => write!(f, "t")?,
                _ if show_coeff => write!(f, "*t^{i}")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
