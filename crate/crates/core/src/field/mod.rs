//! Exact arithmetic over finite fields, `F_q[t]` and `F_q(t)`.
//!
//! A [`FiniteField`] is either a prime field `F_p` or a simple extension
//! `B[y]/(m(y))` of another finite field `B`. Residue fields of places of
//! `F_q(t)` are built as such extensions of `F_q`, so the inclusion
//! `F_q ⊂ κ(P)` is literal: an element of the base sits in the constant
//! chunk of the extension's coordinate vector.

mod factor;
mod kummer;
mod parse;
mod place;
mod poly;
mod ratfunc;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};

pub use factor::{factor, is_irreducible, Factorization};
pub use kummer::{corestrict, power_residue_character, Kummer, ResidueClass, ResidueClassJson};
pub use parse::{parse_place, parse_poly, parse_ratfunc};
pub(crate) use parse::Parser;
pub use place::{Place, PlaceKind};
pub use poly::Poly;
pub use ratfunc::RatFunc;

/// Largest field order we are willing to represent.
const MAX_ORDER: u64 = 1 << 62;

/// Integer helpers shared by the field and cohomology code.
pub(crate) mod int {
    pub fn is_prime(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let mut d = 2u64;
        while d * d <= n {
            if n.is_multiple_of(d) {
                return false;
            }
            d += 1;
        }
        true
    }

    /// Distinct prime divisors, ascending.
    pub fn prime_divisors(mut n: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut d = 2u64;
        while d * d <= n {
            if n.is_multiple_of(d) {
                out.push(d);
                while n.is_multiple_of(d) {
                    n /= d;
                }
            }
            d += 1;
        }
        if n > 1 {
            out.push(n);
        }
        out
    }

    /// Returns `(p, d)` with `q = p^d`, if `q` is a prime power.
    pub fn prime_power(q: u64) -> Option<(u64, u32)> {
        let ps = prime_divisors(q);
        if ps.len() != 1 {
            return None;
        }
        let p = ps[0];
        let mut d = 0;
        let mut r = q;
        while r > 1 {
            r /= p;
            d += 1;
        }
        Some((p, d))
    }

    pub fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    /// Extended gcd on signed integers: returns `(g, x, y)` with `a x + b y = g >= 0`.
    pub fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
        if b == 0 {
            if a < 0 {
                (-a, -1, 0)
            } else {
                (a, 1, 0)
            }
        } else {
            let (g, x, y) = egcd(b, a.rem_euclid(b));
            (g, y, x - a.div_euclid(b) * y)
        }
    }

    /// Inverse of `a` modulo `m`, if it exists.
    pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
        if m == 1 {
            return Some(0);
        }
        let (g, x, _) = egcd(a as i128, m as i128);
        (g == 1).then(|| x.rem_euclid(m as i128) as u64)
    }
}

#[derive(Debug)]
struct Inner {
    p: u64,
    degree: usize,
    order: u64,
    base: Option<FiniteField>,
    /// Monic modulus over `base`, low to high; each coefficient is a flat base element.
    modulus: Vec<Vec<u64>>,
}

/// A finite field, shared cheaply by reference counting.
#[derive(Clone)]
pub struct FiniteField(Arc<Inner>);

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p
                && self.0.degree == other.0.degree
                && self.0.modulus == other.0.modulus
                && self.0.base == other.0.base)
    }
}

impl Eq for FiniteField {}

impl Hash for FiniteField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.order.hash(state);
        self.0.modulus.hash(state);
    }
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.order)
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.order)
    }
}

impl FiniteField {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Self> {
        if !int::is_prime(p) {
            return Err(Error::NotPrimePower(p));
        }
        if p >= 1 << 31 {
            return Err(Error::FieldTooLarge(format!("p = {p}")));
        }
        Ok(FiniteField(Arc::new(Inner {
            p,
            degree: 1,
            order: p,
            base: None,
            modulus: Vec::new(),
        })))
    }

    /// `F_q` for a prime power `q`. Non-prime orders are realised over `F_p`
    /// by the smallest monic irreducible polynomial of the right degree.
    pub fn new(q: u64) -> Result<Self> {
        let (p, d) = int::prime_power(q).ok_or(Error::NotPrimePower(q))?;
        let fp = Self::prime(p)?;
        if d == 1 {
            return Ok(fp);
        }
        let modulus = fp
            .smallest_irreducible(d as usize)
            .ok_or_else(|| Error::FieldTooLarge(format!("no irreducible of degree {d}")))?;
        fp.extension(&modulus)
    }

    /// `self[y]/(modulus)`; the modulus must be monic irreducible over `self`.
    pub fn extension(&self, modulus: &Poly) -> Result<Self> {
        if modulus.field() != self || !modulus.is_monic() || !is_irreducible(modulus) {
            return Err(Error::NotIrreducible(modulus.to_string()));
        }
        self.extension_unchecked(modulus)
    }

    pub(crate) fn extension_unchecked(&self, modulus: &Poly) -> Result<Self> {
        let k = modulus.degree().unwrap_or(0);
        let degree = self.0.degree * k;
        let order = (0..k).try_fold(1u64, |acc, _| {
            acc.checked_mul(self.0.order).filter(|&o| o <= MAX_ORDER)
        });
        let order = order.ok_or_else(|| Error::FieldTooLarge(format!("{}^{k}", self.0.order)))?;
        Ok(FiniteField(Arc::new(Inner {
            p: self.0.p,
            degree,
            order,
            base: Some(self.clone()),
            modulus: modulus.coeffs().iter().map(|c| c.c.clone()).collect(),
        })))
    }

    /// Smallest (by coefficient index order) monic irreducible polynomial of degree `d`.
    pub fn smallest_irreducible(&self, d: usize) -> Option<Poly> {
        let q = self.order();
        let count = q.checked_pow(d as u32)?;
        (0..count).find_map(|mut idx| {
            let mut coeffs = Vec::with_capacity(d + 1);
            for _ in 0..d {
                coeffs.push(self.element(idx % q));
                idx /= q;
            }
            coeffs.push(self.one());
            let f = Poly::new(self, coeffs);
            is_irreducible(&f).then_some(f)
        })
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub fn order(&self) -> u64 {
        self.0.order
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    /// Degree over the immediate base field (1 for a prime field).
    pub fn relative_degree(&self) -> usize {
        if self.0.base.is_some() {
            self.0.modulus.len() - 1
        } else {
            1
        }
    }

    pub fn base(&self) -> Option<&FiniteField> {
        self.0.base.as_ref()
    }

    /// Defining polynomial over the immediate base, if this is an extension.
    pub fn modulus(&self) -> Option<Poly> {
        let base = self.0.base.as_ref()?;
        let coeffs = self
            .0
            .modulus
            .iter()
            .map(|c| FieldElement { field: base.clone(), c: c.clone() })
            .collect();
        Some(Poly::new(base, coeffs))
    }

    /// True when `sub` is `self` or one of its iterated base fields.
    pub fn contains_subfield(&self, sub: &FiniteField) -> bool {
        let mut cur = Some(self);
        while let Some(f) = cur {
            if f == sub {
                return true;
            }
            cur = f.base();
        }
        false
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: self.clone(), c: vec![0; self.0.degree] }
    }

    pub fn one(&self) -> FieldElement {
        let mut c = vec![0; self.0.degree];
        c[0] = 1;
        FieldElement { field: self.clone(), c }
    }

    /// Image of an integer under `Z → F_p ⊂ self`.
    pub fn from_int(&self, v: i64) -> FieldElement {
        let mut c = vec![0; self.0.degree];
        c[0] = v.rem_euclid(self.0.p as i64) as u64;
        FieldElement { field: self.clone(), c }
    }

    /// The element whose base-`p` digits are the coordinates; `index < order`.
    pub fn element(&self, mut index: u64) -> FieldElement {
        let p = self.0.p;
        let c = (0..self.0.degree)
            .map(|_| {
                let d = index % p;
                index /= p;
                d
            })
            .collect();
        FieldElement { field: self.clone(), c }
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.0.order).map(move |i| self.element(i))
    }

    /// Nonzero elements in index order.
    pub fn units(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (1..self.0.order).map(move |i| self.element(i))
    }

    /// The smallest generator of the multiplicative group.
    pub fn generator(&self) -> FieldElement {
        let m = self.order() - 1;
        let primes = int::prime_divisors(m);
        self.units()
            .find(|g| primes.iter().all(|r| !g.pow(m / r).is_one()))
            .expect("the multiplicative group of a finite field is cyclic")
    }

    /// The image of `x` under the inclusion of one of our subfields.
    pub fn embed(&self, x: &FieldElement) -> Result<FieldElement> {
        if &x.field == self {
            return Ok(x.clone());
        }
        let base = self.0.base.as_ref().ok_or(Error::FieldMismatch)?;
        let y = base.embed(x)?;
        let mut c = vec![0; self.0.degree];
        c[..y.c.len()].copy_from_slice(&y.c);
        Ok(FieldElement { field: self.clone(), c })
    }

    /// Inverse of [`embed`](Self::embed): `Some` when `x` lies in `sub`.
    pub fn descend(&self, x: &FieldElement, sub: &FiniteField) -> Option<FieldElement> {
        if &x.field != self {
            return None;
        }
        if self == sub {
            return Some(x.clone());
        }
        let base = self.0.base.as_ref()?;
        let bd = base.0.degree;
        if x.c[bd..].iter().any(|&v| v != 0) {
            return None;
        }
        let y = FieldElement { field: base.clone(), c: x.c[..bd].to_vec() };
        base.descend(&y, sub)
    }

    fn add_slices(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = self.0.p;
        a.iter().zip(b).map(|(x, y)| (x + y) % p).collect()
    }

    fn sub_slices(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = self.0.p;
        a.iter().zip(b).map(|(x, y)| (x + p - y) % p).collect()
    }

    fn mul_slices(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = self.0.p;
        let Some(base) = self.0.base.as_ref() else {
            return vec![a[0] * b[0] % p];
        };
        let bd = base.0.degree;
        let k = self.0.modulus.len() - 1;
        let zero = vec![0u64; bd];
        let mut prod = vec![zero.clone(); 2 * k - 1];
        for (i, ai) in a.chunks(bd).enumerate() {
            if ai.iter().all(|&v| v == 0) {
                continue;
            }
            for (j, bj) in b.chunks(bd).enumerate() {
                if bj.iter().all(|&v| v == 0) {
                    continue;
                }
                let t = base.mul_slices(ai, bj);
                prod[i + j] = base.add_slices(&prod[i + j], &t);
            }
        }
        for i in (k..2 * k - 1).rev() {
            let top = std::mem::replace(&mut prod[i], zero.clone());
            if top.iter().all(|&v| v == 0) {
                continue;
            }
            for (j, mj) in self.0.modulus[..k].iter().enumerate() {
                let t = base.mul_slices(&top, mj);
                prod[i - k + j] = base.sub_slices(&prod[i - k + j], &t);
            }
        }
        prod.truncate(k);
        prod.concat()
    }
}

/// An element of a [`FiniteField`], stored as its coordinate vector over `F_p`.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: FiniteField,
    c: Vec<u64>,
}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

impl FieldElement {
    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn coords(&self) -> &[u64] {
        &self.c
    }

    /// Position in the enumeration order of [`FiniteField::elements`].
    pub fn index(&self) -> u64 {
        let p = self.field.0.p;
        self.c.iter().rev().fold(0, |acc, &d| acc * p + d)
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&v| v == 0)
    }

    pub fn is_one(&self) -> bool {
        self.c[0] == 1 && self.c[1..].iter().all(|&v| v == 0)
    }

    pub fn pow(&self, mut e: u64) -> FieldElement {
        let mut acc = self.field.one();
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

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(self.pow(self.field.order() - 2))
    }

    /// Integer power; negative exponents invert first.
    pub fn powi(&self, e: i64) -> Result<FieldElement> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let mut ord = self.field.order() - 1;
        for r in int::prime_divisors(ord) {
            while ord.is_multiple_of(r) && self.pow(ord / r).is_one() {
                ord /= r;
            }
        }
        Ok(ord)
    }

    fn check(&self, other: &FieldElement) {
        assert!(self.field == other.field, "field mismatch: {} vs {}", self.field, other.field);
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.field.base() {
            None => write!(f, "{}", self.c[0]),
            Some(base) => {
                write!(f, "[")?;
                for (i, chunk) in self.c.chunks(base.degree()).enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    let e = FieldElement { field: base.clone(), c: chunk.to_vec() };
                    write!(f, "{e}")?;
                }
                write!(f, "]")
            }
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: Self) -> FieldElement {
        self.check(rhs);
        FieldElement { field: self.field.clone(), c: self.field.add_slices(&self.c, &rhs.c) }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: Self) -> FieldElement {
        self.check(rhs);
        FieldElement { field: self.field.clone(), c: self.field.sub_slices(&self.c, &rhs.c) }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: Self) -> FieldElement {
        self.check(rhs);
        FieldElement { field: self.field.clone(), c: self.field.mul_slices(&self.c, &rhs.c) }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        &self.field.zero() - self
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}
