use std::cmp::Ordering;
use std::fmt;

use super::{is_irreducible, FieldElement, FiniteField, Poly, RatFunc};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum PlaceKind {
    /// The place `(π)` for a monic irreducible `π`.
    Finite(Poly),
    Infinity,
}

/// A closed point of `P¹` over `F_q`, together with its residue field and the
/// image of `t` there (for finite places).
#[derive(Clone)]
pub struct Place {
    kind: PlaceKind,
    base: FiniteField,
    residue: FiniteField,
    root: FieldElement,
}

impl Place {
    pub fn finite(pi: Poly) -> Result<Place> {
        if !pi.is_monic() || !is_irreducible(&pi) {
            return Err(Error::NotIrreducible(pi.to_string()));
        }
        let base = pi.field().clone();
        let (residue, root) = if pi.degree() == Some(1) {
            (base.clone(), -&pi.coeff(0))
        } else {
            let kappa = base.extension_unchecked(&pi)?;
            // the class of t in F_q[t]/(π) is the adjoined generator
            let mut c = vec![0; kappa.degree()];
            c[base.degree()] = 1;
            let root = kappa_element(&kappa, c);
            (kappa, root)
        };
        Ok(Place { kind: PlaceKind::Finite(pi), base, residue, root })
    }

    pub fn infinity(base: &FiniteField) -> Place {
        Place {
            kind: PlaceKind::Infinity,
            base: base.clone(),
            residue: base.clone(),
            root: base.zero(),
        }
    }

    pub fn kind(&self) -> &PlaceKind {
        &self.kind
    }

    pub fn is_infinity(&self) -> bool {
        self.kind == PlaceKind::Infinity
    }

    pub fn base(&self) -> &FiniteField {
        &self.base
    }

    pub fn degree(&self) -> usize {
        match &self.kind {
            PlaceKind::Finite(pi) => pi.degree().unwrap_or(0),
            PlaceKind::Infinity => 1,
        }
    }

    /// `F_q[t]/(π)` for finite places, `F_q` at infinity.
    pub fn residue_field(&self) -> &FiniteField {
        &self.residue
    }

    /// `π` for finite places, `1/t` at infinity.
    pub fn uniformizer(&self) -> RatFunc {
        match &self.kind {
            PlaceKind::Finite(pi) => RatFunc::from_poly(pi.clone()),
            PlaceKind::Infinity => RatFunc::t(&self.base).inv().expect("t is nonzero"),
        }
    }

    pub fn valuation(&self, f: &RatFunc) -> Result<i64> {
        if f.is_zero() {
            return Err(Error::ValuationOfZero);
        }
        match &self.kind {
            PlaceKind::Finite(pi) => {
                let (a, _) = f.num().split_off(pi)?;
                let (b, _) = f.den().split_off(pi)?;
                Ok(a as i64 - b as i64)
            }
            PlaceKind::Infinity => {
                Ok(f.den().degree().unwrap() as i64 - f.num().degree().unwrap() as i64)
            }
        }
    }

    /// Image in `κ(P)*` of a function with valuation zero.
    pub fn reduce_at(&self, f: &RatFunc) -> Result<FieldElement> {
        let (v, u) = self.unit_part(f)?;
        if v != 0 {
            return Err(Error::NotAUnit(self.to_string()));
        }
        Ok(u)
    }

    /// `(v_P(f), reduction of f·π_P^(-v_P(f)))`.
    pub fn unit_part(&self, f: &RatFunc) -> Result<(i64, FieldElement)> {
        if f.is_zero() {
            return Err(Error::ValuationOfZero);
        }
        match &self.kind {
            PlaceKind::Finite(pi) => {
                let (a, num) = f.num().split_off(pi)?;
                let (b, den) = f.den().split_off(pi)?;
                let u = &num.eval(&self.root)? * &den.eval(&self.root)?.inv()?;
                Ok((a as i64 - b as i64, u))
            }
            PlaceKind::Infinity => {
                let v = self.valuation(f)?;
                let u = f.num().leading().unwrap() * &f.den().leading().unwrap().inv()?;
                Ok((v, u))
            }
        }
    }

    /// Image of a polynomial in the residue field (finite places only).
    pub fn reduce_poly(&self, p: &Poly) -> Result<FieldElement> {
        p.eval(&self.root)
    }

    /// All finite places dividing the numerator or denominator of `f`.
    pub fn support(f: &RatFunc) -> Result<Vec<Place>> {
        let mut out = Vec::new();
        for p in [f.num(), f.den()] {
            if p.is_constant() {
                continue;
            }
            for (g, _) in super::factor(p)?.factors {
                out.push(Place::finite(g)?);
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

fn kappa_element(kappa: &FiniteField, coords: Vec<u64>) -> FieldElement {
    let p = kappa.characteristic();
    let index = coords.iter().rev().fold(0u64, |acc, &d| acc * p + d);
    kappa.element(index)
}

impl PartialEq for Place {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.base == other.base
    }
}

impl Eq for Place {}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Finite places by (degree, coefficients); infinity last.
impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.kind, &other.kind) {
            (PlaceKind::Infinity, PlaceKind::Infinity) => Ordering::Equal,
            (PlaceKind::Infinity, _) => Ordering::Greater,
            (_, PlaceKind::Infinity) => Ordering::Less,
            (PlaceKind::Finite(a), PlaceKind::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            PlaceKind::Finite(pi) => write!(f, "({pi})"),
            PlaceKind::Infinity => write!(f, "inf"),
        }
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
