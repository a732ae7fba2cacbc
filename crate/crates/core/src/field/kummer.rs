//! The identification `κ*/(κ*)ⁿ ≅ Z/n` through a fixed primitive n-th root of
//! unity `ζ ∈ F_q`: `u ↦ m` where `u^((|κ|-1)/n) = ζ^m`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{int, FieldElement, FiniteField};
use crate::error::{Error, Result};

/// A base field `F_q` together with `n | q - 1` and the chosen `ζ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kummer {
    field: FiniteField,
    n: u64,
    zeta: FieldElement,
}

impl Kummer {
    /// Picks `ζ` as the smallest element (in index order) of exact order `n`.
    pub fn new(field: &FiniteField, n: u64) -> Result<Self> {
        let q = field.order();
        if n == 0 || !(q - 1).is_multiple_of(n) {
            return Err(Error::ModulusDoesNotDivide { n, q });
        }
        let zeta = field
            .units()
            .find(|x| x.multiplicative_order().ok() == Some(n))
            .expect("F_q* is cyclic of order q-1");
        Ok(Kummer { field: field.clone(), n, zeta })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn zeta(&self) -> &FieldElement {
        &self.zeta
    }

    pub fn class(&self, value: i64) -> ResidueClass {
        ResidueClass {
            n: self.n,
            value: value.rem_euclid(self.n as i64) as u64,
            zeta: self.zeta.clone(),
        }
    }

    pub fn zero(&self) -> ResidueClass {
        self.class(0)
    }

    /// Power-residue character on `κ*` for any extension `κ` of the base field.
    pub fn character(&self, u: &FieldElement) -> Result<ResidueClass> {
        power_residue_character(u, self.n, &self.zeta)
    }

    pub fn corestrict(&self, u: &FieldElement) -> Result<ResidueClass> {
        corestrict(u, self)
    }
}

/// An element of `Z/n`, read as a class in `κ*/(κ*)ⁿ` through `zeta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueClass {
    n: u64,
    value: u64,
    zeta: FieldElement,
}

/// Wire form: `{value, n, zeta}` with `zeta` printed as a field element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueClassJson {
    pub value: u64,
    pub n: u64,
    pub zeta: String,
}

impl ResidueClass {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn zeta(&self) -> &FieldElement {
        &self.zeta
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn add(&self, other: &ResidueClass) -> Result<ResidueClass> {
        if self.n != other.n {
            return Err(Error::ModulusMismatch(self.n, other.n));
        }
        if self.zeta != other.zeta {
            return Err(Error::FieldMismatch);
        }
        Ok(ResidueClass { value: (self.value + other.value) % self.n, ..self.clone() })
    }

    pub fn scale(&self, k: i64) -> ResidueClass {
        let n = self.n as i128;
        let value = (self.value as i128 * k as i128).rem_euclid(n) as u64;
        ResidueClass { value, ..self.clone() }
    }

    pub fn neg(&self) -> ResidueClass {
        self.scale(-1)
    }

    pub fn to_json(&self) -> ResidueClassJson {
        ResidueClassJson { value: self.value, n: self.n, zeta: self.zeta.to_string() }
    }
}

impl fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// `m` with `u^((|κ|-1)/n) = zeta^m`, where `κ` is the field of `u`.
pub fn power_residue_character(u: &FieldElement, n: u64, zeta: &FieldElement) -> Result<ResidueClass> {
    if u.is_zero() {
        return Err(Error::ZeroElement);
    }
    let kappa = u.field();
    let order = kappa.order();
    if n == 0 || !(order - 1).is_multiple_of(n) {
        return Err(Error::ModulusDoesNotDivide { n, q: order });
    }
    let z = kappa.embed(zeta)?;
    let exact = z.pow(n).is_one() && int::prime_divisors(n).iter().all(|r| !z.pow(n / r).is_one());
    if !exact {
        return Err(Error::BadZeta(n));
    }
    let w = u.pow((order - 1) / n);
    let mut acc = kappa.one();
    for m in 0..n {
        if acc == w {
            return Ok(ResidueClass { n, value: m, zeta: zeta.clone() });
        }
        acc = &acc * &z;
    }
    Err(Error::Inconsistent(format!("{u}^((|κ|-1)/{n}) is not a power of ζ")))
}

/// Class of the norm `N_{κ/F_q}(u) = u^((|κ|-1)/(q-1))` in `F_q*/(F_q*)ⁿ`.
pub fn corestrict(u: &FieldElement, kummer: &Kummer) -> Result<ResidueClass> {
    if u.is_zero() {
        return Err(Error::ZeroElement);
    }
    let kappa = u.field();
    let base = kummer.field();
    if !kappa.contains_subfield(base) {
        return Err(Error::FieldMismatch);
    }
    let norm = u.pow((kappa.order() - 1) / (base.order() - 1));
    let down = kappa
        .descend(&norm, base)
        .ok_or_else(|| Error::Inconsistent("norm does not lie in the base field".into()))?;
    kummer.character(&down)
}
