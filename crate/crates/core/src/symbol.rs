//! Symbol classes `Σ mᵢ·(aᵢ, bᵢ)_n` in `Br(F_q(t))[n]` and their residues.
//!
//! The tame symbol at `P` is `(-1)^{v(a)v(b)} a^{v(b)} b^{-v(a)}` reduced into
//! `κ(P)*`; its power-residue character is the residue. With this
//! normalization `(π, u)` has residue `-χ(ū)` for a unit `u`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::cohomology::formal::{epsilon_cocycle, verify_coboundary_identity_power};
use crate::error::{Error, Result};
use crate::field::{FieldElement, Kummer, Parser, Place, RatFunc, ResidueClass};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolTerm {
    pub a: RatFunc,
    pub b: RatFunc,
    /// Multiplicity in `Z/n`, reduced into `[0, n)`.
    pub mult: u64,
}

/// A formal sum of symbols over `F_q(t)`, with `ζ` fixed by the [`Kummer`] datum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolClass {
    kummer: Kummer,
    terms: Vec<SymbolTerm>,
}

impl SymbolClass {
    /// The empty sum.
    pub fn zero(kummer: &Kummer) -> Self {
        SymbolClass { kummer: kummer.clone(), terms: Vec::new() }
    }

    pub fn symbol(kummer: &Kummer, a: &RatFunc, b: &RatFunc) -> Result<Self> {
        let mut s = Self::zero(kummer);
        s.push(a, b, 1)?;
        Ok(s)
    }

    /// Appends `mult·(a, b)_n`; zero multiplicities are dropped.
    pub fn push(&mut self, a: &RatFunc, b: &RatFunc, mult: i64) -> Result<()> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::ZeroSymbolArgument);
        }
        if a.field() != self.kummer.field() || b.field() != self.kummer.field() {
            return Err(Error::FieldMismatch);
        }
        let mult = mult.rem_euclid(self.n() as i64) as u64;
        if mult != 0 {
            self.terms.push(SymbolTerm { a: a.clone(), b: b.clone(), mult });
        }
        Ok(())
    }

    pub fn kummer(&self) -> &Kummer {
        &self.kummer
    }

    pub fn n(&self) -> u64 {
        self.kummer.n()
    }

    pub fn terms(&self) -> &[SymbolTerm] {
        &self.terms
    }

    pub fn add(&self, other: &SymbolClass) -> Result<SymbolClass> {
        if self.kummer != other.kummer {
            return Err(Error::ModulusMismatch(self.n(), other.n()));
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(SymbolClass { kummer: self.kummer.clone(), terms })
    }

    pub fn scale(&self, k: i64) -> SymbolClass {
        let n = self.n() as i128;
        let terms = self
            .terms
            .iter()
            .map(|t| SymbolTerm { mult: (t.mult as i128 * k as i128).rem_euclid(n) as u64, ..t.clone() })
            .filter(|t| t.mult != 0)
            .collect();
        SymbolClass { kummer: self.kummer.clone(), terms }
    }

    /// Parses `[k[*]](a, b)_n` terms joined by `+`/`-`; the empty string is `0`.
    pub fn parse(kummer: &Kummer, s: &str) -> Result<SymbolClass> {
        let field = kummer.field();
        let mut p = Parser::new(field, s);
        let mut out = Self::zero(kummer);
        let mut first = true;
        while !p.at_end() {
            let mut sign = 1i64;
            match p.peek() {
                Some('+') => {
                    p.bump();
                }
                Some('-') => {
                    p.bump();
                    sign = -1;
                }
                _ if !first => return Err(p.error("expected `+` or `-` between symbols")),
                _ => {}
            }
            first = false;
            let mut mult = 1i64;
            if p.peek().is_some_and(|c| c.is_ascii_digit()) {
                mult = (p.integer()? % kummer.n()) as i64;
                if p.peek() == Some('*') {
                    p.bump();
                }
            }
            p.expect('(')?;
            let a = p.expr()?;
            p.expect(',')?;
            let b = p.expr()?;
            p.expect(')')?;
            p.expect('_')?;
            let n = p.integer()?;
            if n != kummer.n() {
                return Err(Error::ModulusMismatch(n, kummer.n()));
            }
            out.push(&a, &b, sign * mult)?;
        }
        p.finish()?;
        Ok(out)
    }

    /// Finite places in the support of some argument, then `∞`.
    pub fn candidate_places(&self) -> Result<Vec<Place>> {
        let mut set = BTreeSet::new();
        for t in &self.terms {
            set.extend(Place::support(&t.a)?);
            set.extend(Place::support(&t.b)?);
        }
        set.insert(Place::infinity(self.kummer.field()));
        Ok(set.into_iter().collect())
    }
}

impl fmt::Display for SymbolClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if t.mult != 1 {
                write!(f, "{}*", t.mult)?;
            }
            write!(f, "({}, {})_{}", t.a, t.b, self.n())?;
        }
        Ok(())
    }
}

/// `(-1)^{v(a)v(b)} a^{v(b)} b^{-v(a)}` reduced into `κ(P)*`.
pub fn local_symbol(a: &RatFunc, b: &RatFunc, place: &Place) -> Result<FieldElement> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroSymbolArgument);
    }
    let (va, ua) = place.unit_part(a)?;
    let (vb, ub) = place.unit_part(b)?;
    // a = π^{va}·ua, b = π^{vb}·ub; the powers of π cancel in a^{vb} b^{-va}
    let mut s = &ua.powi(vb)? * &ub.powi(-va)?;
    if (va * vb) % 2 != 0 {
        s = -s;
    }
    Ok(s)
}

fn check_place(alpha: &SymbolClass, place: &Place) -> Result<()> {
    if place.base() != alpha.kummer.field() {
        return Err(Error::FieldMismatch);
    }
    Ok(())
}

/// `Π local_symbol(aᵢ, bᵢ)^{mᵢ}` in `κ(P)*`.
pub fn residue_element(alpha: &SymbolClass, place: &Place) -> Result<FieldElement> {
    check_place(alpha, place)?;
    let mut acc = place.residue_field().one();
    for t in &alpha.terms {
        acc = &acc * &local_symbol(&t.a, &t.b, place)?.pow(t.mult);
    }
    Ok(acc)
}

/// Residue of `α` at `P` in `H¹(κ(P), Z/n) = Z/n`.
pub fn tame_residue(alpha: &SymbolClass, place: &Place) -> Result<ResidueClass> {
    check_place(alpha, place)?;
    let mut acc = alpha.kummer.zero();
    for t in &alpha.terms {
        let chi = alpha.kummer.character(&local_symbol(&t.a, &t.b, place)?)?;
        acc = acc.add(&chi.scale(t.mult as i64))?;
    }
    Ok(acc)
}

/// Residue of `θ^j ∪ γ_u` at `P` read off the Čech representative on the root
/// stack: the class of `ε^j` is that of the cyclic algebra with element `a`,
/// and the residue is `v(a)·[ū]`.
pub fn residue_cocycle_route(j: i64, u: &RatFunc, place: &Place, kummer: &Kummer) -> Result<ResidueClass> {
    if place.base() != kummer.field() {
        return Err(Error::FieldMismatch);
    }
    let (v, unit) = place.unit_part(u)?;
    if v != 0 {
        return Err(Error::RamifiedGamma(place.to_string()));
    }
    let n = kummer.n();
    if !verify_coboundary_identity_power(n, j)? {
        return Err(Error::Inconsistent(format!("coboundary identity fails for n = {n}, j = {j}")));
    }
    let eps = epsilon_cocycle(n).pow(j);
    if !eps.is_cocycle() {
        return Err(Error::Inconsistent("ε^j is not a cocycle".into()));
    }
    let a = eps.cyclic_element();
    if a.zeta_exponent() != 0 {
        return Err(Error::Inconsistent(format!("cyclic element {a} has a root-of-unity part")));
    }
    let va = a
        .pi_valuation()
        .ok_or_else(|| Error::Inconsistent(format!("cyclic element {a} is not in K")))?;
    Ok(kummer.character(&unit)?.scale(va))
}

/// Nonzero residues of a symbol class, keyed by place (`∞` last).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationDivisor {
    pub entries: BTreeMap<Place, ResidueClass>,
}

impl RamificationDivisor {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn places(&self) -> impl Iterator<Item = &Place> {
        self.entries.keys()
    }
}

impl fmt::Display for RamificationDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|(p, r)| format!("{p}:{r}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub fn ramification_divisor(alpha: &SymbolClass) -> Result<RamificationDivisor> {
    let mut entries = BTreeMap::new();
    for place in alpha.candidate_places()? {
        let r = tame_residue(alpha, &place)?;
        if !r.is_zero() {
            entries.insert(place, r);
        }
    }
    Ok(RamificationDivisor { entries })
}

/// One row of [`reciprocity_report`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceResidue {
    pub place: Place,
    pub residue: ResidueClass,
    /// The residue pushed down to `H¹(F_q, Z/n)` through the norm.
    pub corestricted: ResidueClass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReciprocityReport {
    pub places: Vec<PlaceResidue>,
    pub sum: ResidueClass,
}

/// Residues and their corestrictions at every place where `α` may ramify.
pub fn reciprocity_report(alpha: &SymbolClass) -> Result<ReciprocityReport> {
    let mut sum = alpha.kummer.zero();
    let mut places = Vec::new();
    for place in alpha.candidate_places()? {
        let residue = tame_residue(alpha, &place)?;
        let corestricted = alpha.kummer.corestrict(&residue_element(alpha, &place)?)?;
        sum = sum.add(&corestricted)?;
        places.push(PlaceResidue { place, residue, corestricted });
    }
    Ok(ReciprocityReport { places, sum })
}

pub fn reciprocity_sum(alpha: &SymbolClass) -> Result<ResidueClass> {
    Ok(reciprocity_report(alpha)?.sum)
}

pub fn is_unramified_at(alpha: &SymbolClass, place: &Place) -> Result<bool> {
    Ok(tame_residue(alpha, place)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{parse_place, parse_ratfunc, FiniteField, Poly};
    use proptest::prelude::*;

    fn setup(q: u64, n: u64) -> (FiniteField, Kummer) {
        let f = FiniteField::new(q).unwrap();
        let k = Kummer::new(&f, n).unwrap();
        (f, k)
    }

    fn sym(k: &Kummer, s: &str) -> SymbolClass {
        SymbolClass::parse(k, s).unwrap()
    }

    #[test]
    fn residues_at_t() {
        let (f5, k2) = setup(5, 2);
        let t = parse_place(&f5, "t").unwrap();
        assert_eq!(tame_residue(&sym(&k2, "(t, 2)_2"), &t).unwrap().value(), 1);
        assert_eq!(tame_residue(&sym(&k2, "(t, t)_2"), &t).unwrap().value(), 0);
        assert_eq!(tame_residue(&sym(&k2, "(3, 2)_2"), &t).unwrap().value(), 0);
        let (f7, k3) = setup(7, 3);
        let t7 = parse_place(&f7, "t").unwrap();
        assert_eq!(k3.zeta(), &f7.from_int(2));
        assert_eq!(tame_residue(&sym(&k3, "(t, 3)_3"), &t7).unwrap().value(), 2);
    }

    #[test]
    fn unit_generator_has_negated_character() {
        let (f13, k4) = setup(13, 4);
        let t = parse_place(&f13, "t").unwrap();
        for c in 1..13 {
            let u = RatFunc::from_int(&f13, c);
            let chi = k4.character(&f13.from_int(c)).unwrap();
            let alpha = SymbolClass::symbol(&k4, &RatFunc::t(&f13), &u).unwrap();
            assert_eq!(tame_residue(&alpha, &t).unwrap(), chi.neg());
        }
    }

    #[test]
    fn cocycle_route_examples() {
        let (f5, k2) = setup(5, 2);
        let t = parse_place(&f5, "t").unwrap();
        let two = RatFunc::from_int(&f5, 2);
        assert_eq!(residue_cocycle_route(1, &two, &t, &k2).unwrap().value(), 1);
        assert_eq!(residue_cocycle_route(0, &two, &t, &k2).unwrap().value(), 0);
        let (f7, k3) = setup(7, 3);
        let t7 = parse_place(&f7, "t").unwrap();
        let three = RatFunc::from_int(&f7, 3);
        assert_eq!(residue_cocycle_route(1, &three, &t7, &k3).unwrap().value(), 2);
        assert_eq!(
            residue_cocycle_route(1, &RatFunc::t(&f5), &t, &k2),
            Err(Error::RamifiedGamma("(t)".into()))
        );
    }

    #[test]
    fn divisors_and_reciprocity() {
        let (f5, k2) = setup(5, 2);
        let d = ramification_divisor(&sym(&k2, "(t, 2)_2")).unwrap();
        assert_eq!(d.to_string(), "{(t):1, inf:1}");
        assert!(ramification_divisor(&sym(&k2, "(2, 3)_2")).unwrap().is_empty());
        assert!(ramification_divisor(&sym(&k2, "(t, t)_2")).unwrap().is_empty());
        assert!(reciprocity_sum(&sym(&k2, "(t, 2)_2")).unwrap().is_zero());
        let t = parse_place(&f5, "t").unwrap();
        assert!(!is_unramified_at(&sym(&k2, "(t, 2)_2"), &t).unwrap());
        assert!(is_unramified_at(&sym(&k2, "(t, 4)_2"), &t).unwrap());
        let (_, k3) = setup(7, 3);
        let report = reciprocity_report(&sym(&k3, "(t, 3)_3")).unwrap();
        let values: Vec<u64> = report.places.iter().map(|r| r.residue.value()).collect();
        assert_eq!(values, vec![2, 1]);
        assert!(report.sum.is_zero());
    }

    #[test]
    fn degree_two_place() {
        // t² + 2 is irreducible over F_5; κ = F_25
        let (f5, k2) = setup(5, 2);
        let p = parse_place(&f5, "t^2+2").unwrap();
        assert_eq!(p.residue_field().order(), 25);
        let alpha = sym(&k2, "(t^2+2, t)_2");
        let r = tame_residue(&alpha, &p).unwrap();
        let direct = k2.character(&local_symbol(&alpha.terms()[0].a, &alpha.terms()[0].b, &p).unwrap()).unwrap();
        assert_eq!(r, direct);
        assert!(reciprocity_sum(&alpha).unwrap().is_zero());
    }

    #[test]
    fn parser_forms() {
        let (f5, k2) = setup(5, 2);
        assert_eq!(sym(&k2, "").terms().len(), 0);
        let s = sym(&k2, "(t, 2)_2 + 3*(t+1, t)_2 - (2, t^2+2)_2");
        assert_eq!(s.terms().len(), 3);
        assert_eq!(s.terms()[1].mult, 1);
        assert_eq!(s.terms()[1].a, parse_ratfunc(&f5, "t+1").unwrap());
        assert_eq!(sym(&k2, "2(t, 2)_2").terms().len(), 0);
        assert!(SymbolClass::parse(&k2, "(t, 2)_3").is_err());
        assert!(SymbolClass::parse(&k2, "(t, 0)_2").is_err());
        assert!(SymbolClass::parse(&k2, "(t 2)_2").is_err());
        assert!(SymbolClass::parse(&k2, "(t, 2)_2 (t, 3)_2").is_err());
        assert_eq!(sym(&k2, "(t, 2)_2").to_string(), "(t, 2)_2");
    }

    fn poly_strategy(q: u64, max_deg: usize) -> impl Strategy<Value = Vec<u64>> {
        prop::collection::vec(0..q, 1..=max_deg + 1)
    }

    fn to_ratfunc(f: &FiniteField, num: &[u64], den: &[u64]) -> Option<RatFunc> {
        let p = |c: &[u64]| Poly::new(f, c.iter().map(|&i| f.element(i)).collect());
        let (n, d) = (p(num), p(den));
        if n.is_zero() || d.is_zero() {
            return None;
        }
        RatFunc::new(n, d).ok()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn bilinear_and_steinberg(
            a in poly_strategy(5, 3), b in poly_strategy(5, 3), b2 in poly_strategy(5, 2),
            d in poly_strategy(5, 2), pi in poly_strategy(5, 2),
        ) {
            let (f5, k4) = setup(5, 4);
            let Some(a) = to_ratfunc(&f5, &a, &d) else { return Ok(()) };
            let Some(b) = to_ratfunc(&f5, &b, &[1]) else { return Ok(()) };
            let Some(b2) = to_ratfunc(&f5, &b2, &[1]) else { return Ok(()) };
            let places = SymbolClass::symbol(&k4, &a, &b.mul(&b2)).unwrap().candidate_places().unwrap();
            let mut extra = Poly::new(&f5, pi.iter().map(|&i| f5.element(i)).collect());
            if !extra.is_zero() && !extra.is_constant() {
                extra = extra.monic();
            }
            let extra = Place::finite(extra).ok();
            for place in places.iter().chain(extra.iter()) {
                let mut sum = SymbolClass::symbol(&k4, &a, &b).unwrap();
                sum.push(&a, &b2, 1).unwrap();
                let prod = SymbolClass::symbol(&k4, &a, &b.mul(&b2)).unwrap();
                prop_assert_eq!(tame_residue(&sum, place).unwrap(), tame_residue(&prod, place).unwrap());
                let one_minus = RatFunc::from_int(&f5, 1).sub(&a);
                if !one_minus.is_zero() {
                    let st = SymbolClass::symbol(&k4, &a, &one_minus).unwrap();
                    prop_assert!(tame_residue(&st, place).unwrap().is_zero());
                }
                // n-th powers of units at P do not change the residue
                let w = place.reduce_at(&b).ok().map(|_| b.pow(4).unwrap());
                if let Some(w) = w {
                    let twisted = SymbolClass::symbol(&k4, &a.mul(&w), &b2).unwrap();
                    let plain = SymbolClass::symbol(&k4, &a, &b2).unwrap();
                    prop_assert_eq!(tame_residue(&twisted, place).unwrap(), tame_residue(&plain, place).unwrap());
                }
            }
        }

        #[test]
        fn reciprocity_holds(
            a in poly_strategy(13, 3), b in poly_strategy(13, 3), c in poly_strategy(13, 2), m in 0i64..4,
        ) {
            let (f13, k4) = setup(13, 4);
            let (Some(a), Some(b), Some(c)) =
                (to_ratfunc(&f13, &a, &[1]), to_ratfunc(&f13, &b, &c), to_ratfunc(&f13, &c, &[1]))
            else { return Ok(()) };
            let mut alpha = SymbolClass::symbol(&k4, &a, &b).unwrap();
            alpha.push(&c, &a, m).unwrap();
            prop_assert!(reciprocity_sum(&alpha).unwrap().is_zero());
        }

        #[test]
        fn routes_agree(u in poly_strategy(5, 3), w in 1u64..5, j in 0i64..4, pi in poly_strategy(5, 2)) {
            let (f5, k4) = setup(5, 4);
            let mut pi = Poly::new(&f5, pi.iter().map(|&i| f5.element(i)).collect());
            if pi.is_zero() || pi.is_constant() {
                pi = Poly::t(&f5);
            }
            let Ok(place) = Place::finite(pi.monic()) else { return Ok(()) };
            let Some(u) = to_ratfunc(&f5, &u, &[1]) else { return Ok(()) };
            if place.valuation(&u).unwrap() != 0 {
                prop_assert!(residue_cocycle_route(j, &u, &place, &k4).is_err());
                return Ok(());
            }
            let theta = place.uniformizer().pow(j).unwrap().mul(&RatFunc::from_int(&f5, w as i64));
            let alpha = SymbolClass::symbol(&k4, &theta, &u).unwrap();
            prop_assert_eq!(residue_cocycle_route(j, &u, &place, &k4).unwrap(), tame_residue(&alpha, &place).unwrap());
        }
    }
}
