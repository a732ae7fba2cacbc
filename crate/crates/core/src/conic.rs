//! Conic bundles `a·x² + b·y² = z²` over `P¹_{F_q}`, `q` odd, and the
//! components of their degenerate fibers.

use crate::error::{Error, Result};
use crate::field::{FieldElement, FiniteField, Kummer, Place, RatFunc, ResidueClass};
use crate::symbol::{ramification_divisor, tame_residue, SymbolClass};

/// Fiber point counts refuse residue fields larger than this.
pub const POINT_FIELD_LIMIT: u64 = 1 << 24;
/// Smooth fibers are counted by enumerating `x, y`; limit on `Q`.
pub const SMOOTH_FIELD_LIMIT: u64 = 1 << 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicBundle {
    kummer: Kummer,
    a: RatFunc,
    b: RatFunc,
}

impl ConicBundle {
    pub fn new(a: &RatFunc, b: &RatFunc) -> Result<Self> {
        let field = a.field();
        if field.characteristic() == 2 {
            return Err(Error::EvenCharacteristic(field.order()));
        }
        if a.is_zero() || b.is_zero() {
            return Err(Error::ZeroSymbolArgument);
        }
        if b.field() != field {
            return Err(Error::FieldMismatch);
        }
        let kummer = Kummer::new(field, 2)?;
        Ok(ConicBundle { kummer, a: a.clone(), b: b.clone() })
    }

    pub fn a(&self) -> &RatFunc {
        &self.a
    }

    pub fn b(&self) -> &RatFunc {
        &self.b
    }

    pub fn field(&self) -> &FiniteField {
        self.kummer.field()
    }

    pub fn kummer(&self) -> &Kummer {
        &self.kummer
    }

    /// The quaternion symbol `(a, b)_2`.
    pub fn symbol(&self) -> SymbolClass {
        SymbolClass::symbol(&self.kummer, &self.a, &self.b).expect("arguments checked nonzero")
    }
}

/// Diagonal form `(a₀, b₀, -1)` over the local ring at a place, with
/// `v(a₀), v(b₀) ∈ {0, 1}` and not both `1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalForm {
    pub a0: RatFunc,
    pub b0: RatFunc,
    pub va: i64,
    pub vb: i64,
}

fn strip_squares(f: &RatFunc, place: &Place) -> Result<(RatFunc, i64)> {
    let v = place.valuation(f)?;
    let k = v.div_euclid(2);
    let g = f.mul(&place.uniformizer().pow(-2 * k)?);
    Ok((g, v - 2 * k))
}

pub fn minimize_at(conic: &ConicBundle, place: &Place) -> Result<LocalForm> {
    let (a0, va) = strip_squares(&conic.a, place)?;
    let (mut b0, mut vb) = strip_squares(&conic.b, place)?;
    if va == 1 && vb == 1 {
        // (a, b) = (a, -ab), and -ab has even valuation
        (b0, vb) = strip_squares(&a0.mul(&b0).neg(), place)?;
    }
    if va + vb > 1 {
        return Err(Error::NonStandard(place.to_string()));
    }
    Ok(LocalForm { a0, b0, va, vb })
}

pub fn discriminant_places(conic: &ConicBundle) -> Result<Vec<Place>> {
    Ok(ramification_divisor(&conic.symbol())?.places().cloned().collect())
}

/// The special fiber `ū·X² - Z² = 0` at a place where one coefficient of the
/// minimized form vanishes; `X` is the variable whose coefficient survives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerateFiber {
    pub place: Place,
    /// Reduction of the unit coefficient.
    pub unit: FieldElement,
    /// Whether the surviving coefficient is that of `x` (else `y`).
    pub surviving_x: bool,
}

pub fn degenerate_fiber(conic: &ConicBundle, place: &Place) -> Result<DegenerateFiber> {
    let form = minimize_at(conic, place)?;
    let (unit, surviving_x) = match (form.va, form.vb) {
        (0, 0) => return Err(Error::SmoothFiber(place.to_string())),
        (1, 0) => (place.reduce_at(&form.b0)?, false),
        (0, 1) => (place.reduce_at(&form.a0)?, true),
        _ => return Err(Error::NonStandard(place.to_string())),
    };
    Ok(DegenerateFiber { place: place.clone(), unit, surviving_x })
}

/// Square class of `ū`: trivial iff the two lines `√ū·X = ±Z` are defined over `κ(P)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentTorsor {
    pub place: Place,
    pub class: ResidueClass,
}

pub fn component_torsor(conic: &ConicBundle, place: &Place) -> Result<ComponentTorsor> {
    let fiber = degenerate_fiber(conic, place)?;
    let class = conic.kummer.character(&fiber.unit)?;
    Ok(ComponentTorsor { place: place.clone(), class })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArtinRow {
    pub place: Place,
    pub geometric: ResidueClass,
    pub residue: ResidueClass,
    pub agree: bool,
}

/// Component torsor against tame residue at every ramified place.
pub fn check_artin(conic: &ConicBundle) -> Result<Vec<ArtinRow>> {
    let symbol = conic.symbol();
    discriminant_places(conic)?
        .into_iter()
        .map(|place| {
            let geometric = component_torsor(conic, &place)?.class;
            let residue = tame_residue(&symbol, &place)?;
            let agree = geometric == residue;
            Ok(ArtinRow { place, geometric, residue, agree })
        })
        .collect()
}

fn extend(kappa: &FiniteField, e: usize) -> Result<FiniteField> {
    if e <= 1 {
        return Ok(kappa.clone());
    }
    let order = (0..e).try_fold(1u64, |acc, _| acc.checked_mul(kappa.order()));
    if order.is_none_or(|o| o > POINT_FIELD_LIMIT) {
        return Err(Error::SizeGuard(format!("|{kappa}|^{e} exceeds {POINT_FIELD_LIMIT}")));
    }
    let m = kappa
        .smallest_irreducible(e)
        .ok_or_else(|| Error::Inconsistent(format!("no irreducible of degree {e} over {kappa}")))?;
    kappa.extension(&m)
}

/// Projective points of the reduced fiber over the degree-`e` extension of `κ(P)`.
pub fn count_fiber_points(conic: &ConicBundle, place: &Place, e: usize) -> Result<u64> {
    let form = minimize_at(conic, place)?;
    let reduce = |f: &RatFunc, v: i64| -> Result<FieldElement> {
        if v == 0 {
            place.reduce_at(f)
        } else {
            Ok(place.residue_field().zero())
        }
    };
    let (a, b) = (reduce(&form.a0, form.va)?, reduce(&form.b0, form.vb)?);
    let big = extend(place.residue_field(), e)?;
    let q = big.order();
    if q > POINT_FIELD_LIMIT {
        return Err(Error::SizeGuard(format!("{big} exceeds {POINT_FIELD_LIMIT}")));
    }
    let (a, b) = (big.embed(&a)?, big.embed(&b)?);
    let mut roots = vec![0u64; q as usize];
    for z in big.elements() {
        roots[(&z * &z).index() as usize] += 1;
    }
    // affine solutions of a x² + b y² = z², then projectivize
    let affine = if a.is_zero() || b.is_zero() {
        let c = if a.is_zero() { &b } else { &a };
        let line: u64 = big.elements().map(|x| roots[(c * &(&x * &x)).index() as usize]).sum();
        line * q
    } else {
        if q > SMOOTH_FIELD_LIMIT {
            return Err(Error::SizeGuard(format!("smooth fiber over {big}")));
        }
        let ax: Vec<FieldElement> = big.elements().map(|x| &a * &(&x * &x)).collect();
        let by: Vec<FieldElement> = big.elements().map(|y| &b * &(&y * &y)).collect();
        ax.iter().map(|u| by.iter().map(|w| roots[(u + w).index() as usize]).sum::<u64>()).sum()
    };
    Ok((affine - 1) / (q - 1))
}
