//! The class `1_{μ_n} ⊠ 1_{Z/n}` on `μ_n × Z/n` and the low-degree edge map of
//! the Hochschild–Serre spectral sequence for `μ_n → μ_n × Z/n → Z/n`.

use super::complex::coboundary_preimage;
use super::group::{Cochain, FiniteAbelianGroup};
use crate::error::{Error, Result};

/// `μ_n × Z/n` with `μ_n` (identified with `Z/n` through `ζ`) as the first factor.
pub fn torsor_group(n: u64) -> Result<FiniteAbelianGroup> {
    FiniteAbelianGroup::new(vec![n, n])
}

/// The 2-cocycle `((β, b), (β', b')) ↦ β·b'`, additive form of `β^{b'}`.
pub fn cup_product_boxtimes(n: u64) -> Result<Cochain> {
    let g = torsor_group(n)?;
    Cochain::from_fn(&g, 2, n, |a| {
        let beta = g.coords(a[0])[0];
        let b2 = g.coords(a[1])[1];
        (beta * b2) as i64
    })
}

/// The pullback of a cochain on `Z/n` along the projection `μ_n × Z/n → Z/n`.
pub fn inflate_from_quotient(c: &Cochain) -> Result<Cochain> {
    let n = c.group().order() as u64;
    let g = torsor_group(n)?;
    c.pullback(&g, |x| g.coords(x)[1] as usize)
}

/// Output of [`lhs_edge_map`]: a homomorphism `Z/n → Hom(μ_n, Z/n) = Z/n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeImage {
    /// The 1-cocycle `b ↦ (value of the commutator pairing at (ζ, b))` on `Z/n`.
    pub cochain: Cochain,
    /// Its class in `H¹(Z/n, Z/n) = Z/n`, the value at `b = 1`.
    pub class: u64,
}

/// Image of a 2-cocycle on `μ_n × Z/n` (coefficients `Z/n`) whose restriction
/// to `μ_n` is a coboundary, in `H¹(Z/n, H¹(μ_n, Z/n)) = Z/n`.
pub fn lhs_edge_map(c: &Cochain) -> Result<EdgeImage> {
    let g = c.group();
    let n = c.modulus();
    if g.factors() != [n, n] || c.degree() != 2 {
        return Err(Error::CochainShape(format!(
            "expected a 2-cochain on Z/{n} x Z/{n}, got degree {} on {g}",
            c.degree()
        )));
    }
    if !c.is_cocycle()? {
        return Err(Error::CochainShape("input is not a 2-cocycle".into()));
    }
    let fiber = FiniteAbelianGroup::cyclic(n)?;
    let fiber_in = |beta: usize| g.index(&[beta as u64, 0]);
    let restricted = c.pullback(&fiber, fiber_in)?;
    let x = coboundary_preimage(&restricted)?.ok_or(Error::NotVanishingOnFiber)?;
    // extend x by zero off the fiber; its coboundary restricts to dx on μ_n
    let extended = Cochain::from_fn(g, 1, n, |a| {
        let coords = g.coords(a[0]);
        if coords[1] == 0 {
            x.get(&[coords[0] as usize]) as i64
        } else {
            0
        }
    })?;
    let adjusted = c.sub(&extended.coboundary()?)?;
    if !adjusted.pullback(&fiber, fiber_in)?.is_zero() {
        return Err(Error::Inconsistent("adjusted cocycle does not vanish on the fiber".into()));
    }

    let pairing = |beta: u64, b: u64| -> u64 {
        let s = g.index(&[beta, 0]);
        let t = g.index(&[0, b]);
        (adjusted.get(&[s, t]) + n - adjusted.get(&[t, s])) % n
    };
    for b in 0..n {
        for beta in 0..n {
            for beta2 in 0..n {
                let lhs = pairing((beta + beta2) % n, b);
                if lhs != (pairing(beta, b) + pairing(beta2, b)) % n {
                    return Err(Error::Inconsistent("commutator pairing is not additive in μ_n".into()));
                }
            }
        }
    }
    let cochain = Cochain::from_fn(&fiber, 1, n, |a| pairing(1 % n, a[0] as u64) as i64)?;
    if !cochain.is_cocycle()? {
        return Err(Error::Inconsistent("edge image is not a homomorphism".into()));
    }
    let class = cochain.get(&[1 % n as usize]);
    Ok(EdgeImage { cochain, class })
}
