//! The central extension `1 → μ_n → Γ → μ_n × Z/n → 1` realized inside
//! `GL_n(F_q)`, and its factor set.

use std::collections::{HashMap, VecDeque};

use super::edge::torsor_group;
use super::group::{Cochain, FiniteAbelianGroup};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FiniteField, Kummer};

/// Largest `n` accepted; the closure costs about `n⁶` field operations.
pub const MAX_GAMMA_N: u64 = 16;

type Matrix = Vec<Vec<FieldElement>>;

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let zero = a[0][0].field().zero();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n).fold(zero.clone(), |acc, k| {
                        if a[i][k].is_zero() || b[k][j].is_zero() {
                            acc
                        } else {
                            &acc + &(&a[i][k] * &b[k][j])
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// The matrix group generated by `ζ·I`, the cyclic shift `P` and
/// `D = diag(1, ζ, …, ζ^{n-1})`.
#[derive(Clone, Debug)]
pub struct Gamma {
    kummer: Kummer,
    elements: Vec<Matrix>,
}

impl Gamma {
    pub fn new(n: u64, q: u64) -> Result<Self> {
        if n > MAX_GAMMA_N {
            return Err(Error::SizeGuard(format!("n = {n} exceeds {MAX_GAMMA_N} for the matrix group")));
        }
        let field = FiniteField::new(q)?;
        let kummer = Kummer::new(&field, n)?;
        let zeta = kummer.zeta().clone();
        let size = n as usize;
        let diag = |f: &dyn Fn(usize) -> FieldElement| -> Matrix {
            (0..size)
                .map(|i| (0..size).map(|j| if i == j { f(i) } else { field.zero() }).collect())
                .collect()
        };
        let scalar = diag(&|_| zeta.clone());
        let d = diag(&|i| zeta.pow(i as u64));
        let shift: Matrix = (0..size)
            .map(|i| (0..size).map(|j| if j == (i + 1) % size { field.one() } else { field.zero() }).collect())
            .collect();
        let gens = [scalar, shift, d];

        let identity = diag(&|_| field.one());
        let mut seen = HashMap::new();
        let mut elements = vec![identity.clone()];
        seen.insert(identity.clone(), 0usize);
        let mut queue = VecDeque::from([identity]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = mat_mul(&x, g);
                if !seen.contains_key(&y) {
                    seen.insert(y.clone(), elements.len());
                    elements.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        Ok(Gamma { kummer, elements })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn n(&self) -> u64 {
        self.kummer.n()
    }

    pub fn elements(&self) -> &[Vec<Vec<FieldElement>>] {
        &self.elements
    }

    fn dlog(&self, x: &FieldElement) -> Result<u64> {
        let zeta = self.kummer.zeta();
        let mut acc = x.field().one();
        for k in 0..self.n() {
            if &acc == x {
                return Ok(k);
            }
            acc = &acc * zeta;
        }
        Err(Error::Inconsistent(format!("{x} is not a power of zeta")))
    }

    fn nonzero_in_row(m: &Matrix, row: usize) -> Result<usize> {
        m[row]
            .iter()
            .position(|v| !v.is_zero())
            .ok_or_else(|| Error::Inconsistent("matrix is not monomial".into()))
    }

    /// Image `(β, b)` in `μ_n × Z/n`: `ζ^β` is the ratio of the nonzero entries
    /// of rows 1 and 0, and `b` is the column of the nonzero entry of row 0.
    pub fn project(&self, m: &Matrix) -> Result<(u64, u64)> {
        let n = self.n();
        let c0 = Self::nonzero_in_row(m, 0)?;
        let beta = if n == 1 {
            0
        } else {
            let c1 = Self::nonzero_in_row(m, 1)?;
            self.dlog(&(&m[1][c1] * &m[0][c0].inv()?))?
        };
        Ok((beta, c0 as u64))
    }

    /// Scalar `λ` with `a = λ·b`, as an exponent of `ζ`.
    fn scalar_ratio(&self, a: &Matrix, b: &Matrix) -> Result<u64> {
        let c = Self::nonzero_in_row(b, 0)?;
        let lambda = &a[0][c] * &b[0][c].inv()?;
        for (ra, rb) in a.iter().zip(b) {
            for (x, y) in ra.iter().zip(rb) {
                if x != &(&lambda * y) {
                    return Err(Error::Inconsistent("matrices differ by more than a scalar".into()));
                }
            }
        }
        self.dlog(&lambda)
    }
}

/// A factor set of Γ together with the group it lives on.
#[derive(Clone, Debug)]
pub struct FactorSet {
    pub q: u64,
    pub gamma_order: usize,
    /// `s(g, g')` with `σ(g)σ(g') = ζ^{s(g,g')}·σ(g+g')`, on `μ_n × Z/n`.
    pub cochain: Cochain,
}

/// Factor set for the section whose first-row nonzero entry is `1`.
pub fn extension_factor_set(n: u64, q: u64) -> Result<FactorSet> {
    extension_factor_set_with_section(n, q, |_| 0)
}

/// Factor set for the section `g ↦ ζ^{twist(g)}·σ₀(g)`, `σ₀` the normalized one.
pub fn extension_factor_set_with_section(n: u64, q: u64, twist: impl Fn(usize) -> u64) -> Result<FactorSet> {
    let gamma = Gamma::new(n, q)?;
    let g = torsor_group(n)?;
    if gamma.order() as u64 != n * n * n {
        return Err(Error::Inconsistent(format!("|Γ| = {}, expected {}", gamma.order(), n * n * n)));
    }
    let zeta = gamma.kummer.zeta().clone();
    let mut section: Vec<Option<Matrix>> = vec![None; g.order()];
    for m in gamma.elements() {
        let (beta, b) = gamma.project(m)?;
        if m[0][b as usize].is_one() {
            let idx = g.index(&[beta, b]);
            let scaled = m.iter().map(|r| r.iter().map(|v| v * &zeta.pow(twist(idx) % n)).collect()).collect();
            section[idx] = Some(scaled);
        }
    }
    let section: Vec<Matrix> = section
        .into_iter()
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Inconsistent("projection is not surjective".into()))?;
    let mut err = None;
    let cochain = Cochain::from_fn(&g, 2, n, |a| {
        let prod = mat_mul(&section[a[0]], &section[a[1]]);
        match gamma.scalar_ratio(&prod, &section[g.add(a[0], a[1])]) {
            Ok(k) => k as i64,
            Err(e) => {
                err.get_or_insert(e);
                0
            }
        }
    })?;
    if let Some(e) = err {
        return Err(e);
    }
    Ok(FactorSet { q, gamma_order: gamma.order(), cochain })
}

/// `((β, b), (β', b')) ↦ β'·b`.
pub fn swapped_cup_product(n: u64) -> Result<Cochain> {
    let g = torsor_group(n)?;
    Cochain::from_fn(&g, 2, n, |a| (g.coords(a[1])[0] * g.coords(a[0])[1]) as i64)
}

/// Restriction of a cochain on `μ_n × Z/n` to the `μ_n` factor.
pub fn restrict_to_fiber(c: &Cochain) -> Result<Cochain> {
    let g = c.group().clone();
    let fiber = FiniteAbelianGroup::cyclic(c.modulus())?;
    c.pullback(&fiber, |beta| g.index(&[beta as u64, 0]))
}
