use std::fmt;

use crate::error::{Error, Result};

/// Cochain tables larger than this are refused.
pub const TABLE_LIMIT: u64 = 1_000_000;

/// `Z/m₁ × … × Z/m_r`. Elements are indexed in mixed radix with the first
/// factor least significant.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FiniteAbelianGroup {
    factors: Vec<u64>,
    order: usize,
}

impl FiniteAbelianGroup {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if factors.contains(&0) {
            return Err(Error::CochainShape("group factor must be at least 1".into()));
        }
        let order = factors
            .iter()
            .try_fold(1u64, |acc, &m| acc.checked_mul(m).filter(|&o| o <= TABLE_LIMIT))
            .ok_or_else(|| Error::SizeGuard(format!("group {factors:?} too large")))?;
        Ok(FiniteAbelianGroup { factors, order: order as usize })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coords(&self, mut g: usize) -> Vec<u64> {
        self.factors
            .iter()
            .map(|&m| {
                let c = g as u64 % m;
                g /= m as usize;
                c
            })
            .collect()
    }

    pub fn index(&self, coords: &[u64]) -> usize {
        self.factors
            .iter()
            .zip(coords)
            .rev()
            .fold(0usize, |acc, (&m, &c)| acc * m as usize + (c % m) as usize)
    }

    pub fn add(&self, g: usize, h: usize) -> usize {
        let (a, b) = (self.coords(g), self.coords(h));
        let sum: Vec<u64> = a.iter().zip(&b).zip(&self.factors).map(|((x, y), m)| (x + y) % m).collect();
        self.index(&sum)
    }

    pub fn neg(&self, g: usize) -> usize {
        let c: Vec<u64> = self.coords(g).iter().zip(&self.factors).map(|(x, m)| (m - x) % m).collect();
        self.index(&c)
    }

    /// Addition table, `table[g * |G| + h] = g + h`.
    pub fn addition_table(&self) -> Vec<usize> {
        let n = self.order;
        let mut t = Vec::with_capacity(n * n);
        for g in 0..n {
            for h in 0..n {
                t.push(self.add(g, h));
            }
        }
        t
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|m| format!("Z/{m}")).collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

/// Number of `k`-tuples of group elements, guarded by [`TABLE_LIMIT`].
pub fn tuple_count(group: &FiniteAbelianGroup, k: usize) -> Result<usize> {
    let mut acc = 1u64;
    for _ in 0..k {
        acc = acc
            .checked_mul(group.order() as u64)
            .filter(|&v| v <= TABLE_LIMIT)
            .ok_or_else(|| Error::SizeGuard(format!("|{group}|^{k} exceeds {TABLE_LIMIT}")))?;
    }
    Ok(acc as usize)
}

/// An inhomogeneous `k`-cochain `G^k → Z/m` with trivial action.
/// The tuple `(g₁, …, g_k)` is stored at `((g₁·|G| + g₂)·|G| + …)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cochain {
    group: FiniteAbelianGroup,
    degree: usize,
    modulus: u64,
    values: Vec<u64>,
}

impl Cochain {
    pub fn new(group: &FiniteAbelianGroup, degree: usize, modulus: u64, values: Vec<u64>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::CochainShape("coefficient modulus must be positive".into()));
        }
        let len = tuple_count(group, degree)?;
        if values.len() != len {
            return Err(Error::CochainShape(format!("expected {len} values, got {}", values.len())));
        }
        let values = values.into_iter().map(|v| v % modulus).collect();
        Ok(Cochain { group: group.clone(), degree, modulus, values })
    }

    pub fn zero(group: &FiniteAbelianGroup, degree: usize, modulus: u64) -> Result<Self> {
        let len = tuple_count(group, degree)?;
        Self::new(group, degree, modulus, vec![0; len])
    }

    /// Tabulates `f(g₁, …, g_k)` over all tuples of element indices.
    pub fn from_fn(
        group: &FiniteAbelianGroup,
        degree: usize,
        modulus: u64,
        mut f: impl FnMut(&[usize]) -> i64,
    ) -> Result<Self> {
        let len = tuple_count(group, degree)?;
        let mut args = vec![0usize; degree];
        let mut values = Vec::with_capacity(len);
        for idx in 0..len {
            decode(idx, group.order(), &mut args);
            values.push(f(&args).rem_euclid(modulus as i64) as u64);
        }
        Self::new(group, degree, modulus, values)
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn get(&self, args: &[usize]) -> u64 {
        debug_assert_eq!(args.len(), self.degree);
        self.values[encode(args, self.group.order())]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    fn same_shape(&self, other: &Cochain) -> Result<()> {
        if self.group != other.group || self.degree != other.degree || self.modulus != other.modulus {
            return Err(Error::CochainShape(format!(
                "({}, deg {}, Z/{}) vs ({}, deg {}, Z/{})",
                self.group, self.degree, self.modulus, other.group, other.degree, other.modulus
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.same_shape(other)?;
        let m = self.modulus;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| (a + b) % m).collect();
        Ok(Cochain { values, ..self.clone() })
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Cochain {
        let m = self.modulus as i128;
        let values = self
            .values
            .iter()
            .map(|&v| (v as i128 * k as i128).rem_euclid(m) as u64)
            .collect();
        Cochain { values, ..self.clone() }
    }

    /// `(dc)(g₁,…,g_{k+1}) = c(g₂,…) + Σᵢ (-1)ⁱ c(…, gᵢ+gᵢ₊₁, …) + (-1)^{k+1} c(g₁,…,g_k)`.
    pub fn coboundary(&self) -> Result<Cochain> {
        let k = self.degree;
        let table = self.group.addition_table();
        let n = self.group.order();
        let m = self.modulus as i64;
        let mut sub = vec![0usize; k];
        Cochain::from_fn(&self.group, k + 1, self.modulus, |g| {
            let mut acc = 0i64;
            for (sign, face) in faces(g, &table, n, &mut sub) {
                acc += sign * self.values[face] as i64;
            }
            acc.rem_euclid(m)
        })
    }

    pub fn is_cocycle(&self) -> Result<bool> {
        Ok(self.coboundary()?.is_zero())
    }

    /// Pullback along a homomorphism given on element indices.
    pub fn pullback(&self, group: &FiniteAbelianGroup, map: impl Fn(usize) -> usize) -> Result<Cochain> {
        let mut img = vec![0usize; self.degree];
        Cochain::from_fn(group, self.degree, self.modulus, |g| {
            for (dst, &src) in img.iter_mut().zip(g) {
                *dst = map(src);
            }
            self.get(&img) as i64
        })
    }
}

pub(crate) fn encode(args: &[usize], n: usize) -> usize {
    args.iter().fold(0usize, |acc, &g| acc * n + g)
}

pub(crate) fn decode(mut idx: usize, n: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
}

/// The `k + 2` faces of a `(k+1)`-tuple with their signs, as encoded `k`-tuples.
pub(crate) fn faces(g: &[usize], table: &[usize], n: usize, sub: &mut Vec<usize>) -> Vec<(i64, usize)> {
    let k1 = g.len();
    let k = k1 - 1;
    let mut out = Vec::with_capacity(k1 + 1);
    sub.clear();
    sub.extend_from_slice(&g[1..]);
    out.push((1, encode(sub, n)));
    for i in 0..k {
        sub.clear();
        sub.extend_from_slice(&g[..i]);
        sub.push(table[g[i] * n + g[i + 1]]);
        sub.extend_from_slice(&g[i + 2..]);
        let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
        out.push((sign, encode(sub, n)));
    }
    sub.clear();
    sub.extend_from_slice(&g[..k]);
    let sign = if k1.is_multiple_of(2) { 1 } else { -1 };
    out.push((sign, encode(sub, n)));
    out
}
