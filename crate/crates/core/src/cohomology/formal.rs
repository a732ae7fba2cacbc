//! The unit group generated by `π^{1/n}` and `μ_n`, in which the Čech cochains
//! of the root-stack torsor `Spec S[T]/(Tⁿ - π) → X` take their values.
//!
//! The torsor group is `μ_n × Z/n`; `(β, b)` acts on `T` by `T ↦ βT` and on `S`
//! through the `b`-th power of the cyclic generator. `μ_n` is written additively
//! through a fixed primitive root `ζ`, so `β ∈ Z/n`.

use std::fmt;

use super::group::{tuple_count, FiniteAbelianGroup};
use crate::error::Result;

/// `π^{pi_num / n} · ζ^{zeta}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FormalUnit {
    n: u64,
    pi_num: i64,
    zeta: u64,
}

impl FormalUnit {
    pub fn one(n: u64) -> Self {
        FormalUnit { n, pi_num: 0, zeta: 0 }
    }

    /// `π^{num/n}`, i.e. `T^{num}`.
    pub fn pi_power(n: u64, num: i64) -> Self {
        FormalUnit { n, pi_num: num, zeta: 0 }
    }

    pub fn zeta_power(n: u64, m: i64) -> Self {
        FormalUnit { n, pi_num: 0, zeta: m.rem_euclid(n as i64) as u64 }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Exponent of `π` as a reduced fraction `(numerator, denominator)`.
    pub fn pi_exponent(&self) -> (i64, u64) {
        let g = crate::field::int::gcd(self.pi_num.unsigned_abs(), self.n).max(1);
        (self.pi_num / g as i64, self.n / g)
    }

    /// Exponent of `π` when it is an integer.
    pub fn pi_valuation(&self) -> Option<i64> {
        (self.pi_num % self.n as i64 == 0).then(|| self.pi_num / self.n as i64)
    }

    pub fn zeta_exponent(&self) -> u64 {
        self.zeta
    }

    pub fn is_one(&self) -> bool {
        self.pi_num == 0 && self.zeta == 0
    }

    pub fn mul(&self, other: &FormalUnit) -> FormalUnit {
        assert_eq!(self.n, other.n, "formal units over different n");
        FormalUnit { n: self.n, pi_num: self.pi_num + other.pi_num, zeta: (self.zeta + other.zeta) % self.n }
    }

    pub fn inv(&self) -> FormalUnit {
        FormalUnit { n: self.n, pi_num: -self.pi_num, zeta: (self.n - self.zeta) % self.n }
    }

    pub fn pow(&self, j: i64) -> FormalUnit {
        let n = self.n as i128;
        FormalUnit {
            n: self.n,
            pi_num: self.pi_num * j,
            zeta: (self.zeta as i128 * j as i128).rem_euclid(n) as u64,
        }
    }

    /// Pullback along the action of `β ∈ μ_n`: `T^e ↦ (βT)^e = ζ^{βe} T^e`.
    pub fn translate(&self, beta: u64) -> FormalUnit {
        let n = self.n as i128;
        let shift = (beta as i128 * self.pi_num as i128).rem_euclid(n) as u64;
        FormalUnit { zeta: (self.zeta + shift) % self.n, ..*self }
    }
}

impl fmt::Display for FormalUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        match self.pi_exponent() {
            (0, _) => {}
            (a, 1) => parts.push(format!("pi^{a}")),
            (a, b) => parts.push(format!("pi^({a}/{b})")),
        }
        if self.zeta != 0 {
            parts.push(format!("zeta^{}", self.zeta));
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// `ε_{b,b'}` for `b, b' ∈ {0, …, n-1}`: `1` if `b + b' < n`, else `π^{-1}`;
/// raised to a power `j` by [`EpsilonTable::pow`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EpsilonTable {
    n: u64,
    values: Vec<FormalUnit>,
}

pub fn epsilon_cocycle(n: u64) -> EpsilonTable {
    let mut values = Vec::with_capacity((n * n) as usize);
    for b in 0..n {
        for b2 in 0..n {
            let carry = if b + b2 >= n { -(n as i64) } else { 0 };
            values.push(FormalUnit::pi_power(n, carry));
        }
    }
    EpsilonTable { n, values }
}

impl EpsilonTable {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn get(&self, b: u64, b2: u64) -> FormalUnit {
        self.values[(b * self.n + b2) as usize]
    }

    pub fn pow(&self, j: i64) -> EpsilonTable {
        EpsilonTable { n: self.n, values: self.values.iter().map(|u| u.pow(j)).collect() }
    }

    /// Multiplicative 2-cocycle condition for `Z/n` acting trivially on the values.
    pub fn is_cocycle(&self) -> bool {
        let n = self.n;
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| {
                    let lhs = self.get(b, c).mul(&self.get(a, (b + c) % n));
                    let rhs = self.get((a + b) % n, c).mul(&self.get(a, b));
                    lhs == rhs
                })
            })
        })
    }

    /// `Π_{i<n} ε(i, 1)`: the element `a` with `[ε] = [(L/K, σ, a)]` for the
    /// cyclic extension cut out by the `Z/n` factor.
    pub fn cyclic_element(&self) -> FormalUnit {
        (0..self.n).fold(FormalUnit::one(self.n), |acc, i| acc.mul(&self.get(i, 1 % self.n)))
    }
}

/// Checks, over every pair of torsor-group elements, that the Čech coboundary of
/// the 1-cochain `(β, b) ↦ π^{jb/n}` equals `ε_{b,b'}^{-j} · β^{j b'}`.
pub fn verify_coboundary_identity_power(n: u64, j: i64) -> Result<bool> {
    let group = FiniteAbelianGroup::new(vec![n, n])?;
    tuple_count(&group, 2)?;
    let eps = epsilon_cocycle(n).pow(j);
    let cochain = |b: u64| FormalUnit::pi_power(n, j * b as i64);
    for g in 0..group.order() {
        let (beta, b) = split(&group, g);
        for h in 0..group.order() {
            let (_, b2) = split(&group, h);
            let (_, bsum) = split(&group, group.add(g, h));
            // c_{g'} pulled back along the action of g, times c_{gg'}^{-1}, times c_g
            let lhs = cochain(b2).translate(beta).mul(&cochain(bsum).inv()).mul(&cochain(b));
            // (1 ⊠ 1)(g, g') = β·b'
            let twist = FormalUnit::zeta_power(n, j * ((beta * b2) % n) as i64);
            let rhs = eps.get(b, b2).inv().mul(&twist);
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// [`verify_coboundary_identity_power`] for `j = 1`.
pub fn verify_coboundary_identity(n: u64) -> Result<bool> {
    verify_coboundary_identity_power(n, 1)
}

fn split(group: &FiniteAbelianGroup, g: usize) -> (u64, u64) {
    let c = group.coords(g);
    (c[0], c[1])
}

#[cfg(test)]
mod tests {
    use super::super::edge::cup_product_boxtimes;
    use super::*;

    #[test]
    fn epsilon_case_split() {
        let e2 = epsilon_cocycle(2);
        assert_eq!(e2.get(1, 1), FormalUnit::pi_power(2, -2));
        assert_eq!(e2.get(1, 1).pi_valuation(), Some(-1));
        for (b, b2) in [(0, 0), (0, 1), (1, 0)] {
            assert!(e2.get(b, b2).is_one());
        }
        let e3 = epsilon_cocycle(3);
        assert_eq!(e3.get(2, 2).pi_valuation(), Some(-1));
        for n in 2..9 {
            let e = epsilon_cocycle(n);
            assert!((0..n).all(|b2| e.get(0, b2).is_one()));
            assert!(e.is_cocycle());
            assert_eq!(e.cyclic_element(), FormalUnit::pi_power(n, -(n as i64)));
        }
    }

    #[test]
    fn coboundary_identity_small_n() {
        for n in [2, 3, 5] {
            assert!(verify_coboundary_identity(n).unwrap());
        }
        for j in 0..4 {
            assert!(verify_coboundary_identity_power(4, j).unwrap());
        }
    }

    #[test]
    fn identity_fails_for_a_wrong_epsilon() {
        // dropping the carry (ε ≡ 1) must break the identity
        let n = 3;
        let cup = cup_product_boxtimes(n).unwrap();
        let group = FiniteAbelianGroup::new(vec![n, n]).unwrap();
        let mut ok = true;
        for g in 0..9 {
            let (beta, b) = split(&group, g);
            for h in 0..9 {
                let (_, b2) = split(&group, h);
                let (_, bs) = split(&group, group.add(g, h));
                let c = |x: u64| FormalUnit::pi_power(n, x as i64);
                let lhs = c(b2).translate(beta).mul(&c(bs).inv()).mul(&c(b));
                ok &= lhs == FormalUnit::zeta_power(n, cup.get(&[g, h]) as i64);
            }
        }
        assert!(!ok);
    }

    #[test]
    fn formal_unit_display() {
        assert_eq!(FormalUnit::pi_power(4, -4).to_string(), "pi^-1");
        assert_eq!(FormalUnit::pi_power(4, 2).mul(&FormalUnit::zeta_power(4, 3)).to_string(), "pi^(1/2)*zeta^3");
        assert_eq!(FormalUnit::one(3).to_string(), "1");
    }
}
