use super::group::{decode, faces, tuple_count, Cochain, FiniteAbelianGroup};
use super::linalg::{smith_invariants, ModDiagonal};
use crate::error::{Error, Result};
use crate::field::int::gcd;

/// Integer matrix of `d: C^k → C^{k+1}` in the standard tuple bases.
pub fn coboundary_matrix(group: &FiniteAbelianGroup, k: usize) -> Result<Vec<Vec<i64>>> {
    let rows = tuple_count(group, k + 1)?;
    let cols = tuple_count(group, k)?;
    let n = group.order();
    let table = group.addition_table();
    let mut args = vec![0usize; k + 1];
    let mut sub = Vec::with_capacity(k);
    let mut out = Vec::with_capacity(rows);
    for r in 0..rows {
        decode(r, n, &mut args);
        let mut row = vec![0i64; cols];
        for (sign, col) in faces(&args, &table, n, &mut sub) {
            row[col] += sign;
        }
        out.push(row);
    }
    Ok(out)
}

/// Some `x` with `dx = c`, or `None` when `c` is not a coboundary. Degree ≥ 1.
pub fn coboundary_preimage(c: &Cochain) -> Result<Option<Cochain>> {
    let k = c.degree();
    if k == 0 {
        return Err(Error::CochainShape("degree-0 cochains have no preimage".into()));
    }
    let m = c.modulus();
    let group = c.group();
    let d = coboundary_matrix(group, k - 1)?;
    let cols = tuple_count(group, k - 1)?;
    let a: Vec<Vec<u64>> = d
        .iter()
        .map(|r| r.iter().map(|&v| v.rem_euclid(m as i64) as u64).collect())
        .collect();
    let diag = ModDiagonal::new(&a, cols, m)?;
    match diag.solve(c.values()) {
        Some(x) => Ok(Some(Cochain::new(group, k - 1, m, x)?)),
        None => Ok(None),
    }
}

/// Whether `c1 - c2` is a coboundary.
pub fn cocycles_cohomologous(c1: &Cochain, c2: &Cochain) -> Result<bool> {
    let diff = c1.sub(c2)?;
    if diff.degree() == 0 {
        return Ok(diff.is_zero());
    }
    Ok(coboundary_preimage(&diff)?.is_some())
}

/// Elementary divisors (cyclic orders, ascending, all > 1) of `H^k(G, Z/m)`
/// with trivial action, from the Smith forms of the integral coboundaries and
/// the universal coefficient sequence.
pub fn cohomology_rank(group: &FiniteAbelianGroup, m: u64, k: usize) -> Result<Vec<u64>> {
    if m == 0 {
        return Err(Error::CochainShape("coefficient modulus must be positive".into()));
    }
    tuple_count(group, k + 1)?;
    let to_i128 = |d: Vec<Vec<i64>>| -> Vec<Vec<i128>> {
        d.into_iter().map(|r| r.into_iter().map(i128::from).collect()).collect()
    };
    let outgoing = smith_invariants(to_i128(coboundary_matrix(group, k)?))?;
    let incoming = if k == 0 {
        Vec::new()
    } else {
        smith_invariants(to_i128(coboundary_matrix(group, k - 1)?))?
    };
    let dim = tuple_count(group, k)?;
    let free = dim - outgoing.len() - incoming.len();
    let mut out = vec![m; free];
    // H^k(C) ⊗ Z/m contributes the torsion of coker d_{k-1};
    // Tor(H^{k+1}(C), Z/m) contributes the torsion of coker d_k.
    for e in incoming.iter().chain(&outgoing) {
        out.push(gcd(*e, m));
    }
    out.retain(|&v| v > 1);
    out.sort_unstable();
    Ok(out)
}
