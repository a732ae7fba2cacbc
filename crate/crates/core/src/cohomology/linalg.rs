//! Dense integer linear algebra: Smith invariants over `Z`, and diagonalization
//! over `Z/m` (with the column transform kept) for solving `A x ≡ y (mod m)`.

use crate::error::{Error, Result};
use crate::field::int::{egcd, gcd, inv_mod};

/// Dense matrices above this many entries are refused.
pub const MATRIX_LIMIT: usize = 25_000_000;

fn checked(v: Option<i128>) -> Result<i128> {
    v.ok_or(Error::Overflow("Smith normal form"))
}

/// Nonzero invariant factors of an integer matrix, ascending, each dividing the next.
pub fn smith_invariants(mut a: Vec<Vec<i128>>) -> Result<Vec<u64>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    if rows.saturating_mul(cols) > MATRIX_LIMIT {
        return Err(Error::SizeGuard(format!("{rows}x{cols} matrix")));
    }
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(i128, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &v) in row.iter().enumerate().skip(t) {
                if v != 0 && best.is_none_or(|(b, _, _)| v.abs() < b) {
                    best = Some((v.abs(), i, j));
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let p = a[t][t];
        let mut clean = true;
        for i in t + 1..rows {
            let q = a[i][t] / p;
            if q != 0 {
                for j in t..cols {
                    a[i][j] = checked(a[i][j].checked_sub(checked(q.checked_mul(a[t][j]))?))?;
                }
            }
            clean &= a[i][t] == 0;
        }
        for j in t + 1..cols {
            let q = a[t][j] / p;
            if q != 0 {
                for row in a.iter_mut().skip(t) {
                    row[j] = checked(row[j].checked_sub(checked(q.checked_mul(row[t]))?))?;
                }
            }
            clean &= a[t][j] == 0;
        }
        if !clean {
            continue;
        }
        // the pivot must divide the whole trailing block
        let bad = (t + 1..rows).find(|&i| a[i][t + 1..].iter().any(|&v| v % p != 0));
        if let Some(i) = bad {
            for j in t..cols {
                a[t][j] = checked(a[t][j].checked_add(a[i][j]))?;
            }
            continue;
        }
        diag.push(p.unsigned_abs() as u64);
        t += 1;
    }
    Ok(diag)
}

/// `A` brought to diagonal form over `Z/m` by unimodular row and column operations:
/// `U·A·V = D`. Row operations are replayed on a right-hand side on demand.
pub struct ModDiagonal {
    m: u64,
    diag: Vec<u64>,
    rows: usize,
    /// Row operations in order, replayed on right-hand sides.
    ops: Vec<RowOp>,
    /// The column transform `V`, `cols × cols`.
    v: Vec<Vec<u64>>,
}

#[derive(Clone, Copy)]
enum RowOp {
    Swap(usize, usize),
    /// `(r_s, r_i) ← (x r_s + y r_i, u r_s + w r_i)`
    Mix { s: usize, i: usize, x: u64, y: u64, u: u64, w: u64 },
}

fn mix(m: u64, a: u64, b: u64, x: u64, y: u64) -> u64 {
    ((a as u128 * x as u128 + b as u128 * y as u128) % m as u128) as u64
}

/// Unimodular 2×2 data `(x, y, u, w)` sending `(a, b)` to `(gcd(a, b), 0)`.
fn elimination(m: u64, a: u64, b: u64) -> (u64, u64, u64, u64) {
    if b.is_multiple_of(a) {
        // leave the pivot row alone so the sweep terminates
        return (1 % m, 0, (m - (b / a) % m) % m, 1 % m);
    }
    let (g, x, y) = egcd(a as i128, b as i128);
    let mi = m as i128;
    let u = (-(b as i128) / g).rem_euclid(mi) as u64;
    let w = ((a as i128) / g).rem_euclid(mi) as u64;
    (x.rem_euclid(mi) as u64, y.rem_euclid(mi) as u64, u, w)
}

impl ModDiagonal {
    pub fn new(a: &[Vec<u64>], cols: usize, m: u64) -> Result<Self> {
        let rows = a.len();
        if rows.saturating_mul(cols) > MATRIX_LIMIT {
            return Err(Error::SizeGuard(format!("{rows}x{cols} matrix")));
        }
        let mut a: Vec<Vec<u64>> = a.iter().map(|r| r.iter().map(|v| v % m).collect()).collect();
        let mut v: Vec<Vec<u64>> = (0..cols)
            .map(|i| (0..cols).map(|j| u64::from(i == j) % m).collect())
            .collect();
        let mut ops = Vec::new();
        let mut diag = Vec::new();
        let mut t = 0;
        while t < rows.min(cols) {
            let Some((pi, pj)) = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .find(|&(i, j)| a[i][j] != 0)
            else {
                break;
            };
            if pi != t {
                a.swap(t, pi);
                ops.push(RowOp::Swap(t, pi));
            }
            if pj != t {
                for row in a.iter_mut().chain(v.iter_mut()) {
                    row.swap(t, pj);
                }
            }
            loop {
                for i in t + 1..rows {
                    if a[i][t] == 0 {
                        continue;
                    }
                    let (x, y, u, w) = elimination(m, a[t][t], a[i][t]);
                    for j in t..cols {
                        let (s, r) = (a[t][j], a[i][j]);
                        a[t][j] = mix(m, s, r, x, y);
                        a[i][j] = mix(m, s, r, u, w);
                    }
                    ops.push(RowOp::Mix { s: t, i, x, y, u, w });
                }
                for j in t + 1..cols {
                    if a[t][j] == 0 {
                        continue;
                    }
                    let (x, y, u, w) = elimination(m, a[t][t], a[t][j]);
                    for row in a.iter_mut().skip(t).chain(v.iter_mut()) {
                        let (s, r) = (row[t], row[j]);
                        row[t] = mix(m, s, r, x, y);
                        row[j] = mix(m, s, r, u, w);
                    }
                }
                if (t + 1..rows).all(|i| a[i][t] == 0) {
                    break;
                }
            }
            diag.push(a[t][t]);
            t += 1;
        }
        Ok(ModDiagonal { m, diag, rows, ops, v })
    }

    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// A solution of `A x ≡ y (mod m)`, if one exists.
    pub fn solve(&self, y: &[u64]) -> Option<Vec<u64>> {
        let m = self.m;
        let mut z: Vec<u64> = y.iter().map(|v| v % m).collect();
        debug_assert_eq!(z.len(), self.rows);
        for op in &self.ops {
            match *op {
                RowOp::Swap(a, b) => z.swap(a, b),
                RowOp::Mix { s, i, x, y, u, w } => {
                    let (zs, zi) = (z[s], z[i]);
                    z[s] = mix(m, zs, zi, x, y);
                    z[i] = mix(m, zs, zi, u, w);
                }
            }
        }
        if z[self.rank()..].iter().any(|&v| v != 0) {
            return None;
        }
        let cols = self.v.len();
        let mut w = vec![0u64; cols];
        for (i, &d) in self.diag.iter().enumerate() {
            let g = gcd(d, m);
            if !z[i].is_multiple_of(g) {
                return None;
            }
            let mg = m / g;
            let inv = inv_mod((d / g) % mg, mg)?;
            w[i] = ((z[i] / g) as u128 * inv as u128 % mg.max(1) as u128) as u64;
        }
        let x = (0..cols)
            .map(|r| {
                self.v[r]
                    .iter()
                    .zip(&w)
                    .fold(0u128, |acc, (&a, &b)| (acc + a as u128 * b as u128) % m as u128)
                    as u64
            })
            .collect();
        Some(x)
    }
}
