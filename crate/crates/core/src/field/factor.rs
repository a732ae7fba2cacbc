//! Factorization over finite fields: square-free decomposition, distinct-degree
//! splitting, then Cantor–Zassenhaus equal-degree splitting.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{FieldElement, Poly};
use crate::error::{Error, Result};

/// `f = unit · Π factorᵢ^multiplicityᵢ` with distinct monic irreducible factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElement,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn expand(&self) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(self.unit.clone()), |acc, (g, m)| &acc * &g.pow(*m as u64))
    }
}

pub fn factor(f: &Poly) -> Result<Factorization> {
    let unit = f.leading().cloned().ok_or(Error::FactorZero)?;
    let mut factors = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6272_6175_6572);
    for (sqfree, mult) in squarefree(&f.monic()) {
        for (block, d) in distinct_degree(&sqfree)? {
            for g in equal_degree(&block, d, &mut rng)? {
                factors.push((g, mult));
            }
        }
    }
    factors.sort();
    Ok(Factorization { unit, factors })
}

pub fn is_irreducible(f: &Poly) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    let f = f.monic();
    let d = f.derivative();
    if d.is_zero() || !f.gcd(&d).is_one() {
        return false;
    }
    matches!(distinct_degree(&f).as_deref(), Ok([(_, deg)]) if *deg == n)
}

/// `(g, m)` pairs with `Π g^m = f`, each `g` square-free and pairwise coprime.
fn squarefree(f: &Poly) -> Vec<(Poly, u32)> {
    let field = f.field().clone();
    let p = field.characteristic();
    let mut out: Vec<(Poly, u32)> = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y).expect("gcd divides");
        if fac.degree().unwrap_or(0) > 0 {
            out.push((fac, i));
        }
        w = y.clone();
        c = c.div_exact(&y).expect("gcd divides");
        i += 1;
    }
    if !c.is_one() {
        // every exponent of c is a multiple of p
        let frob_inv = field.order() / p;
        let coeffs = c
            .coeffs()
            .iter()
            .step_by(p as usize)
            .map(|x| x.pow(frob_inv))
            .collect();
        let root = Poly::new(&field, coeffs);
        for (g, m) in squarefree(&root) {
            out.push((g, m * p as u32));
        }
    }
    out
}

/// Splits a monic square-free `f` into products of irreducibles of equal degree.
fn distinct_degree(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    let q = f.field().order();
    let x = Poly::t(f.field());
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut i = 1;
    while rest.degree().unwrap_or(0) >= 2 * i {
        h = h.pow_mod(q, &rest)?;
        let g = rest.gcd(&(&h - &x));
        if !g.is_one() {
            rest = rest.div_exact(&g)?;
            h = h.rem(&rest)?;
            out.push((g, i));
        }
        i += 1;
    }
    if let Some(d) = rest.degree().filter(|&d| d > 0) {
        out.push((rest, d));
    }
    Ok(out)
}

/// Cantor–Zassenhaus: `f` is monic, square-free, all factors of degree `d`.
fn equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Poly>> {
    let n = f.degree().unwrap_or(0);
    if n == d {
        return Ok(vec![f.clone()]);
    }
    let field = f.field();
    let q = field.order();
    loop {
        let r = random_poly(f, rng);
        if r.degree().unwrap_or(0) == 0 {
            continue;
        }
        let probe = if q % 2 == 1 {
            // r^((q^d - 1)/2) = (r^(1 + q + ... + q^(d-1)))^((q-1)/2)
            let mut frob = r.clone();
            let mut norm = r.clone();
            for _ in 1..d {
                frob = frob.pow_mod(q, f)?;
                norm = (&norm * &frob).rem(f)?;
            }
            &norm.pow_mod((q - 1) / 2, f)? - &Poly::one(field)
        } else {
            // absolute trace to F_2: r + r^2 + r^4 + ... over k·d terms
            let k = field.degree() * d;
            let mut term = r.clone();
            let mut tr = r.clone();
            for _ in 1..k {
                term = term.pow_mod(2, f)?;
                tr = &tr + &term;
            }
            tr
        };
        let g = f.gcd(&probe);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            let mut out = equal_degree(&g, d, rng)?;
            out.extend(equal_degree(&f.div_exact(&g)?, d, rng)?);
            return Ok(out);
        }
    }
}

fn random_poly(f: &Poly, rng: &mut ChaCha8Rng) -> Poly {
    use rand::Rng;
    let field = f.field();
    let n = f.degree().unwrap_or(0);
    let coeffs = (0..n).map(|_| field.element(rng.gen_range(0..field.order()))).collect();
    Poly::new(field, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{parse_poly, FiniteField};

    fn roots_by_search(f: &Poly) -> usize {
        f.field().elements().filter(|x| f.eval(x).unwrap().is_zero()).count()
    }

    #[test]
    fn difference_of_squares_over_f5() {
        let f5 = FiniteField::prime(5).unwrap();
        let f = parse_poly(&f5, "t^2-1").unwrap();
        let fac = factor(&f).unwrap();
        let expect = vec![
            (parse_poly(&f5, "t+1").unwrap(), 1),
            (parse_poly(&f5, "t-1").unwrap(), 1),
        ];
        assert_eq!(fac.factors, expect);
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn linear_is_irreducible() {
        let f5 = FiniteField::prime(5).unwrap();
        let t = Poly::t(&f5);
        assert_eq!(factor(&t).unwrap().factors, vec![(t.clone(), 1)]);
        assert!(is_irreducible(&t));
    }

    #[test]
    fn rootless_quadratic_over_f7() {
        let f7 = FiniteField::prime(7).unwrap();
        let f = parse_poly(&f7, "t^2+1").unwrap();
        assert_eq!(roots_by_search(&f), 0);
        assert_eq!(factor(&f).unwrap().factors, vec![(f.clone(), 1)]);
    }

    #[test]
    fn zero_is_rejected() {
        let f7 = FiniteField::prime(7).unwrap();
        assert_eq!(factor(&Poly::zero(&f7)), Err(Error::FactorZero));
    }

    #[test]
    fn repeated_and_inseparable_factors() {
        let f3 = FiniteField::prime(3).unwrap();
        // (t+1)^4 (t^2+1)^3 (t)  over F_3: exercises the p-th root branch
        let f = &(&parse_poly(&f3, "t+1").unwrap().pow(4) * &parse_poly(&f3, "t^2+1").unwrap().pow(3))
            * &Poly::from_ints(&f3, &[0, 2]);
        let fac = factor(&f).unwrap();
        assert_eq!(fac.expand(), f);
        let mults: Vec<u32> = fac.factors.iter().map(|(_, m)| *m).collect();
        assert_eq!(mults, vec![1, 4, 3]);
        assert!(fac.factors.iter().all(|(g, _)| is_irreducible(g)));
    }

    #[test]
    fn factors_over_extension_and_char_two() {
        for q in [4u64, 9, 8] {
            let fq = FiniteField::new(q).unwrap();
            // product of all monic linear factors: t^q - t
            let f = &Poly::t(&fq).pow(q) - &Poly::t(&fq);
            let fac = factor(&f).unwrap();
            assert_eq!(fac.factors.len() as u64, q);
            assert_eq!(fac.expand(), f);
        }
        let f4 = FiniteField::new(4).unwrap();
        let f = &Poly::t(&f4).pow(16) - &Poly::t(&f4);
        let fac = factor(&f).unwrap();
        // 4 linear + 6 quadratic irreducibles over F_4
        assert_eq!(fac.factors.len(), 10);
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn count_irreducibles_matches_necklace_formula() {
        // number of monic irreducibles of degree 3 over F_5 is (125-5)/3 = 40
        let f5 = FiniteField::prime(5).unwrap();
        let count = (0..125u64)
            .filter(|&i| {
                let f = Poly::new(
                    &f5,
                    vec![f5.element(i % 5), f5.element(i / 5 % 5), f5.element(i / 25), f5.one()],
                );
                is_irreducible(&f)
            })
            .count();
        assert_eq!(count, 40);
    }
}
