use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{Field, PrimeField};
use crate::error::{Error, Result};
use crate::unipoly::UniPoly;

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x5eed_0f_f4c7;

/// `unit · Π fᵢ^eᵢ` with monic, pairwise distinct irreducible `fᵢ` in
/// canonical order.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization<F: Field> {
    pub unit: F::Elem,
    pub factors: Vec<(UniPoly<F>, u32)>,
}

impl<F: Field> Factorization<F> {
    /// Normalizes: factors made monic (their leading coefficients folded into
    /// the unit), equal factors merged, canonical order.
    pub fn new(field: &F, mut unit: F::Elem, raw: Vec<(UniPoly<F>, u32)>) -> Self {
        let mut factors: Vec<(UniPoly<F>, u32)> = Vec::with_capacity(raw.len());
        for (f, e) in raw {
            if e == 0 || f.is_constant() {
                if let Some(c) = f.leading_coeff() {
                    unit = field.mul(&unit, &field.pow(c, e as u64));
                }
                continue;
            }
            let lc = f.leading_coeff().expect("nonconstant").clone();
            unit = field.mul(&unit, &field.pow(&lc, e as u64));
            factors.push((f.monic(), e));
        }
        factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        let mut merged: Vec<(UniPoly<F>, u32)> = Vec::with_capacity(factors.len());
        for (f, e) in factors {
            match merged.last_mut() {
                Some((g, m)) if *g == f => *m += e,
                _ => merged.push((f, e)),
            }
        }
        Factorization {
            unit,
            factors: merged,
        }
    }

    /// Multiplies the factorization back out.
    pub fn expand(&self, field: &F) -> UniPoly<F> {
        let mut acc = UniPoly::constant(field.clone(), self.unit.clone());
        for (f, e) in &self.factors {
            acc = &acc * &f.pow(*e as u64);
        }
        acc
    }

    pub fn distinct_count(&self) -> usize {
        self.factors.len()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, e)| *e == 1)
    }
}

impl<F: Field> fmt::Display for Factorization<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some((first, _)) = self.factors.first() {
            if !first.field().is_one(&self.unit) {
                parts.push(first.field().format_elem(&self.unit));
            }
        }
        for (g, e) in &self.factors {
            if *e == 1 {
                parts.push(format!("({g})"));
            } else {
                parts.push(format!("({g})^{e}"));
            }
        }
        if parts.is_empty() {
            return write!(f, "{:?}", self.unit);
        }
        f.write_str(&parts.join(" * "))
    }
}

// Undoes the Frobenius on a polynomial whose exponents are all multiples of p.
fn poly_pth_root<F: Field>(f: &UniPoly<F>, p: usize) -> UniPoly<F> {
    let field = f.field();
    let coeffs = f
        .coeffs()
        .iter()
        .step_by(p)
        .map(|c| field.pth_root(c))
        .collect();
    UniPoly::new(field.clone(), coeffs).with_var(f.var())
}

/// Squarefree decomposition `f = lc · Π gᵢ^i` with squarefree, pairwise
/// coprime monic `gᵢ`. Handles positive characteristic through p-th roots
/// of coefficients. Returns `(gᵢ, i)` for the nonconstant `gᵢ`.
pub fn squarefree_decomposition<F: Field>(f: &UniPoly<F>) -> Result<Vec<(UniPoly<F>, u32)>> {
    if f.is_zero() {
        return Err(Error::domain("squarefree decomposition of zero"));
    }
    let p = f.field().characteristic() as usize;
    let mut out = Vec::new();
    let f = f.monic();
    let mut c = f.gcd(&f.derivative())?;
    let mut w = f.div_exact(&c)?;
    let mut i = 1u32;
    while !w.is_constant() {
        let y = w.gcd(&c)?;
        let fac = w.div_exact(&y)?;
        if !fac.is_constant() {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(&w)?;
        i += 1;
    }
    if !c.is_constant() {
        // Everything left is a p-th power.
        debug_assert!(p > 0);
        let root = poly_pth_root(&c, p);
        for (g, e) in squarefree_decomposition(&root)? {
            out.push((g, e * p as u32));
        }
    }
    out.sort_by(|a, b| a.1.cmp(&b.1));
    Ok(out)
}

/// Product of the distinct monic irreducible factors of `f`.
pub fn squarefree_part<F: Field>(f: &UniPoly<F>) -> Result<UniPoly<F>> {
    let mut acc = UniPoly::one(f.field().clone()).with_var(f.var());
    for (g, _) in squarefree_decomposition(f)? {
        acc = &acc * &g;
    }
    Ok(acc)
}

/// Number of distinct roots in an algebraic closure.
pub fn distinct_root_count<F: Field>(f: &UniPoly<F>) -> Result<usize> {
    Ok(squarefree_part(f)?.degree().unwrap_or(0))
}

// X^(p^k) mod m by k successive p-th powers.
fn x_pow_p_pow(m: &UniPoly<PrimeField>, k: usize) -> Result<UniPoly<PrimeField>> {
    let p = m.field().modulus();
    let mut h = UniPoly::x(*m.field()).rem(m)?;
    for _ in 0..k {
        h = h.powmod(p, m)?;
    }
    Ok(h)
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: `f` of degree `n` is irreducible over 𝔽_p iff
/// `X^(p^n) ≡ X mod f` and `gcd(X^(p^(n/r)) − X, f) = 1` for each prime
/// `r | n`.
pub fn is_irreducible(f: &UniPoly<PrimeField>) -> Result<bool> {
    let n = match f.degree() {
        None | Some(0) => return Ok(false),
        Some(1) => return Ok(true),
        Some(n) => n,
    };
    let f = f.monic();
    let x = UniPoly::x(*f.field());
    if x_pow_p_pow(&f, n)? != x {
        return Ok(false);
    }
    for r in prime_divisors(n) {
        let h = &x_pow_p_pow(&f, n / r)? - &x;
        if !h.gcd(&f)?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Splits a squarefree monic `f` into `(g, d)` where `g` is the product of
/// all irreducible factors of degree `d`.
pub fn distinct_degree_factorization(
    f: &UniPoly<PrimeField>,
) -> Result<Vec<(UniPoly<PrimeField>, usize)>> {
    let p = f.field().modulus();
    let x = UniPoly::x(*f.field());
    let mut rest = f.monic();
    let mut out = Vec::new();
    let mut h = x.rem(&rest)?;
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.powmod(p, &rest)?;
        let g = (&h - &x).gcd(&rest)?;
        if !g.is_one() {
            rest = rest.div_exact(&g)?;
            h = h.rem(&rest)?;
            out.push((g, d));
        }
        d += 1;
    }
    if !rest.is_constant() {
        let deg = rest.degree().unwrap_or(0);
        out.push((rest, deg));
    }
    Ok(out)
}

fn random_poly(field: PrimeField, below: usize, rng: &mut ChaCha8Rng) -> UniPoly<PrimeField> {
    let p = field.modulus();
    let coeffs = (0..below).map(|_| rng.gen_range(0..p)).collect();
    UniPoly::new(field, coeffs)
}

/// Cantor–Zassenhaus equal-degree splitting of a squarefree monic `g` whose
/// irreducible factors all have degree `d`. Characteristic 2 uses the trace
/// map `a + a² + … + a^(2^(d−1))` in place of the half-order power.
pub fn equal_degree_factorization(
    g: &UniPoly<PrimeField>,
    d: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<UniPoly<PrimeField>>> {
    let mut out = Vec::new();
    let mut stack = vec![g.monic()];
    let field = *g.field();
    let p = field.modulus();
    while let Some(g) = stack.pop() {
        let n = g.degree().unwrap_or(0);
        if n == 0 {
            continue;
        }
        if n == d {
            out.push(g);
            continue;
        }
        loop {
            let a = random_poly(field, n, rng);
            if a.is_constant() {
                continue;
            }
            let mut h = a.gcd(&g)?;
            if h.is_one() {
                let b = if p == 2 {
                    let mut acc = a.clone();
                    let mut cur = a.clone();
                    for _ in 1..d {
                        cur = cur.mulmod(&cur, &g)?;
                        acc = &acc + &cur;
                    }
                    acc
                } else {
                    // a^((p^d − 1)/2) = (a^(1 + p + … + p^(d−1)))^((p − 1)/2)
                    let mut acc = a.clone();
                    let mut cur = a.clone();
                    for _ in 1..d {
                        cur = cur.powmod(p, &g)?;
                        acc = acc.mulmod(&cur, &g)?;
                    }
                    &acc.powmod((p - 1) / 2, &g)? - &UniPoly::one(field)
                };
                h = b.gcd(&g)?;
            }
            if !h.is_one() && h.degree() < g.degree() {
                stack.push(g.div_exact(&h)?);
                stack.push(h);
                break;
            }
        }
    }
    Ok(out)
}

/// Complete factorization over 𝔽_p: squarefree decomposition, distinct-degree
/// splitting, then seeded equal-degree splitting. The result is canonical
/// and does not depend on the seed.
pub fn factor(f: &UniPoly<PrimeField>, seed: u64) -> Result<Factorization<PrimeField>> {
    let field = *f.field();
    let lc = *f
        .leading_coeff()
        .ok_or_else(|| Error::domain("factorization of zero"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut raw = Vec::new();
    for (g, e) in squarefree_decomposition(f)? {
        for (h, d) in distinct_degree_factorization(&g)? {
            for irr in equal_degree_factorization(&h, d, &mut rng)? {
                raw.push((irr.with_var(f.var()), e));
            }
        }
    }
    Ok(Factorization::new(&field, lc, raw))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::{prop_assert_eq, proptest};

    fn fp(p: u64, c: &[i64]) -> UniPoly<PrimeField> {
        UniPoly::from_i64s(PrimeField::new(p).unwrap(), c)
    }

    // Brute-force irreducibility: no monic factor of degree 1..=n/2.
    fn brute_irreducible(f: &UniPoly<PrimeField>) -> bool {
        let p = f.field().modulus();
        let n = f.degree().unwrap();
        for d in 1..=n / 2 {
            let count = p.pow(d as u32);
            for idx in 0..count {
                let mut c: Vec<u64> = (0..d)
                    .scan(idx, |s, _| {
                        let r = *s % p;
                        *s /= p;
                        Some(r)
                    })
                    .collect();
                c.push(1);
                if f.rem(&UniPoly::new(*f.field(), c)).unwrap().is_zero() {
                    return false;
                }
            }
        }
        n >= 1
    }

    #[test]
    fn squarefree_examples() {
        let f = fp(7, &[1, -1, -1, 1]); // (t−1)²(t+1)
        assert_eq!(squarefree_part(&f).unwrap(), fp(7, &[-1, 0, 1]));
        let mut c = vec![0i64; 6];
        c[1] = -1;
        c[5] = 1;
        let f = fp(5, &c);
        assert_eq!(squarefree_part(&f).unwrap(), f);
        // (t+1)^4 over 𝔽_2 has a vanishing derivative.
        let f = fp(2, &[1, 0, 0, 0, 1]);
        assert_eq!(
            squarefree_decomposition(&f).unwrap(),
            vec![(fp(2, &[1, 1]), 4)]
        );
        assert_eq!(distinct_root_count(&fp(3, &[1, -4, 6, -4, 1])).unwrap(), 1);
    }

    #[test]
    fn factor_examples() {
        let f = factor(&fp(5, &[-2, 0, 1]), 1).unwrap();
        assert_eq!(f.factors, vec![(fp(5, &[-2, 0, 1]), 1)]);
        let f = factor(&fp(5, &[0, -2, 0, 1]), 1).unwrap();
        assert_eq!(
            f.factors,
            vec![(fp(5, &[0, 1]), 1), (fp(5, &[-2, 0, 1]), 1)]
        );
        let f = factor(&fp(3, &[-1, 0, 0, 0, 0, 1]), 1).unwrap();
        assert_eq!(f.distinct_count(), 2);
        assert_eq!(f.factors[1].0, fp(3, &[1, 1, 1, 1, 1]));
    }

    #[test]
    fn irreducibility_agrees_with_brute_force() {
        for p in [2u64, 3, 5] {
            let field = PrimeField::new(p).unwrap();
            for n in 1..=4usize {
                for idx in 0..p.pow(n as u32) {
                    let mut c: Vec<u64> = (0..n).map(|i| idx / p.pow(i as u32) % p).collect();
                    c.push(1);
                    let f = UniPoly::new(field, c);
                    assert_eq!(is_irreducible(&f).unwrap(), brute_irreducible(&f), "{f}");
                }
            }
        }
    }

    #[test]
    fn seed_does_not_change_result() {
        let f = fp(3, &[2, 0, 1, 1, 0, 2, 1, 1, 0, 0, 1, 2, 1]);
        let a = factor(&f, 1).unwrap();
        for seed in 2..10 {
            assert_eq!(factor(&f, seed).unwrap(), a);
        }
    }

    #[test]
    fn recomposition_over_small_primes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for case in 0..1000 {
            let p = [2u64, 3, 5, 7][case % 4];
            let field = PrimeField::new(p).unwrap();
            let deg = rng.gen_range(1..=30);
            let mut c: Vec<u64> = (0..deg).map(|_| rng.gen_range(0..p)).collect();
            c.push(rng.gen_range(1..p));
            let f = UniPoly::new(field, c);
            let fac = factor(&f, case as u64).unwrap();
            assert_eq!(fac.expand(&field), f);
            for w in fac.factors.windows(2) {
                assert_eq!(w[0].0.canonical_cmp(&w[1].0), std::cmp::Ordering::Less);
            }
            for (g, _) in &fac.factors {
                assert!(is_irreducible(g).unwrap(), "{g} over GF({p})");
            }
        }
    }

    proptest! {
        #[test]
        fn shared_roots_count(a in proptest::collection::vec(0u64..5, 1..6),
                              b in proptest::collection::vec(0u64..5, 1..6)) {
            let field = PrimeField::new(5).unwrap();
            let mut a = a; a.push(1);
            let mut b = b; b.push(1);
            let (f, g) = (UniPoly::new(field, a), UniPoly::new(field, b));
            let shared = distinct_root_count(&f.gcd(&g).unwrap()).unwrap();
            prop_assert_eq!(
                distinct_root_count(&(&f * &g)).unwrap(),
                distinct_root_count(&f).unwrap() + distinct_root_count(&g).unwrap() - shared
            );
        }
    }
}
