use crate::arith::{build_extension, ExtField, Field, PrimeField};
use crate::error::{Error, Result};
use crate::unipoly::UniPoly;

/// Evaluates a polynomial over 𝔽_p at a point of an extension of 𝔽_p.
pub fn eval_in_extension(f: &UniPoly<PrimeField>, ext: &ExtField, a: &[u64]) -> Vec<u64> {
    let a = a.to_vec();
    f.coeffs()
        .iter()
        .rev()
        .fold(ext.zero(), |acc, c| ext.add(&ext.mul(&acc, &a), &ext.embed(*c)))
}

/// All roots of `f` in 𝔽_{p^k}, in the extension's enumeration order.
///
/// The candidates are narrowed to `g = gcd(f, X^(p^k) − X)`, which is the
/// product of the distinct linear factors of `f` over 𝔽_{p^k}; the roots of
/// `g` are then found by exhaustive evaluation.
pub fn roots_in_extension(f: &UniPoly<PrimeField>, k: usize) -> Result<(ExtField, Vec<Vec<u64>>)> {
    if f.is_zero() {
        return Err(Error::domain("roots of the zero polynomial"));
    }
    let field = *f.field();
    let ext = build_extension(field.modulus(), k)?;
    if f.is_constant() {
        return Ok((ext, Vec::new()));
    }
    let m = f.monic();
    let x = UniPoly::x(field);
    let mut h = x.rem(&m)?;
    for _ in 0..k {
        h = h.powmod(field.modulus(), &m)?;
    }
    let g = (&h - &x).gcd(&m)?;
    let want = g.degree().unwrap_or(0);
    let roots: Vec<Vec<u64>> = if want == 0 {
        Vec::new()
    } else {
        ext.elements()
            .filter(|a| ext.is_zero(&eval_in_extension(&g, &ext, a)))
            .collect()
    };
    if roots.len() != want {
        return Err(Error::Internal(format!(
            "found {} roots of a split factor of degree {want}",
            roots.len()
        )));
    }
    Ok((ext, roots))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64, c: &[i64]) -> UniPoly<PrimeField> {
        UniPoly::from_i64s(PrimeField::new(p).unwrap(), c)
    }

    #[test]
    fn examples() {
        let t2p1 = fp(3, &[1, 0, 1]);
        assert!(roots_in_extension(&t2p1, 1).unwrap().1.is_empty());
        let (ext, r) = roots_in_extension(&t2p1, 2).unwrap();
        assert_eq!(r.len(), 2);
        for a in &r {
            assert!(ext.is_zero(&eval_in_extension(&t2p1, &ext, a)));
        }
        for k in 1..4 {
            let (ext, r) = roots_in_extension(&fp(7, &[-1, 1]), k).unwrap();
            assert_eq!(r, vec![ext.one()]);
        }
        let (ext, r) = roots_in_extension(&fp(5, &[0, -2, 0, 1]), 1).unwrap();
        assert_eq!(r, vec![ext.zero()]);
        assert!(roots_in_extension(&fp(2, &[1, 1]), 21).unwrap_err().is_resource());
    }

    #[test]
    fn agrees_with_brute_force_evaluation() {
        let f = fp(3, &[2, 1, 0, 1, 1, 0, 2, 1]);
        for k in 1..=4 {
            let (ext, r) = roots_in_extension(&f, k).unwrap();
            let brute: Vec<_> = ext
                .elements()
                .filter(|a| ext.is_zero(&eval_in_extension(&f, &ext, a)))
                .collect();
            assert_eq!(r, brute);
        }
    }
}
