//! Identities satisfied by the determinant families, each returning whether
//! it holds exactly.

use crate::arith::{build_extension, Field, Integer, PrimeField, Rational, RationalField};
use crate::detfam::family::{det_family, det_sequence, family_unipoly, Family};
use crate::detfam::matrix::{build_matrix, det_direct, rank_mod_p, MultidiagSpec};
use crate::error::{Error, Result};
use crate::mpoly::MultiPoly;
use crate::unipoly::{eval_in_extension, UniPoly};

/// Largest `p^e` accepted by [`frobenius_det_identity`].
pub const MAX_FROBENIUS_INDEX: u64 = 1 << 15;

/// `det M_n = Σ_i (−1)^i C(n−i, i) r1^(n−2i) (r0 r2)^i` over ℚ[r0, r1, r2].
pub fn closed_form_check(n: usize) -> bool {
    let q = RationalField;
    let ring = Family::Generic.ring(&q);
    let mut sum = ring.zero();
    for i in 0..=n / 2 {
        let mut c = Rational::from_integer(Integer::binomial((n - i) as u64, i as u64));
        if i % 2 == 1 {
            c = q.neg(&c);
        }
        let term = ring
            .monomial(c, &[i as u32, (n - 2 * i) as u32, i as u32])
            .expect("three exponents");
        sum = &sum + &term;
    }
    sum == det_family(Family::Generic, &q, n)
}

fn convolve<K: Field>(a: &[MultiPoly<K>], b: &[MultiPoly<K>]) -> Vec<MultiPoly<K>> {
    let ring = a[0].ring();
    let mut out = vec![ring.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// Checks `den(x) · Σ_{n ≤ N} det M_n x^n ≡ 1 mod x^(N+1)`. For F the
/// denominator is also rebuilt from its factored form
/// `(1 − x)(1 + x)(1 − t x + x^2)`.
pub fn gf_truncation_check<K: Field>(family: Family, field: &K, big_n: usize) -> bool {
    let den = family.gf_denominator(field);
    if family == Family::F {
        let ring = den[0].ring();
        let p = |s: &str| ring.parse(s).expect("fixed text");
        let factored = convolve(
            &convolve(&[p("1"), p("-1")], &[p("1"), p("1")]),
            &[p("1"), p("-t"), p("1")],
        );
        if factored != den {
            return false;
        }
    }
    let dets = det_sequence(family, field, big_n);
    (0..=big_n).all(|k| {
        let mut c = dets[0].ring().zero();
        for (j, dj) in den.iter().enumerate().take(k + 1) {
            c = &c + &(dj * &dets[k - j]);
        }
        if k == 0 {
            c.is_one()
        } else {
            c.is_zero()
        }
    })
}

/// `det M_(p^e − 1) = (det M_(p − 1))^(1 + p + … + p^(e−1))` over 𝔽_p, in
/// three variables (`Family::Generic`) or in `𝔽_p[s, t]` (`Family::Q`).
pub fn frobenius_det_identity(p: u64, e: u32, family: Family) -> Result<bool> {
    if !matches!(family, Family::Generic | Family::Q) {
        return Err(Error::domain("the identity is checked for the generic and Q families"));
    }
    let field = PrimeField::new(p)?;
    let q = p
        .checked_pow(e)
        .filter(|&q| q <= MAX_FROBENIUS_INDEX && e >= 1)
        .ok_or_else(|| Error::domain(format!("{p}^{e} is outside 1..={MAX_FROBENIUS_INDEX}")))?;
    let lhs = det_family(family, &field, (q - 1) as usize);
    let base = det_family(family, &field, (p - 1) as usize);
    Ok(lhs == base.pow((q - 1) / (p - 1)))
}

/// `Q_n(s, t) = s^n P_n(t/s)` over ℚ.
pub fn homogenize_check(n: usize) -> bool {
    let q = RationalField;
    let p = family_unipoly(Family::P, &q, n).expect("univariate family");
    let ring = Family::Q.ring(&q);
    let mut hom = ring.zero();
    for (k, c) in p.coeffs().iter().enumerate() {
        if !q.is_zero(c) {
            let term = ring
                .monomial(c.clone(), &[(n - k) as u32, k as u32])
                .expect("two exponents");
            hom = &hom + &term;
        }
    }
    hom == det_family(Family::Q, &q, n)
}

/// `det M_n · (t − 1) = (−1)^n (t^(n+1) − 1)` for the Katzman band, over ℚ.
pub fn katzman_closed_form_check(n: usize) -> bool {
    let q = RationalField;
    let d = family_unipoly(Family::Katzman, &q, n).expect("univariate family");
    let t = UniPoly::x(q);
    let one = UniPoly::one(q);
    let mut rhs = &t.pow(n as u64 + 1) - &one;
    if n % 2 == 1 {
        rhs = -rhs;
    }
    &d * &(&t - &one) == rhs
}

/// `P_n(2) = n + 1` and `P_n(−2) = (−1)^n (n + 1)` over ℚ.
pub fn p_values_at_two_check(n: usize) -> bool {
    let q = RationalField;
    let p = family_unipoly(Family::P, &q, n).expect("univariate family");
    let m = Rational::from(n as i64 + 1);
    let m_signed = if n % 2 == 0 { m.clone() } else { q.neg(&m) };
    p.eval(&Rational::from(2)) == m && p.eval(&Rational::from(-2)) == m_signed
}

fn ext_pow(ext: &crate::arith::ExtField, a: &[u64], e: u64) -> Vec<u64> {
    ext.pow(&a.to_vec(), e)
}

/// For every `ξ ∈ 𝔽_(p²)` with `ξ ≠ 0, ±1`:
/// `P_n(ξ + ξ⁻¹) · ξ^n (ξ² − 1) = ξ^(2n+2) − 1`.
pub fn p_root_formula_check(n: usize, p: u64) -> Result<bool> {
    let field = PrimeField::new(p)?;
    let ext = build_extension(p, 2)?;
    let pn = family_unipoly(Family::P, &field, n)?;
    let one = ext.one();
    let minus_one = ext.neg(&one);
    for xi in ext.elements() {
        if ext.is_zero(&xi) || xi == one || xi == minus_one {
            continue;
        }
        let arg = ext.add(&xi, &ext.inv(&xi)?);
        let value = eval_in_extension(&pn, &ext, &arg);
        let scale = ext.mul(&ext_pow(&ext, &xi, n as u64), &ext.sub(&ext.mul(&xi, &xi), &one));
        let rhs = ext.sub(&ext_pow(&ext, &xi, 2 * n as u64 + 2), &one);
        if ext.mul(&value, &scale) != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For odd `n` and every `ξ ∈ 𝔽_(p²)` with `ξ ≠ 0, ±1`:
/// `F_n(ξ + ξ⁻¹) · ξ^n (ξ² − 1)² = (ξ^(n+3) − 1)(ξ^(n+1) − 1)`.
pub fn f_root_formula_check(n: usize, p: u64) -> Result<bool> {
    if n % 2 == 0 {
        return Err(Error::domain(format!("the root formula for F_n needs odd n, got {n}")));
    }
    let field = PrimeField::new(p)?;
    let ext = build_extension(p, 2)?;
    let fnp = family_unipoly(Family::F, &field, n)?;
    let one = ext.one();
    let minus_one = ext.neg(&one);
    for xi in ext.elements() {
        if ext.is_zero(&xi) || xi == one || xi == minus_one {
            continue;
        }
        let arg = ext.add(&xi, &ext.inv(&xi)?);
        let value = eval_in_extension(&fnp, &ext, &arg);
        let sq = ext.sub(&ext.mul(&xi, &xi), &one);
        let scale = ext.mul(&ext_pow(&ext, &xi, n as u64), &ext.mul(&sq, &sq));
        let rhs = ext.mul(
            &ext.sub(&ext_pow(&ext, &xi, n as u64 + 3), &one),
            &ext.sub(&ext_pow(&ext, &xi, n as u64 + 1), &one),
        );
        if ext.mul(&value, &scale) != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For a band over `𝔽_p[t]`: at every `t₀ ∈ 𝔽_p`, `det M_n(t₀) = 0` exactly
/// when `M_n(t₀)` is singular, the rank found by elimination over 𝔽_p.
pub fn support_consistency(spec: &MultidiagSpec<PrimeField>, n: usize) -> Result<bool> {
    if spec.ring().nvars() != 1 {
        return Err(Error::domain("support check needs a single parameter"));
    }
    let field = *spec.ring().field();
    let m = build_matrix(spec, n);
    let det = det_direct(&m)?;
    for t0 in field.elements() {
        let singular = rank_mod_p(&field, &m.eval(&[t0])?) < n;
        if field.is_zero(&det.eval(&[t0])?) != singular {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_small_cases() {
        for n in [0, 1, 2, 3, 10, 25] {
            assert!(closed_form_check(n), "{n}");
        }
    }

    #[test]
    fn generating_function_truncations() {
        let q = RationalField;
        for fam in [Family::P, Family::F, Family::Katzman, Family::Q] {
            assert!(gf_truncation_check(fam, &q, 0));
            assert!(gf_truncation_check(fam, &q, 10), "{fam}");
        }
        let den: Vec<String> = Family::F.gf_denominator(&q).iter().map(|c| c.to_string()).collect();
        assert_eq!(den, ["1", "-t", "0", "t", "-1"]);
    }

    #[test]
    fn frobenius_identity_small() {
        assert!(frobenius_det_identity(2, 2, Family::Q).unwrap());
        assert!(frobenius_det_identity(3, 2, Family::Generic).unwrap());
        assert!(frobenius_det_identity(5, 1, Family::Q).unwrap());
        assert!(frobenius_det_identity(4, 1, Family::Q).is_err());
        assert!(frobenius_det_identity(2, 16, Family::Q).is_err());
        assert!(frobenius_det_identity(3, 1, Family::P).is_err());
    }

    #[test]
    fn frobenius_identity_fails_off_prime_powers() {
        // over 𝔽_5 the index 3^2 − 1 = 8 is not of the form 5^e − 1
        let field = PrimeField::new(5).unwrap();
        let lhs = det_family(Family::Q, &field, 8);
        let rhs = det_family(Family::Q, &field, 2).pow(4);
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn homogenization_and_katzman() {
        for n in [0, 1, 3, 40] {
            assert!(homogenize_check(n));
            assert!(katzman_closed_form_check(n));
            assert!(p_values_at_two_check(n));
        }
    }

    #[test]
    fn root_formulas() {
        assert!(p_root_formula_check(4, 3).unwrap());
        assert!(f_root_formula_check(1, 5).unwrap());
        assert!(f_root_formula_check(3, 3).unwrap());
        assert!(f_root_formula_check(7, 5).unwrap());
        assert!(f_root_formula_check(2, 5).is_err());
    }

    #[test]
    fn supports() {
        let f5 = PrimeField::new(5).unwrap();
        let f7 = PrimeField::new(7).unwrap();
        assert!(support_consistency(&Family::P.spec(&f5), 3).unwrap());
        assert!(support_consistency(&Family::P.spec(&f5), 1).unwrap());
        assert!(support_consistency(&Family::F.spec(&f7), 3).unwrap());
        assert!(support_consistency(&Family::Q.spec(&f7), 3).is_err());
    }
}
