use std::sync::Arc;

use crate::arith::field::Field;
use crate::arith::prime::PrimeField;
use crate::error::{Error, Result};
use crate::unipoly::{is_irreducible, UniPoly};

/// Upper bound on `p^k` for extension construction and element enumeration.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 1 << 20;

#[derive(Debug, PartialEq, Eq, Hash)]
struct ExtInner {
    base: PrimeField,
    degree: usize,
    // Monic defining polynomial, ascending coefficients, length degree + 1.
    modulus: Vec<u64>,
    order: u64,
}

/// The field 𝔽_{p^k} = 𝔽_p[z]/(g) for a fixed monic irreducible `g`.
/// Elements are coordinate vectors of length `k` in the basis 1, z, …, z^{k-1}.
#[derive(Debug, Clone)]
pub struct ExtField {
    inner: Arc<ExtInner>,
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner == other.inner
    }
}

/// Finds the first monic irreducible of degree `k` over 𝔽_p, enumerating
/// candidates by the integer whose base-`p` digits are the coefficients
/// `c_0, …, c_{k-1}` (`c_0` least significant), and returns the extension it
/// defines.
pub fn build_extension(p: u64, k: usize) -> Result<ExtField> {
    build_extension_with_budget(p, k, DEFAULT_ENUMERATION_BUDGET)
}

pub fn build_extension_with_budget(p: u64, k: usize, budget: u64) -> Result<ExtField> {
    let base = PrimeField::new(p)?;
    if k == 0 {
        return Err(Error::domain("extension degree must be at least 1"));
    }
    let order = (0..k)
        .try_fold(1u64, |acc, _| acc.checked_mul(p))
        .filter(|&o| o <= budget)
        .ok_or_else(|| Error::resource(format!("{p}^{k} exceeds enumeration budget {budget}")))?;
    for index in 0..order {
        let mut coeffs = digits(index, p, k);
        coeffs.push(1);
        let candidate = UniPoly::new(base, coeffs.clone());
        if is_irreducible(&candidate)? {
            return Ok(ExtField {
                inner: Arc::new(ExtInner {
                    base,
                    degree: k,
                    modulus: coeffs,
                    order,
                }),
            });
        }
    }
    Err(Error::Internal(format!(
        "no irreducible polynomial of degree {k} over GF({p})"
    )))
}

fn digits(mut n: u64, p: u64, k: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(k + 1);
    for _ in 0..k {
        out.push(n % p);
        n /= p;
    }
    out
}

impl ExtField {
    pub fn base(&self) -> PrimeField {
        self.inner.base
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn order(&self) -> u64 {
        self.inner.order
    }

    /// The defining polynomial, ascending coefficients.
    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    pub fn defining_polynomial(&self) -> UniPoly<PrimeField> {
        UniPoly::new(self.inner.base, self.inner.modulus.clone()).with_var("z")
    }

    pub fn embed(&self, c: u64) -> Vec<u64> {
        let mut v = vec![0; self.inner.degree];
        v[0] = c % self.inner.base.modulus();
        v
    }

    /// The class of `z`.
    pub fn generator(&self) -> Vec<u64> {
        let mut v = vec![0; self.inner.degree];
        if self.inner.degree == 1 {
            // z ≡ -c_0 when the modulus is linear.
            v[0] = self.inner.base.neg(&self.inner.modulus[0]);
        } else {
            v[1] = 1;
        }
        v
    }

    /// The `index`-th element in the deterministic enumeration order.
    pub fn element(&self, index: u64) -> Vec<u64> {
        digits(index, self.inner.base.modulus(), self.inner.degree)
    }

    pub fn elements(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        (0..self.inner.order).map(move |i| self.element(i))
    }

    pub fn frobenius(&self, a: &[u64]) -> Vec<u64> {
        self.pow(&a.to_vec(), self.inner.base.modulus())
    }
}

impl Field for ExtField {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.inner.degree]
    }
    fn one(&self) -> Vec<u64> {
        self.embed(1)
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&c| c == 0)
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let f = &self.inner.base;
        a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let f = &self.inner.base;
        a.iter().zip(b).map(|(x, y)| f.sub(x, y)).collect()
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        let f = &self.inner.base;
        a.iter().map(|x| f.neg(x)).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let f = &self.inner.base;
        let k = self.inner.degree;
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = f.add(&prod[i + j], &f.mul(x, y));
            }
        }
        let m = &self.inner.modulus;
        for top in (k..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for i in 0..k {
                let idx = top - k + i;
                prod[idx] = f.sub(&prod[idx], &f.mul(&c, &m[i]));
            }
        }
        prod.truncate(k);
        prod
    }
    fn inv(&self, a: &Vec<u64>) -> Result<Vec<u64>> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.inner.order - 2))
    }
    fn from_i64(&self, n: i64) -> Vec<u64> {
        self.embed(self.inner.base.elem(n))
    }
    fn characteristic(&self) -> u64 {
        self.inner.base.modulus()
    }
    fn cardinality(&self) -> Option<u64> {
        Some(self.inner.order)
    }
    fn pth_root(&self, a: &Vec<u64>) -> Vec<u64> {
        // a^(p^(k-1)) inverts the Frobenius on 𝔽_{p^k}.
        let mut r = a.clone();
        for _ in 1..self.inner.degree {
            r = self.frobenius(&r);
        }
        r
    }
    fn format_elem(&self, a: &Vec<u64>) -> String {
        let f = &self.inner.base;
        let nonzero: Vec<usize> = (0..a.len()).rev().filter(|&i| a[i] != 0).collect();
        if nonzero.is_empty() {
            return "0".into();
        }
        if nonzero == [0] {
            return f.format_elem(&a[0]);
        }
        let mut s = String::from("(");
        for (n, &i) in nonzero.iter().enumerate() {
            let c = a[i];
            let neg = f.is_negative(&c);
            let mag = if neg { f.neg(&c) } else { c };
            if n == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => "z".into(),
                _ => format!("z^{i}"),
            };
            if mono.is_empty() {
                s.push_str(&f.format_elem(&mag));
            } else if mag == 1 {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{}*{}", f.format_elem(&mag), mono));
            }
        }
        s.push(')');
        s
    }
    fn parse_elem(&self, s: &str) -> Result<Vec<u64>> {
        let t = s.trim();
        let t = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(t);
        let poly = crate::unipoly::parse_unipoly(&self.inner.base, "z", t)?;
        let mut out = self.zero();
        // Reduce z^i for i >= k through repeated multiplication.
        let z = self.generator();
        let mut zi = self.one();
        for c in poly.coeffs() {
            let term: Vec<u64> = zi.iter().map(|x| self.inner.base.mul(x, c)).collect();
            out = self.add(&out, &term);
            zi = self.mul(&zi, &z);
        }
        Ok(out)
    }
    fn is_negative(&self, a: &Vec<u64>) -> bool {
        a.iter().skip(1).all(|&c| c == 0) && self.inner.base.is_negative(&a[0])
    }
    fn name(&self) -> String {
        format!("GF({}^{})", self.inner.base.modulus(), self.inner.degree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_extensions() {
        let f9 = build_extension(3, 2).unwrap();
        assert_eq!(f9.order(), 9);
        assert_eq!(f9.elements().count(), 9);
        let f4 = build_extension(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        let f5 = build_extension(5, 1).unwrap();
        assert_eq!(f5.order(), 5);
        // Arithmetic agrees with 𝔽_5 through the embedding.
        for a in 0..5u64 {
            for b in 0..5u64 {
                assert_eq!(f5.mul(&f5.embed(a), &f5.embed(b)), f5.embed(a * b % 5));
            }
        }
        assert!(build_extension(2, 30).unwrap_err().is_resource());
    }

    #[test]
    fn multiplicative_group_order() {
        for (p, k) in [(2u64, 3usize), (3, 2), (5, 2), (7, 2), (2, 5)] {
            let f = build_extension(p, k).unwrap();
            let n = f.order() - 1;
            for a in f.elements().filter(|a| !f.is_zero(a)) {
                assert!(f.is_one(&f.pow(&a, n)));
                assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
            }
            // Some element has full order: the group is cyclic of order p^k - 1.
            let full = f.elements().filter(|a| !f.is_zero(a)).any(|a| {
                (1..n).filter(|d| n % d == 0).all(|d| !f.is_one(&f.pow(&a, d)))
            });
            assert!(full, "GF({p}^{k})");
        }
    }

    #[test]
    fn frobenius_is_additive_exhaustively() {
        for (p, k) in [(2u64, 9usize), (3, 5), (5, 3), (7, 3), (23, 1), (3, 4)] {
            let f = build_extension(p, k).unwrap();
            assert!(f.order() <= 512);
            let elems: Vec<_> = f.elements().collect();
            let frob: Vec<_> = elems.iter().map(|a| f.frobenius(a)).collect();
            for (i, a) in elems.iter().enumerate() {
                for (j, b) in elems.iter().enumerate() {
                    let lhs = f.frobenius(&f.add(a, b));
                    assert_eq!(lhs, f.add(&frob[i], &frob[j]));
                }
            }
        }
    }

    #[test]
    fn element_text_round_trip() {
        let f = build_extension(5, 2).unwrap();
        for a in f.elements() {
            let s = f.format_elem(&a);
            assert_eq!(f.parse_elem(&s).unwrap(), a, "{s}");
        }
    }

    #[test]
    fn pth_root_inverts_frobenius() {
        let f = build_extension(3, 3).unwrap();
        for a in f.elements() {
            assert_eq!(f.frobenius(&f.pth_root(&a)), a);
        }
    }
}
