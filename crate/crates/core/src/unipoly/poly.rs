use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::arith::Field;
use crate::error::{Error, Result};
use crate::text;

/// Dense univariate polynomial; `coeffs[i]` is the coefficient of `var^i`.
/// The last stored coefficient is nonzero, so the zero polynomial is empty.
#[derive(Clone, Debug)]
pub struct UniPoly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
    var: Arc<str>,
}

impl<F: Field> PartialEq for UniPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}

impl<F: Field> Eq for UniPoly<F> {}

impl<F: Field> UniPoly<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly {
            field,
            coeffs,
            var: Arc::from("t"),
        }
    }

    pub fn zero(field: F) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: F) -> Self {
        let one = field.one();
        Self::new(field, vec![one])
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Self::new(field, vec![c])
    }

    /// `c · var^e`.
    pub fn monomial(field: F, c: F::Elem, e: usize) -> Self {
        let mut v = vec![field.zero(); e + 1];
        v[e] = c;
        Self::new(field, v)
    }

    /// The variable itself.
    pub fn x(field: F) -> Self {
        let one = field.one();
        Self::monomial(field, one, 1)
    }

    pub fn from_i64s(field: F, coeffs: &[i64]) -> Self {
        let v = coeffs.iter().map(|&c| field.from_i64(c)).collect();
        Self::new(field, v)
    }

    pub fn with_var(mut self, name: &str) -> Self {
        self.var = Arc::from(name);
        self
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    fn like(&self, coeffs: Vec<F::Elem>) -> Self {
        let mut p = Self::new(self.field.clone(), coeffs);
        p.var = self.var.clone();
        p
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::mismatch(format!(
                "{} vs {}",
                self.field.name(),
                other.field.name()
            )));
        }
        Ok(())
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        self.like(self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    /// Divides by the leading coefficient; the zero polynomial is returned
    /// unchanged.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) if !self.field.is_one(lc) => {
                let inv = self.field.inv(lc).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
            _ => self.clone(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => f.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Ok(self.like(v))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(self.like(Vec::new()));
        }
        let f = &self.field;
        let mut v = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                f.add_assign(&mut v[i + j], &f.mul(a, b));
            }
        }
        Ok(self.like(v))
    }

    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        self.check_same(d)?;
        let dl = d.leading_coeff().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        let dn = d.coeffs.len() - 1;
        if self.coeffs.len() <= dn {
            return Ok((self.like(Vec::new()), self.clone()));
        }
        let inv = f.inv(dl)?;
        let mut r = self.coeffs.clone();
        let mut q = vec![f.zero(); r.len() - dn];
        for k in (0..q.len()).rev() {
            let c = f.mul(&r[k + dn], &inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, b) in d.coeffs.iter().enumerate() {
                r[k + j] = f.sub(&r[k + j], &f.mul(&c, b));
            }
            q[k] = c;
        }
        r.truncate(dn);
        Ok((self.like(q), self.like(r)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.divrem(d)?.1)
    }

    /// Quotient of an exact division; a nonzero remainder is an error.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.divrem(d)?;
        if !r.is_zero() {
            return Err(Error::domain(format!("{d} does not divide {self}")));
        }
        Ok(q)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
            .collect();
        self.like(v)
    }

    /// Horner evaluation.
    pub fn eval(&self, a: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, a), c))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = self.like(vec![self.field.one()]);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn mulmod(&self, other: &Self, m: &Self) -> Result<Self> {
        self.checked_mul(other)?.rem(m)
    }

    /// `self^e mod m` by square-and-multiply.
    pub fn powmod(&self, mut e: u64, m: &Self) -> Result<Self> {
        let mut acc = self.like(vec![self.field.one()]).rem(m)?;
        let mut base = self.rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, m)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mulmod(&base, m)?;
            }
        }
        Ok(acc)
    }

    /// `self(g)`.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        self.check_same(g)?;
        let mut acc = self.like(Vec::new());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &self.like(vec![c.clone()]);
        }
        Ok(acc)
    }

    /// Coefficientwise image in another field.
    pub fn map_coeffs<G: Field>(&self, field: G, f: impl Fn(&F::Elem) -> G::Elem) -> UniPoly<G> {
        let v = self.coeffs.iter().map(f).collect();
        UniPoly::new(field, v).with_var(&self.var)
    }

    /// Canonical sort key: degree first, then coefficients from the constant
    /// term upward.
    pub(crate) fn canonical_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl<F: Field> fmt::Display for UniPoly<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !self.field.is_zero(c))
            .map(|(i, c)| {
                let mono = if i == 0 {
                    String::new()
                } else {
                    text::format_power(&self.var, i as u32)
                };
                (c, mono)
            });
        out.write_str(&text::format_sum(&self.field, terms))
    }
}

/// Parses the sparse text form, e.g. `t^3 - 2*t + 1`. Terms may appear in
/// any order and repeat; the only identifier allowed is `var`.
pub fn parse_unipoly<F: Field>(field: &F, var: &str, input: &str) -> Result<UniPoly<F>> {
    let terms = text::parse_terms(input, 1)?;
    let mut coeffs: Vec<F::Elem> = Vec::new();
    for term in &terms {
        let c = text::term_coefficient(field, term, 1)?;
        let mut e: usize = 0;
        for (name, exp, col) in &term.vars {
            if name != var {
                return Err(Error::Parse {
                    line: 1,
                    col: *col,
                    msg: format!("unknown variable {name:?}, expected {var:?}"),
                });
            }
            e = e
                .checked_add(*exp as usize)
                .filter(|&e| e <= MAX_PARSED_DEGREE)
                .ok_or_else(|| Error::Parse {
                    line: 1,
                    col: *col,
                    msg: format!("degree exceeds {MAX_PARSED_DEGREE}"),
                })?;
        }
        if coeffs.len() <= e {
            coeffs.resize(e + 1, field.zero());
        }
        field.add_assign(&mut coeffs[e], &c);
    }
    Ok(UniPoly::new(field.clone(), coeffs).with_var(var))
}

/// Dense storage makes huge exponents in untrusted text a memory hazard.
pub const MAX_PARSED_DEGREE: usize = 1 << 20;

macro_rules! poly_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<F: Field> $tr for &UniPoly<F> {
            type Output = UniPoly<F>;
            /// Panics when the coefficient fields differ; use the `checked_`
            /// method to get an error instead.
            fn $m(self, rhs: &UniPoly<F>) -> UniPoly<F> {
                self.$checked(rhs).expect("polynomials over the same field")
            }
        }
        impl<F: Field> $tr for UniPoly<F> {
            type Output = UniPoly<F>;
            fn $m(self, rhs: UniPoly<F>) -> UniPoly<F> {
                (&self).$m(&rhs)
            }
        }
    };
}
poly_binop!(Add, add, checked_add);
poly_binop!(Sub, sub, checked_sub);
poly_binop!(Mul, mul, checked_mul);

impl<F: Field> Neg for &UniPoly<F> {
    type Output = UniPoly<F>;
    fn neg(self) -> UniPoly<F> {
        let f = &self.field;
        self.like(self.coeffs.iter().map(|c| f.neg(c)).collect())
    }
}

impl<F: Field> Neg for UniPoly<F> {
    type Output = UniPoly<F>;
    fn neg(self) -> UniPoly<F> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{PrimeField, RationalField};
    use proptest::prelude::*;

    fn qp(c: &[i64]) -> UniPoly<RationalField> {
        UniPoly::from_i64s(RationalField, c)
    }

    #[test]
    fn gcd_and_division() {
        let g = qp(&[-1, 0, 1]).gcd(&qp(&[-1, 1])).unwrap();
        assert_eq!(g, qp(&[-1, 1]));
        let (q, r) = qp(&[0, 0, 0, 1]).divrem(&qp(&[0, 0, 1])).unwrap();
        assert_eq!((q, r.is_zero()), (qp(&[0, 1]), true));
        // P_3 = t^3 - 2t is squarefree over ℚ.
        let p3 = qp(&[0, -2, 0, 1]);
        assert!(p3.gcd(&p3.derivative()).unwrap().is_one());
        assert_eq!(p3.divrem(&UniPoly::zero(RationalField)), Err(Error::DivisionByZero));
    }

    #[test]
    fn field_mismatch_is_an_error() {
        let a = UniPoly::from_i64s(PrimeField::new(5).unwrap(), &[1, 1]);
        let b = UniPoly::from_i64s(PrimeField::new(7).unwrap(), &[1, 1]);
        assert!(matches!(a.checked_add(&b), Err(Error::Mismatch(_))));
        assert!(matches!(a.gcd(&b), Err(Error::Mismatch(_))));
    }

    #[test]
    fn text_format() {
        let p = qp(&[1, -2, 0, 1]);
        assert_eq!(p.to_string(), "t^3 - 2*t + 1");
        assert_eq!(qp(&[]).to_string(), "0");
        assert_eq!(qp(&[0, -1]).to_string(), "-t");
        let f5 = PrimeField::new(5).unwrap();
        let p = parse_unipoly(&f5, "t", "t^2 - 2").unwrap();
        assert_eq!(p.coeffs(), &[3, 0, 1]);
        assert_eq!(p.to_string(), "t^2 - 2");
        let q = parse_unipoly(&RationalField, "t", "1/2*t + t - 3/4*t^0").unwrap();
        assert_eq!(q.to_string(), "3/2*t - 3/4");
        assert!(parse_unipoly(&RationalField, "t", "x + 1").is_err());
        assert!(parse_unipoly(&RationalField, "t", "t^4294967295*t^4294967295").is_err());
    }

    #[test]
    fn powmod_matches_pow() {
        let f = PrimeField::new(7).unwrap();
        let a = UniPoly::from_i64s(f, &[3, 1, 4]);
        let m = UniPoly::from_i64s(f, &[1, 5, 0, 2, 1]);
        for e in 0..20 {
            assert_eq!(a.powmod(e, &m).unwrap(), a.pow(e).rem(&m).unwrap());
        }
    }

    fn arb_poly(p: u64) -> impl Strategy<Value = UniPoly<PrimeField>> {
        proptest::collection::vec(0..p, 0..12)
            .prop_map(move |c| UniPoly::new(PrimeField::new(p).unwrap(), c))
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(5), b in arb_poly(5), c in arb_poly(5)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
        }

        #[test]
        fn division_identity(a in arb_poly(7), b in arb_poly(7)) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.divrem(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.is_zero() || r.degree() < b.degree());
        }

        #[test]
        fn gcd_divides_both(a in arb_poly(3), b in arb_poly(3)) {
            let g = a.gcd(&b).unwrap();
            if !g.is_zero() {
                prop_assert!(a.rem(&g).unwrap().is_zero());
                prop_assert!(b.rem(&g).unwrap().is_zero());
            }
        }

        #[test]
        fn text_round_trip(a in arb_poly(11)) {
            let s = a.to_string();
            prop_assert_eq!(parse_unipoly(a.field(), "t", &s).unwrap(), a);
        }
    }
}
