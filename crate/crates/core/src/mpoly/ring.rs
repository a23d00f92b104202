use std::cmp::Ordering;
use std::sync::Arc;

use crate::arith::Field;
use crate::error::{Error, Result};
use crate::mpoly::monomial::{Monomial, MAX_VARS};
use crate::mpoly::order::TermOrder;
use crate::mpoly::poly::MultiPoly;

#[derive(Debug, PartialEq)]
struct RingInner<F: Field> {
    field: F,
    vars: Vec<String>,
    order: TermOrder,
}

/// Polynomial ring `field[vars]` together with the term order used to sort
/// the terms of its elements.
#[derive(Clone, Debug)]
pub struct PolyRing<F: Field> {
    inner: Arc<RingInner<F>>,
}

impl<F: Field> PartialEq for PolyRing<F> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner == other.inner
    }
}

fn valid_identifier(s: &str) -> bool {
    let mut b = s.bytes();
    matches!(b.next(), Some(c) if c.is_ascii_alphabetic() || c == b'_')
        && b.all(|c| c.is_ascii_alphanumeric() || c == b'_')
}

impl<F: Field> PolyRing<F> {
    pub fn new<S: AsRef<str>>(field: F, vars: &[S], order: TermOrder) -> Result<Self> {
        if vars.len() > MAX_VARS {
            return Err(Error::domain(format!(
                "{} variables exceed the limit of {MAX_VARS}",
                vars.len()
            )));
        }
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if !valid_identifier(v) {
                return Err(Error::domain(format!("invalid variable name {v:?}")));
            }
            if vars[..i].contains(v) {
                return Err(Error::domain(format!("duplicate variable {v:?}")));
            }
        }
        order.validate(vars.len())?;
        Ok(PolyRing {
            inner: Arc::new(RingInner { field, vars, order }),
        })
    }

    pub fn field(&self) -> &F {
        &self.inner.field
    }

    pub fn vars(&self) -> &[String] {
        &self.inner.vars
    }

    pub fn nvars(&self) -> usize {
        self.inner.vars.len()
    }

    pub fn order(&self) -> &TermOrder {
        &self.inner.order
    }

    /// Same field and variables, different term order.
    pub fn with_order(&self, order: TermOrder) -> Result<Self> {
        if order == self.inner.order {
            return Ok(self.clone());
        }
        Self::new(self.inner.field.clone(), &self.inner.vars, order)
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.inner.vars.iter().position(|v| v == name)
    }

    pub fn var_indices(&self, names: &[&str]) -> Result<Vec<usize>> {
        names
            .iter()
            .map(|n| {
                self.var_index(n)
                    .ok_or_else(|| Error::domain(format!("unknown variable {n:?}")))
            })
            .collect()
    }

    /// The `i`-th variable as a polynomial.
    pub fn gen(&self, i: usize) -> MultiPoly<F> {
        MultiPoly::term(self, self.field().one(), Monomial::var(i, 1))
    }

    pub fn var(&self, name: &str) -> Result<MultiPoly<F>> {
        let i = self
            .var_index(name)
            .ok_or_else(|| Error::domain(format!("unknown variable {name:?}")))?;
        Ok(self.gen(i))
    }

    pub fn zero(&self) -> MultiPoly<F> {
        MultiPoly::zero(self)
    }

    pub fn one(&self) -> MultiPoly<F> {
        self.constant(self.field().one())
    }

    pub fn constant(&self, c: F::Elem) -> MultiPoly<F> {
        MultiPoly::term(self, c, Monomial::one())
    }

    pub fn from_i64(&self, n: i64) -> MultiPoly<F> {
        self.constant(self.field().from_i64(n))
    }

    /// `c · Π x_i^{e_i}`.
    pub fn monomial(&self, c: F::Elem, exps: &[u32]) -> Result<MultiPoly<F>> {
        if exps.len() > self.nvars() {
            return Err(Error::domain("exponent vector longer than variable list"));
        }
        Ok(MultiPoly::term(self, c, Monomial::from_exps(exps)?))
    }

    pub fn parse(&self, text: &str) -> Result<MultiPoly<F>> {
        crate::mpoly::text::parse_poly(self, text, 1)
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.inner.order.cmp(a, b, self.inner.vars.len())
    }

    /// Ring with `extra` new variables in front, under `order`.
    pub fn prepend_vars<S: AsRef<str>>(&self, extra: &[S], order: TermOrder) -> Result<Self> {
        let mut vars: Vec<String> = extra.iter().map(|s| s.as_ref().to_string()).collect();
        vars.extend(self.inner.vars.iter().cloned());
        Self::new(self.inner.field.clone(), &vars, order)
    }

    /// A variable name not used in this ring, derived from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        let mut name = base.to_string();
        let mut k = 0;
        while self.var_index(&name).is_some() {
            k += 1;
            name = format!("{base}{k}");
        }
        name
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::PrimeField;

    #[test]
    fn construction_checks() {
        let f = PrimeField::new(5).unwrap();
        assert!(PolyRing::new(f, &["x", "y"], TermOrder::GrevLex).is_ok());
        assert!(PolyRing::new(f, &["x", "x"], TermOrder::GrevLex).is_err());
        assert!(PolyRing::new(f, &["1x"], TermOrder::GrevLex).is_err());
        assert!(PolyRing::new(f, &["x"], TermOrder::Weighted(vec![1, 1])).is_err());
        let many: Vec<String> = (0..17).map(|i| format!("x{i}")).collect();
        assert!(PolyRing::new(f, &many, TermOrder::Lex).is_err());
        let r = PolyRing::new(f, &["x", "y"], TermOrder::GrevLex).unwrap();
        assert_eq!(r.fresh_name("x"), "x1");
        assert_eq!(r.with_order(TermOrder::GrevLex).unwrap(), r);
        assert_ne!(r.with_order(TermOrder::Lex).unwrap(), r);
    }
}
