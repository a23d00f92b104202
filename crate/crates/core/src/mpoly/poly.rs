use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::Field;
use crate::error::{Error, Result};
use crate::mpoly::monomial::Monomial;
use crate::mpoly::ring::PolyRing;
use crate::text;
use crate::unipoly::UniPoly;

/// Sparse polynomial: nonzero terms sorted strictly descending in the
/// ring's term order.
#[derive(Clone, Debug)]
pub struct MultiPoly<F: Field> {
    ring: PolyRing<F>,
    terms: Vec<(F::Elem, Monomial)>,
}

impl<F: Field> PartialEq for MultiPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl<F: Field> Eq for MultiPoly<F> {}

impl<F: Field> MultiPoly<F> {
    pub fn zero(ring: &PolyRing<F>) -> Self {
        MultiPoly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn term(ring: &PolyRing<F>, c: F::Elem, m: Monomial) -> Self {
        let terms = if ring.field().is_zero(&c) {
            Vec::new()
        } else {
            vec![(c, m)]
        };
        MultiPoly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds from terms in any order; repeated monomials are combined and
    /// zero coefficients dropped.
    pub fn from_terms(ring: &PolyRing<F>, mut terms: Vec<(F::Elem, Monomial)>) -> Self {
        let f = ring.field();
        terms.sort_by(|a, b| ring.cmp(&b.1, &a.1));
        let mut out: Vec<(F::Elem, Monomial)> = Vec::with_capacity(terms.len());
        for (c, m) in terms {
            match out.last_mut() {
                Some((d, n)) if *n == m => f.add_assign(d, &c),
                _ => {
                    if out.last().is_some_and(|(d, _)| f.is_zero(d)) {
                        out.pop();
                    }
                    out.push((c, m));
                }
            }
        }
        if out.last().is_some_and(|(d, _)| f.is_zero(d)) {
            out.pop();
        }
        MultiPoly {
            ring: ring.clone(),
            terms: out,
        }
    }

    // Terms already sorted, distinct and nonzero.
    pub(crate) fn from_sorted(ring: &PolyRing<F>, terms: Vec<(F::Elem, Monomial)>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.cmp(&w[0].1, &w[1].1) == Ordering::Greater));
        MultiPoly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn terms(&self) -> &[(F::Elem, Monomial)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(_, m)| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].1.is_one() && self.field().is_one(&self.terms[0].0)
    }

    pub fn lead_term(&self) -> Option<&(F::Elem, Monomial)> {
        self.terms.first()
    }

    pub fn lm(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn lc(&self) -> Option<&F::Elem> {
        self.terms.first().map(|t| &t.0)
    }

    /// Coefficient of `m`, zero if absent.
    pub fn coeff(&self, m: &Monomial) -> F::Elem {
        self.terms
            .iter()
            .find(|(_, n)| n == m)
            .map_or_else(|| self.field().zero(), |(c, _)| c.clone())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(_, m)| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.iter().map(|(_, m)| m.exp(var)).max()
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.iter().any(|(_, m)| m.exp(var) > 0)
    }

    /// `Some(d)` when every term has weighted degree `d`.
    pub fn homogeneous_degree(&self, weights: &[u32]) -> Option<u64> {
        let mut degs = self.terms.iter().map(|(_, m)| m.weighted_degree(weights));
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self, weights: &[u32]) -> bool {
        self.is_zero() || self.homogeneous_degree(weights).is_some()
    }

    /// Splits into weighted-homogeneous components keyed by degree.
    pub fn homogeneous_components(&self, weights: &[u32]) -> BTreeMap<u64, MultiPoly<F>> {
        let mut parts: BTreeMap<u64, Vec<(F::Elem, Monomial)>> = BTreeMap::new();
        for (c, m) in &self.terms {
            parts
                .entry(m.weighted_degree(weights))
                .or_default()
                .push((c.clone(), *m));
        }
        parts
            .into_iter()
            .map(|(d, t)| (d, MultiPoly::from_sorted(&self.ring, t)))
            .collect()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::mismatch(format!(
                "rings {:?} and {:?} differ",
                self.ring.vars(),
                other.ring.vars()
            )));
        }
        Ok(())
    }

    fn merge_scaled(&self, c: &F::Elem, m: &Monomial, g: &Self) -> Self {
        MultiPoly {
            ring: self.ring.clone(),
            terms: merge_scaled(&self.ring, &self.terms, c, m, &g.terms),
        }
    }

    /// `self − c·m·g`, the elementary reduction step.
    pub fn sub_mul_term(&self, c: &F::Elem, m: &Monomial, g: &Self) -> Self {
        let neg = self.field().neg(c);
        self.merge_scaled(&neg, m, g)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.merge_scaled(&self.field().one(), &Monomial::one(), other))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.sub_mul_term(&self.field().one(), &Monomial::one(), other))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        if self.terms.len() == 1 {
            let (c, m) = &self.terms[0];
            return Ok(other.mul_term(c, m));
        }
        if other.terms.len() == 1 {
            let (c, m) = &other.terms[0];
            return Ok(self.mul_term(c, m));
        }
        let f = self.field();
        let mut acc: HashMap<Monomial, F::Elem> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (a, m) in &self.terms {
            for (b, n) in &other.terms {
                let p = f.mul(a, b);
                acc.entry(m.mul(n))
                    .and_modify(|c| f.add_assign(c, &p))
                    .or_insert(p);
            }
        }
        let mut terms: Vec<_> = acc
            .into_iter()
            .filter(|(_, c)| !f.is_zero(c))
            .map(|(m, c)| (c, m))
            .collect();
        terms.sort_by(|a, b| self.ring.cmp(&b.1, &a.1));
        Ok(MultiPoly {
            ring: self.ring.clone(),
            terms,
        })
    }

    /// `c·m·self`. Multiplying by a monomial preserves the term order.
    pub fn mul_term(&self, c: &F::Elem, m: &Monomial) -> Self {
        let f = self.field();
        if f.is_zero(c) {
            return Self::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(d, n)| (f.mul(c, d), n.mul(m)))
            .collect();
        MultiPoly {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        self.mul_term(c, &Monomial::one())
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.lc() {
            Some(c) if !self.field().is_one(c) => {
                let inv = self.field().inv(c).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
            _ => self.clone(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = self.ring.one();
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

    /// Quotient `self / g`, which must be exact.
    pub fn div_exact(&self, g: &Self) -> Result<Self> {
        self.check_same(g)?;
        let (gc, gm) = g.lead_term().ok_or(Error::DivisionByZero)?;
        let f = self.field();
        let ginv = f.inv(gc)?;
        let mut rest = self.clone();
        let mut q = Vec::new();
        while let Some((c, m)) = rest.lead_term().cloned() {
            let mm = gm.div(&m).ok_or_else(|| {
                Error::Internal(format!("exact division failed: {g} does not divide {self}"))
            })?;
            let cc = f.mul(&c, &ginv);
            rest = rest.sub_mul_term(&cc, &mm, g);
            q.push((cc, mm));
        }
        Ok(MultiPoly::from_sorted(&self.ring, q))
    }

    /// Image in `target` (same field) sending variable `i` to `map[i]`.
    pub fn map_to(&self, target: &PolyRing<F>, map: &[usize]) -> Result<Self> {
        if target.field() != self.field() {
            return Err(Error::mismatch("coefficient fields differ"));
        }
        if map.len() != self.ring.nvars() || map.iter().any(|&j| j >= target.nvars()) {
            return Err(Error::mismatch("variable map does not fit the target ring"));
        }
        let terms = self.terms.iter().map(|(c, m)| (c.clone(), m.remap(map))).collect();
        Ok(MultiPoly::from_terms(target, terms))
    }

    /// Image in a ring containing every variable this polynomial uses,
    /// matched by name.
    pub fn map_by_name(&self, target: &PolyRing<F>) -> Result<Self> {
        let map = self
            .ring
            .vars()
            .iter()
            .enumerate()
            .map(|(i, v)| match target.var_index(v) {
                Some(j) => Ok(j),
                None if !self.uses_var(i) && target.nvars() > 0 => Ok(0),
                None => Err(Error::mismatch(format!("variable {v:?} missing from target"))),
            })
            .collect::<Result<Vec<_>>>()?;
        self.map_to(target, &map)
    }

    /// Replaces variable `var` by `value`.
    pub fn substitute(&self, var: usize, value: &Self) -> Result<Self> {
        self.check_same(value)?;
        let mut powers: Vec<Self> = vec![self.ring.one()];
        let mut acc = Self::zero(&self.ring);
        for (c, m) in &self.terms {
            let e = m.exp(var) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let mut rest = m.exps(self.ring.nvars());
            rest[var] = 0;
            let rest = Monomial::from_exps(&rest)?;
            acc = &acc + &powers[e].mul_term(c, &rest);
        }
        Ok(acc)
    }

    /// Value with every variable replaced by a field element.
    pub fn eval(&self, point: &[F::Elem]) -> Result<F::Elem> {
        if point.len() != self.ring.nvars() {
            return Err(Error::mismatch("point dimension differs from variable count"));
        }
        let f = self.field();
        let mut acc = f.zero();
        for (c, m) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    t = f.mul(&t, &f.pow(x, e as u64));
                }
            }
            f.add_assign(&mut acc, &t);
        }
        Ok(acc)
    }

    /// Univariate view when only `var` occurs.
    pub fn to_univariate(&self, var: usize) -> Result<UniPoly<F>> {
        let f = self.field();
        let mut coeffs = Vec::new();
        for (c, m) in &self.terms {
            if m.degree() != m.exp(var) {
                return Err(Error::domain(format!(
                    "{self} involves variables other than {}",
                    self.ring.vars()[var]
                )));
            }
            let e = m.exp(var) as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, f.zero());
            }
            coeffs[e] = c.clone();
        }
        Ok(UniPoly::new(f.clone(), coeffs).with_var(&self.ring.vars()[var]))
    }

    pub fn from_univariate(ring: &PolyRing<F>, var: usize, u: &UniPoly<F>) -> Self {
        let terms = u
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !ring.field().is_zero(c))
            .map(|(e, c)| (c.clone(), Monomial::var(var, e as u32)))
            .collect();
        MultiPoly::from_terms(ring, terms)
    }

    fn format_monomial(&self, m: &Monomial) -> String {
        let vars = self.ring.vars();
        let parts: Vec<String> = (0..vars.len())
            .filter(|&i| m.exp(i) > 0)
            .map(|i| text::format_power(&vars[i], m.exp(i)))
            .collect();
        parts.join("*")
    }
}

/// `a + c·m·b` for term lists sorted descending in `ring`'s order.
pub(crate) fn merge_scaled<F: Field>(
    ring: &PolyRing<F>,
    a: &[(F::Elem, Monomial)],
    c: &F::Elem,
    m: &Monomial,
    b: &[(F::Elem, Monomial)],
) -> Vec<(F::Elem, Monomial)> {
    let f = ring.field();
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut a = a.iter().peekable();
    let mut b = b.iter().map(|(d, n)| (f.mul(c, d), n.mul(m))).peekable();
    loop {
        match (a.peek(), b.peek()) {
            (Some(x), Some(y)) => match ring.cmp(&x.1, &y.1) {
                Ordering::Greater => out.push(a.next().unwrap().clone()),
                Ordering::Less => out.push(b.next().unwrap()),
                Ordering::Equal => {
                    let s = f.add(&x.0, &y.0);
                    let mono = x.1;
                    a.next();
                    b.next();
                    if !f.is_zero(&s) {
                        out.push((s, mono));
                    }
                }
            },
            (Some(_), None) => out.extend(a.by_ref().cloned()),
            (None, Some(_)) => out.extend(b.by_ref()),
            (None, None) => break,
        }
    }
    out
}

impl<F: Field> fmt::Display for MultiPoly<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().map(|(c, m)| (c, self.format_monomial(m)));
        out.write_str(&text::format_sum(self.field(), terms))
    }
}

macro_rules! mpoly_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<F: Field> $tr for &MultiPoly<F> {
            type Output = MultiPoly<F>;
            /// Panics when the rings differ; the `checked_` method returns
            /// an error instead.
            fn $m(self, rhs: &MultiPoly<F>) -> MultiPoly<F> {
                self.$checked(rhs).expect("polynomials in the same ring")
            }
        }
        impl<F: Field> $tr for MultiPoly<F> {
            type Output = MultiPoly<F>;
            fn $m(self, rhs: MultiPoly<F>) -> MultiPoly<F> {
                (&self).$m(&rhs)
            }
        }
    };
}
mpoly_binop!(Add, add, checked_add);
mpoly_binop!(Sub, sub, checked_sub);
mpoly_binop!(Mul, mul, checked_mul);

impl<F: Field> Neg for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn neg(self) -> MultiPoly<F> {
        self.scale(&self.field().from_i64(-1))
    }
}

impl<F: Field> Neg for MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn neg(self) -> MultiPoly<F> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{PrimeField, RationalField};
    use crate::mpoly::TermOrder;
    use proptest::prelude::*;

    fn ring5() -> PolyRing<PrimeField> {
        PolyRing::new(PrimeField::new(5).unwrap(), &["x", "y", "z"], TermOrder::GrevLex).unwrap()
    }

    #[test]
    fn arithmetic_and_printing() {
        let r = ring5();
        let (x, y) = (r.gen(0), r.gen(1));
        let f = &(&x + &y) * &(&x - &y);
        assert_eq!(f.to_string(), "x^2 - y^2");
        let g = (&x + &y).pow(5);
        assert_eq!(g.to_string(), "x^5 + y^5");
        assert_eq!(f.div_exact(&(&x + &y)).unwrap(), &x - &y);
        assert!(f.div_exact(&(&x + &r.one())).is_err());
        assert_eq!(r.zero().to_string(), "0");
        let q = PolyRing::new(RationalField, &["s", "t"], TermOrder::Lex).unwrap();
        let h = q.parse("1/2*s^2*t - 3 + t").unwrap();
        assert_eq!(h.to_string(), "1/2*s^2*t + t - 3");
    }

    #[test]
    fn ring_mismatch() {
        let r = ring5();
        let s = r.with_order(TermOrder::Lex).unwrap();
        assert!(matches!(r.gen(0).checked_add(&s.gen(0)), Err(Error::Mismatch(_))));
        let moved = r.gen(0).map_by_name(&s).unwrap();
        assert_eq!(moved, s.gen(0));
    }

    #[test]
    fn substitution_and_univariate_views() {
        let r = ring5();
        let f = r.parse("x^2*y + z").unwrap();
        let g = f.substitute(0, &r.parse("y + 1").unwrap()).unwrap();
        assert_eq!(g, r.parse("y^3 + 2*y^2 + y + z").unwrap());
        let u = r.parse("y^3 - 2*y").unwrap().to_univariate(1).unwrap();
        assert_eq!(u.to_string(), "y^3 - 2*y");
        assert_eq!(MultiPoly::from_univariate(&r, 1, &u), r.parse("y^3 - 2*y").unwrap());
        assert!(f.to_univariate(1).is_err());
        assert_eq!(f.eval(&[2, 3, 4]).unwrap(), (4 * 3 + 4) % 5);
    }

    fn arb(r: PolyRing<PrimeField>) -> impl Strategy<Value = MultiPoly<PrimeField>> {
        proptest::collection::vec((0u64..5, 0u32..3, 0u32..3, 0u32..3), 0..6).prop_map(move |ts| {
            let terms = ts
                .into_iter()
                .map(|(c, a, b, d)| (c, Monomial::from_exps(&[a, b, d]).unwrap()))
                .collect();
            MultiPoly::from_terms(&r, terms)
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb(ring5()), b in arb(ring5()), c in arb(ring5())) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
            }
        }

        #[test]
        fn text_round_trip(a in arb(ring5())) {
            let r = a.ring().clone();
            prop_assert_eq!(r.parse(&a.to_string()).unwrap(), a);
        }
    }
}
