//! Membership in a homogeneous ideal by linear algebra on one graded piece
//! at a time. No Gröbner basis is involved.

use std::collections::{BTreeMap, HashMap};

use crate::arith::Field;
use crate::error::{Error, Result};
use crate::mpoly::ideal::Ideal;
use crate::mpoly::monomial::Monomial;
use crate::mpoly::poly::MultiPoly;

/// Limit on the number of spanning products built for one graded piece.
pub const DEFAULT_ROW_LIMIT: usize = 200_000;

/// Decides `f ∈ I` for `I` generated by polynomials homogeneous for
/// `weights`. Each homogeneous component of `f` is tested against the span
/// of `m·g` over generators `g` and monomials `m` of complementary degree.
///
/// Variables of weight zero make a piece infinite-dimensional; then
/// `zero_weight_cap` bounds the total exponent of those variables in the
/// multipliers `m` and is required. `true` is always certain; `false` is
/// relative to the cap.
pub fn graded_piece_membership<F: Field>(
    f: &MultiPoly<F>,
    ideal: &Ideal<F>,
    weights: &[u32],
    zero_weight_cap: Option<u32>,
) -> Result<bool> {
    graded_piece_membership_limited(f, ideal, weights, zero_weight_cap, DEFAULT_ROW_LIMIT)
}

pub fn graded_piece_membership_limited<F: Field>(
    f: &MultiPoly<F>,
    ideal: &Ideal<F>,
    weights: &[u32],
    zero_weight_cap: Option<u32>,
    row_limit: usize,
) -> Result<bool> {
    let grading = Grading {
        weights: weights.to_vec(),
        extra: Vec::new(),
        zero_weight_cap,
        row_limit,
    };
    grading.contains(f, ideal)
}

/// A nonnegative grading plus any number of signed gradings the ideal is
/// also homogeneous for. The signed ones only shrink the pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    pub weights: Vec<u32>,
    pub extra: Vec<Vec<i64>>,
    pub zero_weight_cap: Option<u32>,
    pub row_limit: usize,
}

type Degree = (u64, Vec<i64>);

impl Grading {
    pub fn new(weights: &[u32]) -> Self {
        Grading {
            weights: weights.to_vec(),
            extra: Vec::new(),
            zero_weight_cap: None,
            row_limit: DEFAULT_ROW_LIMIT,
        }
    }

    pub fn with_extra(mut self, extra: Vec<i64>) -> Self {
        self.extra.push(extra);
        self
    }

    pub fn with_cap(mut self, cap: u32) -> Self {
        self.zero_weight_cap = Some(cap);
        self
    }

    pub fn with_row_limit(mut self, limit: usize) -> Self {
        self.row_limit = limit;
        self
    }

    fn degree(&self, m: &Monomial) -> Degree {
        let extra = self
            .extra
            .iter()
            .map(|w| w.iter().enumerate().map(|(i, &wi)| wi * m.exp(i) as i64).sum())
            .collect();
        (m.weighted_degree(&self.weights), extra)
    }

    fn poly_degree<F: Field>(&self, g: &MultiPoly<F>) -> Option<Degree> {
        let mut it = g.terms().iter().map(|(_, m)| self.degree(m));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Whether `g` is homogeneous for every grading (zero counts as
    /// homogeneous).
    pub fn is_homogeneous<F: Field>(&self, g: &MultiPoly<F>) -> bool {
        g.is_zero() || self.poly_degree(g).is_some()
    }

    /// Decides `f ∈ I` piece by piece, working modulo the monomial
    /// generators of `I`.
    pub fn contains<F: Field>(&self, f: &MultiPoly<F>, ideal: &Ideal<F>) -> Result<bool> {
        let ring = ideal.ring();
        let n = ring.nvars();
        if self.weights.len() != n || self.extra.iter().any(|w| w.len() != n) {
            return Err(Error::domain(format!("grading has the wrong length for {n} variables")));
        }
        if f.ring().vars() != ring.vars() {
            return Err(Error::mismatch("polynomial outside the ideal's ring"));
        }
        let f = f.map_by_name(ring)?;
        let has_zero = self.weights.contains(&0);
        if has_zero && self.zero_weight_cap.is_none() {
            return Err(Error::domain(
                "graded pieces are infinite-dimensional without a cap on weight-zero variables",
            ));
        }
        let cap = self.zero_weight_cap.unwrap_or(0);
        let mut monos: Vec<Monomial> = Vec::new();
        let mut gens: Vec<(Degree, &MultiPoly<F>)> = Vec::new();
        for g in ideal.gens() {
            let d = self
                .poly_degree(g)
                .ok_or_else(|| Error::domain(format!("generator {g} is not homogeneous")))?;
            if g.len() == 1 {
                monos.push(*g.lm().expect("nonzero"));
            } else {
                gens.push((d, g));
            }
        }
        if monos.iter().any(Monomial::is_one) {
            return Ok(true);
        }
        // Exponent bounds from pure powers: x_i^k ∈ I forces e_i < k.
        let mut bound = vec![u32::MAX; n];
        for m in &monos {
            let support: Vec<usize> = m.support().collect();
            if let [i] = support[..] {
                bound[i] = bound[i].min(m.exp(i));
            }
        }
        let outside = |m: &Monomial| !monos.iter().any(|g| g.divides(m));
        let mut parts: BTreeMap<Degree, Vec<(F::Elem, Monomial)>> = BTreeMap::new();
        for (c, m) in f.terms() {
            if outside(m) {
                parts.entry(self.degree(m)).or_default().push((c.clone(), *m));
            }
        }
        let one = ring.field().one();
        for (deg, terms) in parts {
            let part = MultiPoly::from_terms(ring, terms);
            let mut echelon = Echelon::new();
            let mut rows = 0usize;
            for (d, g) in &gens {
                if d.0 > deg.0 {
                    continue;
                }
                let target: Vec<i64> = deg.1.iter().zip(&d.1).map(|(a, b)| a - b).collect();
                let mut multipliers = Vec::new();
                let mut exps = vec![0u32; n];
                let walk = Walk {
                    weights: &self.weights,
                    bound: &bound,
                };
                walk.fill(0, deg.0 - d.0, cap, &mut exps, &mut multipliers);
                for m in multipliers {
                    if self.degree(&m).1 != target || !outside(&m) {
                        continue;
                    }
                    rows += 1;
                    if rows > self.row_limit {
                        return Err(Error::resource(format!(
                            "graded piece of degree {} needs more than {} rows",
                            deg.0, self.row_limit
                        )));
                    }
                    let row = g.mul_term(&one, &m);
                    let kept: Vec<_> = row.terms().iter().filter(|(_, t)| outside(t)).cloned().collect();
                    echelon.insert(MultiPoly::from_terms(ring, kept));
                }
            }
            if !echelon.reduce(part).is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

struct Walk<'a> {
    weights: &'a [u32],
    bound: &'a [u32],
}

impl Walk<'_> {
    /// Monomials of weighted degree `left` with weight-zero exponents
    /// summing to at most `cap` and each exponent below its bound.
    fn fill(&self, i: usize, left: u64, cap: u32, exps: &mut [u32], out: &mut Vec<Monomial>) {
        if i == self.weights.len() {
            if left == 0 {
                if let Ok(m) = Monomial::from_exps(exps) {
                    out.push(m);
                }
            }
            return;
        }
        let w = self.weights[i] as u64;
        let mut max = if w == 0 { cap as u64 } else { left / w };
        max = max.min(u16::MAX as u64).min(self.bound[i].saturating_sub(1) as u64);
        for e in 0..=max {
            exps[i] = e as u32;
            let (left, cap) = if w == 0 {
                (left, cap - e as u32)
            } else {
                (left - e * w, cap)
            };
            self.fill(i + 1, left, cap, exps, out);
        }
        exps[i] = 0;
    }
}

/// Rows in echelon form keyed by their monic leading monomial.
struct Echelon<F: Field> {
    pivots: HashMap<Monomial, MultiPoly<F>>,
}

impl<F: Field> Echelon<F> {
    fn new() -> Self {
        Echelon {
            pivots: HashMap::new(),
        }
    }

    fn reduce(&self, mut v: MultiPoly<F>) -> MultiPoly<F> {
        while let Some((c, m)) = v.lead_term().cloned() {
            match self.pivots.get(&m) {
                Some(row) => v = v.sub_mul_term(&c, &Monomial::one(), row),
                None => break,
            }
        }
        v
    }

    fn insert(&mut self, v: MultiPoly<F>) {
        let v = self.reduce(v);
        if let Some(m) = v.lm().copied() {
            self.pivots.insert(m, v.monic());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{PrimeField, RationalField};
    use crate::mpoly::order::TermOrder;
    use crate::mpoly::ring::PolyRing;

    fn ideal<F: Field>(ring: &PolyRing<F>, gens: &[&str]) -> Ideal<F> {
        Ideal::new(ring, gens.iter().map(|g| ring.parse(g).unwrap()).collect()).unwrap()
    }

    #[test]
    fn small_pieces() {
        let r = PolyRing::new(RationalField, &["x", "y"], TermOrder::GrevLex).unwrap();
        let i = ideal(&r, &["x^2", "y^2"]);
        let mem = |s: &str| graded_piece_membership(&r.parse(s).unwrap(), &i, &[1, 1], None).unwrap();
        assert!(mem("x^2"));
        assert!(!mem("x*y"));
        assert!(mem("x^3 + 5*x*y^2"));
        assert!(!mem("x^2 + x"));
        assert!(mem("0"));
    }

    #[test]
    fn weight_zero_variables_need_a_cap() {
        let r = PolyRing::new(RationalField, &["s", "t", "x", "y"], TermOrder::GrevLex).unwrap();
        let i = ideal(&r, &["x^3", "y^3", "s*x^2 + t*x*y + s*y^2"]);
        let f = r.parse("x*y^2*t^2 - x*y^2*s^2").unwrap();
        assert!(graded_piece_membership(&f, &i, &[0, 0, 1, 1], None).is_err());
        assert!(graded_piece_membership(&f, &i, &[0, 0, 1, 1], Some(2)).unwrap());
        assert!(graded_piece_membership(&f, &i, &[1, 1, 1, 1], None).unwrap());
        assert!(!graded_piece_membership(&r.parse("x*y^2").unwrap(), &i, &[0, 0, 1, 1], Some(4)).unwrap());
    }

    #[test]
    fn rejects_inhomogeneous_generators() {
        let r = PolyRing::new(RationalField, &["x", "y"], TermOrder::GrevLex).unwrap();
        let i = ideal(&r, &["x^2 - y"]);
        assert!(graded_piece_membership(&r.gen(0), &i, &[1, 1], None).is_err());
        assert!(graded_piece_membership(&r.gen(0), &i, &[1, 2], None).is_ok());
    }

    #[test]
    fn agrees_with_groebner_on_random_instances() {
        use rand::{Rng, SeedableRng};
        let f5 = PrimeField::new(5).unwrap();
        let r = PolyRing::new(f5, &["x", "y", "z"], TermOrder::GrevLex).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut random_form = |deg: u32, terms: usize| {
            let mut out = r.zero();
            for _ in 0..terms {
                let a = rng.gen_range(0..=deg);
                let b = rng.gen_range(0..=deg - a);
                let c = rng.gen_range(1..5);
                out = &out + &r.monomial(c, &[a, b, deg - a - b]).unwrap();
            }
            out
        };
        for _ in 0..40 {
            let i = Ideal::new(&r, vec![random_form(2, 3), random_form(2, 2), random_form(3, 2)]).unwrap();
            let g = random_form(1, 2);
            let member = &(&g * &i.gens()[0]) + &random_form(4, 1);
            for f in [member, random_form(4, 3)] {
                assert_eq!(
                    graded_piece_membership(&f, &i, &[1, 1, 1], None).unwrap(),
                    i.contains(&f).unwrap()
                );
            }
        }
    }

    #[test]
    fn signed_gradings_shrink_pieces() {
        let f5 = PrimeField::new(5).unwrap();
        let r = PolyRing::new(f5, &["t", "u", "v", "x", "y"], TermOrder::GrevLex).unwrap();
        let i = ideal(&r, &["x^3", "y^3", "u^2*x^2 + t*u*x*v*y + v^2*y^2"]);
        let grading = Grading::new(&[0, 1, 1, 1, 1])
            .with_extra(vec![0, 1, 0, -1, 0])
            .with_extra(vec![0, 0, 1, 0, -1])
            .with_cap(4);
        for text in ["u^2*x^3*y^2", "t*u*v*x^2*y^2 + v^2*x*y^3", "u*x*v*y*x*y", "t^2*u*x^2*v*y^2"] {
            let f = r.parse(text).unwrap();
            assert_eq!(grading.contains(&f, &i).unwrap(), i.contains(&f).unwrap(), "{text}");
        }
        let tight = grading.clone().with_row_limit(1);
        assert!(tight.contains(&r.parse("u^2*v^2*x^2*y^2").unwrap(), &i).unwrap_err().is_resource());
        let bad = Grading::new(&[0, 1, 1, 1, 1]).with_extra(vec![1, 0, 0, 0, 0]).with_cap(2);
        assert!(bad.contains(&r.gen(0), &i).is_err());
    }
}
