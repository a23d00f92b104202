use serde::Serialize;

use crate::arith::Field;
use crate::error::{Error, Result};
use crate::mpoly::{Ideal, Monomial, MultiPoly};
use crate::scenarios::rings::HypersurfaceSpec;

/// The Čech class `[f + (x₁^m₁, …, x_n^m_n)]` in the top local cohomology of
/// a hypersurface ring with support in `(x₁, …, x_n)`.
#[derive(Clone, Debug)]
pub struct LocalCohomologyClass<F: Field> {
    spec: HypersurfaceSpec<F>,
    numerator: MultiPoly<F>,
    cech: Vec<usize>,
    exps: Vec<u32>,
}

impl<F: Field> LocalCohomologyClass<F> {
    pub fn new(spec: &HypersurfaceSpec<F>, numerator: MultiPoly<F>, cech: &[&str], exps: &[u32]) -> Result<Self> {
        if cech.is_empty() || cech.len() != exps.len() {
            return Err(Error::domain("need one positive exponent per Čech variable, at least one"));
        }
        if exps.contains(&0) {
            return Err(Error::domain("Čech exponents must be positive"));
        }
        let cech = spec.ring().var_indices(cech)?;
        let numerator = numerator.map_by_name(spec.ring())?;
        Ok(LocalCohomologyClass {
            spec: spec.clone(),
            numerator,
            cech,
            exps: exps.to_vec(),
        })
    }

    pub fn spec(&self) -> &HypersurfaceSpec<F> {
        &self.spec
    }

    pub fn numerator(&self) -> &MultiPoly<F> {
        &self.numerator
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    /// `g·[f + …] = [g f + …]`.
    pub fn times(&self, g: &MultiPoly<F>) -> Result<Self> {
        Ok(LocalCohomologyClass {
            numerator: self.numerator.checked_mul(&g.map_by_name(self.spec.ring())?)?,
            ..self.clone()
        })
    }

    fn cech_monomial(&self, k: &[u32]) -> Result<Monomial> {
        let mut e = vec![0u32; self.spec.ring().nvars()];
        for (&i, &ki) in self.cech.iter().zip(k) {
            e[i] = ki;
        }
        Monomial::from_exps(&e)
    }

    /// `(x₁^(m₁+k₁), …)` plus the relation, and `f·x₁^k₁⋯x_n^k_n`.
    pub fn shifted(&self, k: &[u32]) -> Result<(Ideal<F>, MultiPoly<F>)> {
        if k.len() != self.cech.len() {
            return Err(Error::domain("one shift per Čech variable"));
        }
        let ring = self.spec.ring();
        let one = ring.field().one();
        let gens = self
            .cech
            .iter()
            .zip(&self.exps)
            .zip(k)
            .map(|((&i, &m), &ki)| Ok(MultiPoly::term(ring, one.clone(), Monomial::from_exps(&pure(ring.nvars(), i, m + ki))?)))
            .collect::<Result<Vec<_>>>()?;
        let f = self.numerator.mul_term(&one, &self.cech_monomial(k)?);
        Ok((self.spec.ideal(gens)?, f))
    }
}

fn pure(n: usize, i: usize, e: u32) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = e;
    v
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Vanishing {
    /// `f·(x₁⋯x_n)^k ∈ (x₁^(m₁+k), …)`.
    Zero { k: u32 },
    Inconclusive { searched_up_to: u32 },
}

/// Searches the least uniform `k ≤ k_bound` with
/// `f·(x₁⋯x_n)^k ∈ (x₁^(m₁+k), …, x_n^(m_n+k))`. A witness is confirmed by
/// a second membership test against a freshly built ideal.
pub fn lc_class_is_zero<F: Field>(c: &LocalCohomologyClass<F>, k_bound: u32) -> Result<Vanishing> {
    for k in 0..=k_bound {
        let ks = vec![k; c.cech.len()];
        let (ideal, f) = c.shifted(&ks)?;
        if ideal.contains(&f)? {
            let (fresh, g) = c.shifted(&ks)?;
            if !fresh.contains(&g)? {
                return Err(Error::Internal(format!("membership witness at k = {k} did not re-verify")));
            }
            return Ok(Vanishing::Zero { k });
        }
    }
    Ok(Vanishing::Inconclusive {
        searched_up_to: k_bound,
    })
}

/// `(x₁^m₁, …, x_n^m_n) : f` contracted to the degree-zero subring, for a
/// class whose Čech variables are the positive-degree generators of a ring
/// with homogeneous numerator.
pub fn ann_degree_zero<F: Field>(c: &LocalCohomologyClass<F>) -> Result<Ideal<F>> {
    let spec = &c.spec;
    let shape_ok = c.cech.iter().all(|i| !spec.degree_zero().contains(i))
        && c.numerator.is_homogeneous(spec.weights())
        && !c.numerator.is_zero();
    if !shape_ok {
        return Err(Error::domain(
            "shape mismatch: need Čech variables of positive degree and a nonzero homogeneous numerator",
        ));
    }
    let (ideal, f) = c.shifted(&vec![0; c.cech.len()])?;
    spec.contract_to_degree_zero(&ideal.colon_poly(&f)?)
}

/// Compares the annihilator computed on the small side with the contracted
/// colon `(x₁^(m₁+k₁), …) : f·x^k` on the large side. Both degree-zero
/// subrings must have the same variables.
pub fn multigraded_shift_check<F: Field>(
    small: &LocalCohomologyClass<F>,
    large: &LocalCohomologyClass<F>,
    k: &[u32],
) -> Result<bool> {
    let left = ann_degree_zero(small)?;
    let (ideal, f) = large.shifted(k)?;
    let right = large.spec.contract_to_degree_zero(&ideal.colon_poly(&f)?)?;
    if left.ring().vars() != right.ring().vars() {
        return Err(Error::mismatch("degree-zero subrings differ"));
    }
    let right = Ideal::new(left.ring(), right.gens().to_vec())?
        .with_budget(left.budget())
        .with_counters(left.counters().clone());
    left.equals(&right)
}

/// `η_n = [s a b^(n−1) + (a^n, b^n, c)]` on the small ring of `S` or `T`.
pub fn eta_small<F: Field>(spec: &HypersurfaceSpec<F>, n: u32) -> Result<LocalCohomologyClass<F>> {
    let f = spec.parse(&format!("s*a*b^{}", n - 1))?;
    LocalCohomologyClass::new(spec, f, &["a", "b", "c"], &[n, n, 1])
}

/// `η_n = [s (ux)(vy)^(n−1) + (x^n, y^n, z)]` on `S` or `T`.
pub fn eta_large<F: Field>(spec: &HypersurfaceSpec<F>, n: u32) -> Result<LocalCohomologyClass<F>> {
    let f = spec.parse(&format!("s*u*x*v^{m}*y^{m}", m = n - 1))?;
    LocalCohomologyClass::new(spec, f, &["x", "y", "z"], &[n, n, 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{PrimeField, RationalField};
    use crate::detfam::{det_family, Family};
    use crate::mpoly::TermOrder;
    use crate::scenarios::rings::{ring_a, ring_b, ring_b_r, ring_s};

    #[test]
    fn trivial_class_vanishes_at_zero() {
        let q = RationalField;
        let a = ring_a(&q, &TermOrder::GrevLex).unwrap();
        let c = LocalCohomologyClass::new(&a, a.parse("x").unwrap(), &["x"], &[1]).unwrap();
        assert_eq!(lc_class_is_zero(&c, 3).unwrap(), Vanishing::Zero { k: 0 });
        assert!(LocalCohomologyClass::new(&a, a.parse("x").unwrap(), &["x"], &[0]).is_err());
        assert!(LocalCohomologyClass::new(&a, a.parse("x").unwrap(), &[], &[]).is_err());
    }

    #[test]
    fn frobenius_class_killed_by_s_and_t_powers() {
        for (p, q) in [(2u64, 2u32), (3, 3)] {
            let f = PrimeField::new(p).unwrap();
            let a = ring_a(&f, &TermOrder::GrevLex).unwrap();
            let eta = LocalCohomologyClass::new(&a, a.parse("1").unwrap(), &["x", "y"], &[q, q]).unwrap();
            for g in ["s", "t"] {
                let c = eta.times(&a.parse(&format!("{g}^{q}")).unwrap()).unwrap();
                assert!(matches!(lc_class_is_zero(&c, 3 * q).unwrap(), Vanishing::Zero { .. }), "{g} q={q}");
            }
            // the class itself survives any small shift
            assert_eq!(
                lc_class_is_zero(&eta, 2).unwrap(),
                Vanishing::Inconclusive { searched_up_to: 2 }
            );
        }
    }

    #[test]
    fn annihilators_match_q_family() {
        let f5 = PrimeField::new(5).unwrap();
        let o = TermOrder::GrevLex;
        let b = ring_b(&f5, &o).unwrap();
        for n in 2..5 {
            let ann = ann_degree_zero(&eta_small(&b, n).unwrap()).unwrap();
            let q = det_family(Family::Q, &f5, n as usize - 1);
            let expected = Ideal::new(ann.ring(), vec![q.map_by_name(ann.ring()).unwrap()]).unwrap();
            assert!(ann.equals(&expected).unwrap(), "n={n}");
        }
        let bt = ring_b_r(&f5, &o).unwrap();
        assert!(ann_degree_zero(&eta_small(&bt, 1).unwrap()).unwrap().is_unit().unwrap());
        let bad = LocalCohomologyClass::new(&b, b.parse("a").unwrap(), &["s"], &[2]).unwrap();
        assert!(ann_degree_zero(&bad).is_err());
    }

    #[test]
    fn shift_invariance_small_case() {
        let f5 = PrimeField::new(5).unwrap();
        let o = TermOrder::GrevLex;
        let b = ring_b(&f5, &o).unwrap();
        let s = ring_s(&f5, &o).unwrap();
        for k in [[0, 0, 0], [1, 0, 0]] {
            assert!(multigraded_shift_check(&eta_small(&b, 2).unwrap(), &eta_large(&s, 2).unwrap(), &k).unwrap());
        }
    }
}
