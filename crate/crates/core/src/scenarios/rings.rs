use std::sync::Arc;

use crate::arith::Field;
use crate::error::{Error, Result};
use crate::mpoly::{GbCounters, Grading, Ideal, MultiPoly, PolyRing, TermOrder, DEFAULT_STEP_BUDGET};

/// `K[vars]/(relation)` with a grading whose degree-zero part is generated
/// by `degree_zero`, plus the grading handed to the linear-algebra
/// membership oracle.
#[derive(Clone, Debug)]
pub struct HypersurfaceSpec<F: Field> {
    name: String,
    ring: PolyRing<F>,
    relation: MultiPoly<F>,
    weights: Vec<u32>,
    degree_zero: Vec<usize>,
    oracle: Grading,
    budget: u64,
    counters: Arc<GbCounters>,
}

impl<F: Field> HypersurfaceSpec<F> {
    /// Checks that the relation is homogeneous for `weights` and for the
    /// oracle grading, and that the degree-zero variables have weight zero.
    pub fn new(
        name: &str,
        ring: PolyRing<F>,
        relation: MultiPoly<F>,
        weights: Vec<u32>,
        degree_zero: &[&str],
        oracle: Grading,
    ) -> Result<Self> {
        if weights.len() != ring.nvars() {
            return Err(Error::domain("one weight per variable"));
        }
        let relation = relation.map_by_name(&ring)?;
        if !relation.is_homogeneous(&weights) || !oracle.is_homogeneous(&relation) {
            return Err(Error::domain(format!("relation {relation} is not homogeneous")));
        }
        let degree_zero = ring.var_indices(degree_zero)?;
        if degree_zero.iter().any(|&i| weights[i] != 0) {
            return Err(Error::domain("degree-zero variables must have weight 0"));
        }
        Ok(HypersurfaceSpec {
            name: name.to_string(),
            ring,
            relation,
            weights,
            degree_zero,
            oracle,
            budget: DEFAULT_STEP_BUDGET,
            counters: Arc::default(),
        })
    }

    /// Ideals made from this spec use `budget` and report to `counters`.
    pub fn with_tracking(mut self, budget: u64, counters: Arc<GbCounters>) -> Self {
        self.budget = budget;
        self.counters = counters;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn relation(&self) -> &MultiPoly<F> {
        &self.relation
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn degree_zero(&self) -> &[usize] {
        &self.degree_zero
    }

    pub fn oracle_grading(&self) -> &Grading {
        &self.oracle
    }

    pub fn parse(&self, text: &str) -> Result<MultiPoly<F>> {
        self.ring.parse(text)
    }

    pub fn var(&self, name: &str) -> Result<MultiPoly<F>> {
        self.ring.var(name)
    }

    /// Preimage in the polynomial ring of the ideal generated by `gens` in
    /// the quotient: the relation is appended.
    pub fn ideal(&self, gens: Vec<MultiPoly<F>>) -> Result<Ideal<F>> {
        let mut all = gens
            .into_iter()
            .map(|g| if g.ring() == &self.ring { Ok(g) } else { g.map_by_name(&self.ring) })
            .collect::<Result<Vec<_>>>()?;
        all.push(self.relation.clone());
        Ok(Ideal::new(&self.ring, all)?
            .with_budget(self.budget)
            .with_counters(self.counters.clone()))
    }

    pub fn ideal_of(&self, gens: &[&str]) -> Result<Ideal<F>> {
        self.ideal(gens.iter().map(|g| self.parse(g)).collect::<Result<_>>()?)
    }

    /// The degree-zero subring as a polynomial ring in graded reverse
    /// lexicographic order.
    pub fn degree_zero_ring(&self) -> Result<PolyRing<F>> {
        let names: Vec<&str> = self.degree_zero.iter().map(|&i| self.ring.vars()[i].as_str()).collect();
        PolyRing::new(self.ring.field().clone(), &names, TermOrder::GrevLex)
    }

    /// `I ∩ A₀`, by elimination, as an ideal of [`Self::degree_zero_ring`].
    pub fn contract_to_degree_zero(&self, ideal: &Ideal<F>) -> Result<Ideal<F>> {
        let small = self.degree_zero_ring()?;
        let c = ideal.eliminate_keep(&self.degree_zero)?;
        let gens = c.gens().iter().map(|g| g.map_by_name(&small)).collect::<Result<_>>()?;
        Ok(Ideal::new(&small, gens)?
            .with_budget(ideal.budget())
            .with_counters(ideal.counters().clone()))
    }
}

/// A polynomial ring for a scenario, rejecting orders that do not fit the
/// variable count.
pub(crate) fn scenario_ring<F: Field>(field: &F, vars: &[&str], order: &TermOrder) -> Result<PolyRing<F>> {
    if let TermOrder::Block(k) = order {
        if *k == 0 || *k >= vars.len() {
            return Err(Error::domain(format!("block split {k} does not fit {} variables", vars.len())));
        }
    }
    if let TermOrder::Weighted(w) = order {
        if w.len() != vars.len() {
            return Err(Error::domain("weighted order needs one weight per variable"));
        }
    }
    PolyRing::new(field.clone(), vars, order.clone())
}

fn build<F: Field>(
    name: &str,
    field: &F,
    order: &TermOrder,
    vars: &[&str],
    relation: &str,
    weights: &[u32],
    degree_zero: &[&str],
    oracle: Grading,
) -> Result<HypersurfaceSpec<F>> {
    let ring = scenario_ring(field, vars, order)?;
    let rel = ring.parse(relation)?;
    HypersurfaceSpec::new(name, ring, rel, weights.to_vec(), degree_zero, oracle)
}

/// Signed grading `deg a − deg b` on `n` variables.
fn difference(n: usize, a: usize, b: usize) -> Vec<i64> {
    let mut w = vec![0; n];
    w[a] = 1;
    w[b] = -1;
    w
}

/// `K[s,t,x,y]/(s x² + t x y + s y²)`, `x, y` of degree 1.
pub fn ring_a<F: Field>(field: &F, order: &TermOrder) -> Result<HypersurfaceSpec<F>> {
    build(
        "A",
        field,
        order,
        &["s", "t", "x", "y"],
        "s*x^2 + t*x*y + s*y^2",
        &[0, 0, 1, 1],
        &["s", "t"],
        Grading::new(&[1, 1, 1, 1]),
    )
}

/// `K[t,x,y]/(x² + t x y + y²)`; the oracle needs a cap on `t`.
pub fn ring_a_dehomogenized<F: Field>(field: &F, order: &TermOrder) -> Result<HypersurfaceSpec<F>> {
    build(
        "A1",
        field,
        order,
        &["t", "x", "y"],
        "x^2 + t*x*y + y^2",
        &[0, 1, 1],
        &["t"],
        Grading::new(&[0, 1, 1]),
    )
}

/// `K[s,t,u,v,x,y]/(s u² x² + t u x v y + s v² y²)`.
pub fn ring_domain<F: Field>(field: &F, order: &TermOrder) -> Result<HypersurfaceSpec<F>> {
    build(
        "R",
        field,
        order,
        &["s", "t", "u", "v", "x", "y"],
        "s*u^2*x^2 + t*u*x*v*y + s*v^2*y^2",
        &[0, 0, 0, 0, 1, 1],
        &["s", "t", "u", "v"],
        Grading::new(&[1; 6])
            .with_extra(difference(6, 2, 4))
            .with_extra(difference(6, 3, 5)),
    )
}

/// `K[s,t,u,v,w,x,y,z]/(s u² x² + s v² y² + t u x v y + t w² z²)`.
pub fn ring_s<F: Field>(field: &F, order: &TermOrder) -> Result<HypersurfaceSpec<F>> {
    build(
        "S",
        field,
        order,
        &["s", "t", "u", "v", "w", "x", "y", "z"],
        "s*u^2*x^2 + s*v^2*y^2 + t*u*x*v*y + t*w^2*z^2",
        &[0, 0, 1, 1, 1, 1, 1, 1],
        &["s", "t"],
        Grading::new(&[1; 8])
            .with_extra(difference(8, 2, 5))
            .with_extra(difference(8, 3, 6))
            .with_extra(difference(8, 4, 7)),
    )
}

/// `K[r,s,t,u,v,w,x,y,z]/(s u² x² + s v² y² + t u x v y + r w² z²)`.
pub fn ring_t<F: Field>(field: &F, order: &TermOrder) -> Result<HypersurfaceSpec<F>> {
    build(
        "T",
        field,
        order,
        &["r", "s", "t", "u", "v", "w", "x", "y", "z"],
        "s*u^2*x^2 + s*v^2*y^2 + t*u*x*v*y + r*w^2*z^2",
        &[0, 0, 0, 1, 1, 1, 1, 1, 1],
        &["r", "s", "t"],
        Grading::new(&[1; 9])
            .with_extra(difference(9, 3, 6))
            .with_extra(difference(9, 4, 7))
            .with_extra(difference(9, 5, 8)),
    )
}

/// `K[s,t,a,b,c]/(s a² + s b² + t a b + t c²)`, the image of `S` under
/// `a = ux, b = vy, c = wz`.
pub fn ring_b<F: Field>(field: &F, order: &TermOrder) -> Result<HypersurfaceSpec<F>> {
    build(
        "B",
        field,
        order,
        &["s", "t", "a", "b", "c"],
        "s*a^2 + s*b^2 + t*a*b + t*c^2",
        &[0, 0, 1, 1, 1],
        &["s", "t"],
        Grading::new(&[1; 5]),
    )
}

/// `K[r,s,t,a,b,c]/(s a² + s b² + t a b + r c²)`, the image of `T`.
pub fn ring_b_r<F: Field>(field: &F, order: &TermOrder) -> Result<HypersurfaceSpec<F>> {
    build(
        "B_T",
        field,
        order,
        &["r", "s", "t", "a", "b", "c"],
        "s*a^2 + s*b^2 + t*a*b + r*c^2",
        &[0, 0, 0, 1, 1, 1],
        &["r", "s", "t"],
        Grading::new(&[1; 6]),
    )
}

/// `K[t,u,v,w,x,y,z]/(u² x² + v² y² + t u x v y + t w² z²)`; `t` has weight 0
/// for the oracle too.
pub fn ring_assmax<F: Field>(field: &F, order: &TermOrder) -> Result<HypersurfaceSpec<F>> {
    build(
        "R_assmax",
        field,
        order,
        &["t", "u", "v", "w", "x", "y", "z"],
        "u^2*x^2 + v^2*y^2 + t*u*x*v*y + t*w^2*z^2",
        &[0, 1, 1, 1, 1, 1, 1],
        &["t"],
        Grading::new(&[0, 1, 1, 1, 1, 1, 1])
            .with_extra(difference(7, 1, 4))
            .with_extra(difference(7, 2, 5))
            .with_extra(difference(7, 3, 6)),
    )
}

/// `K[t,x,y]/(x⁴ + t x² y² + y⁴)`.
pub fn ring_lowdim<F: Field>(field: &F, order: &TermOrder) -> Result<HypersurfaceSpec<F>> {
    build(
        "A_lowdim",
        field,
        order,
        &["t", "x", "y"],
        "x^4 + t*x^2*y^2 + y^4",
        &[0, 1, 1],
        &["t"],
        Grading::new(&[0, 1, 1]),
    )
}
