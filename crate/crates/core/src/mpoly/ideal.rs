use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, RwLock};

use rayon::prelude::*;

use crate::arith::Field;
use crate::error::{Error, Result};
use crate::mpoly::groebner::{buchberger, GbStats, GroebnerBasis, DEFAULT_STEP_BUDGET};
use crate::mpoly::order::TermOrder;
use crate::mpoly::poly::MultiPoly;
use crate::mpoly::ring::PolyRing;
use crate::unipoly::UniPoly;

type BasisCache<F> = Arc<RwLock<HashMap<TermOrder, Arc<GroebnerBasis<F>>>>>;

/// Running totals over every Gröbner computation made by an ideal and the
/// ideals derived from it.
#[derive(Debug, Default)]
pub struct GbCounters {
    bases: AtomicU64,
    pairs: AtomicU64,
    reductions: AtomicU64,
    max_basis: AtomicU64,
}

/// Snapshot of [`GbCounters`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GbTotals {
    pub bases: u64,
    pub pairs_processed: u64,
    pub reductions: u64,
    pub max_basis_size: u64,
}

impl GbCounters {
    fn record(&self, pairs: u64, reductions: u64, basis: u64) {
        self.bases.fetch_add(1, Ordering::Relaxed);
        self.pairs.fetch_add(pairs, Ordering::Relaxed);
        self.reductions.fetch_add(reductions, Ordering::Relaxed);
        self.max_basis.fetch_max(basis, Ordering::Relaxed);
    }

    pub fn totals(&self) -> GbTotals {
        GbTotals {
            bases: self.bases.load(Ordering::Relaxed),
            pairs_processed: self.pairs.load(Ordering::Relaxed),
            reductions: self.reductions.load(Ordering::Relaxed),
            max_basis_size: self.max_basis.load(Ordering::Relaxed),
        }
    }
}

/// Ideal given by generators, with reduced Gröbner bases cached per term
/// order. Clones share the cache.
#[derive(Clone, Debug)]
pub struct Ideal<F: Field> {
    ring: PolyRing<F>,
    gens: Vec<MultiPoly<F>>,
    budget: u64,
    cache: BasisCache<F>,
    counters: Arc<GbCounters>,
}

impl<F: Field> Ideal<F> {
    /// Generators must live in `ring` or in a ring with the same variables
    /// (they are re-sorted). Zero generators are dropped.
    pub fn new(ring: &PolyRing<F>, gens: Vec<MultiPoly<F>>) -> Result<Self> {
        let gens = gens
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| {
                if g.ring() == ring {
                    Ok(g)
                } else if g.ring().vars() == ring.vars() {
                    g.map_by_name(ring)
                } else {
                    Err(Error::mismatch(format!(
                        "generator {g} is not in the ring {:?}",
                        ring.vars()
                    )))
                }
            })
            .collect::<Result<_>>()?;
        Ok(Ideal {
            ring: ring.clone(),
            gens,
            budget: DEFAULT_STEP_BUDGET,
            cache: Arc::default(),
            counters: Arc::default(),
        })
    }

    pub fn unit(ring: &PolyRing<F>) -> Self {
        Self::new(ring, vec![ring.one()]).expect("same ring")
    }

    pub fn zero(ring: &PolyRing<F>) -> Self {
        Self::new(ring, Vec::new()).expect("same ring")
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn gens(&self) -> &[MultiPoly<F>] {
        &self.gens
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    /// Same ideal with a different Gröbner step budget (and a fresh cache).
    pub fn with_budget(&self, budget: u64) -> Self {
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            budget,
            cache: Arc::default(),
            counters: self.counters.clone(),
        }
    }

    /// Same ideal reporting its Gröbner work to `counters`.
    pub fn with_counters(mut self, counters: Arc<GbCounters>) -> Self {
        self.counters = counters;
        self
    }

    pub fn counters(&self) -> &Arc<GbCounters> {
        &self.counters
    }

    fn derived(&self, ring: &PolyRing<F>, gens: Vec<MultiPoly<F>>) -> Result<Self> {
        Ok(Self::new(ring, gens)?
            .with_budget(self.budget)
            .with_counters(self.counters.clone()))
    }

    fn run(&self, ring: &PolyRing<F>, gens: &[MultiPoly<F>]) -> Result<GroebnerBasis<F>> {
        match buchberger(ring, gens, self.budget) {
            Ok(gb) => {
                let GbStats {
                    pairs_processed,
                    reductions,
                    basis_size,
                    ..
                } = gb.stats();
                self.counters.record(pairs_processed, reductions, basis_size as u64);
                Ok(gb)
            }
            Err(Error::Resource { what, stats }) => {
                self.counters
                    .record(stats.pairs_processed, stats.reductions, stats.basis_size as u64);
                Err(Error::Resource { what, stats })
            }
            Err(e) => Err(e),
        }
    }

    fn lift(&self, f: &MultiPoly<F>) -> Result<MultiPoly<F>> {
        if f.ring() == &self.ring {
            Ok(f.clone())
        } else if f.ring().vars() == self.ring.vars() {
            f.map_by_name(&self.ring)
        } else {
            Err(Error::mismatch("polynomial outside the ideal's ring"))
        }
    }

    /// Reduced basis in the ring's own order.
    pub fn groebner(&self) -> Result<Arc<GroebnerBasis<F>>> {
        self.groebner_in(self.ring.order().clone())
    }

    pub fn groebner_in(&self, order: TermOrder) -> Result<Arc<GroebnerBasis<F>>> {
        if let Some(gb) = self.cache.read().expect("cache lock").get(&order) {
            return Ok(gb.clone());
        }
        let ring = self.ring.with_order(order.clone())?;
        let gens = self
            .gens
            .iter()
            .map(|g| g.map_by_name(&ring))
            .collect::<Result<Vec<_>>>()?;
        let gb = Arc::new(self.run(&ring, &gens)?);
        self.cache
            .write()
            .expect("cache lock")
            .entry(order)
            .or_insert_with(|| gb.clone());
        Ok(gb)
    }

    pub fn normal_form(&self, f: &MultiPoly<F>) -> Result<MultiPoly<F>> {
        self.groebner()?.normal_form(&self.lift(f)?)
    }

    pub fn contains(&self, f: &MultiPoly<F>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_all(&self, fs: &[MultiPoly<F>]) -> Result<bool> {
        let gb = self.groebner()?;
        for f in fs {
            if !gb.contains(&self.lift(f)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner()?.is_unit())
    }

    pub fn is_subset_of(&self, other: &Self) -> Result<bool> {
        other.contains_all(&self.gens)
    }

    /// Equality of ideals through their reduced bases in the ring's order.
    pub fn equals(&self, other: &Self) -> Result<bool> {
        if self.ring != other.ring {
            return Err(Error::mismatch("ideals live in different rings"));
        }
        Ok(self.groebner()?.elements() == other.groebner()?.elements())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        let mut gens = self.gens.clone();
        for g in &other.gens {
            gens.push(self.lift(g)?);
        }
        self.derived(&self.ring, gens)
    }

    pub fn add_gens(&self, extra: &[MultiPoly<F>]) -> Result<Self> {
        let mut gens = self.gens.clone();
        for g in extra {
            gens.push(self.lift(g)?);
        }
        self.derived(&self.ring, gens)
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a * &self.lift(b)?);
            }
        }
        self.derived(&self.ring, gens)
    }

    /// `I ∩ K[kept variables]`, with generators in this ring. Uses the block
    /// order that puts the eliminated variables first.
    pub fn eliminate(&self, elim: &[usize]) -> Result<Self> {
        let n = self.ring.nvars();
        if elim.iter().any(|&i| i >= n) {
            return Err(Error::domain("variable index out of range"));
        }
        let mut names: Vec<String> = Vec::with_capacity(n);
        for &i in elim {
            names.push(self.ring.vars()[i].clone());
        }
        let k = names.len();
        for (i, v) in self.ring.vars().iter().enumerate() {
            if !elim.contains(&i) {
                names.push(v.clone());
            }
        }
        let block = PolyRing::new(self.ring.field().clone(), &names, TermOrder::Block(k))?;
        let gens = self
            .gens
            .iter()
            .map(|g| g.map_by_name(&block))
            .collect::<Result<Vec<_>>>()?;
        let gb = self.run(&block, &gens)?;
        let kept = gb
            .elements()
            .iter()
            .filter(|g| (0..k).all(|i| !g.uses_var(i)))
            .map(|g| g.map_by_name(&self.ring))
            .collect::<Result<Vec<_>>>()?;
        self.derived(&self.ring, kept)
    }

    /// Eliminates every variable not in `keep`.
    pub fn eliminate_keep(&self, keep: &[usize]) -> Result<Self> {
        let elim: Vec<usize> = (0..self.ring.nvars()).filter(|i| !keep.contains(i)).collect();
        self.eliminate(&elim)
    }

    /// Monic generator of `I ∩ K[x_var]`, zero when the contraction is zero.
    pub fn contract_univariate(&self, var: usize) -> Result<UniPoly<F>> {
        let c = self.eliminate_keep(&[var])?;
        let mut g = UniPoly::zero(self.ring.field().clone()).with_var(&self.ring.vars()[var]);
        for h in c.gens() {
            g = g.gcd(&h.to_univariate(var)?)?;
        }
        Ok(g)
    }

    // Ring with one tag variable in front, eliminated by Block(1).
    fn tagged_ring(&self, base: &str) -> Result<PolyRing<F>> {
        let tag = self.ring.fresh_name(base);
        self.ring.prepend_vars(&[tag], TermOrder::Block(1))
    }

    fn untag(&self, tagged: &PolyRing<F>, gb: &GroebnerBasis<F>) -> Result<Self> {
        let kept = gb
            .elements()
            .iter()
            .filter(|g| !g.uses_var(0))
            .map(|g| g.map_by_name(&self.ring))
            .collect::<Result<Vec<_>>>()?;
        debug_assert_eq!(tagged.nvars(), self.ring.nvars() + 1);
        self.derived(&self.ring, kept)
    }

    /// `I ∩ J` by eliminating `w` from `w·I + (1 − w)·J`.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::mismatch("ideals live in different rings"));
        }
        let tagged = self.tagged_ring("w")?;
        let w = tagged.gen(0);
        let one_minus_w = &tagged.one() - &w;
        let mut gens = Vec::with_capacity(self.gens.len() + other.gens.len());
        for g in &self.gens {
            gens.push(&w * &g.map_by_name(&tagged)?);
        }
        for g in &other.gens {
            gens.push(&one_minus_w * &g.map_by_name(&tagged)?);
        }
        let gb = self.run(&tagged, &gens)?;
        self.untag(&tagged, &gb)
    }

    /// `(I : f) = (1/f)·(I ∩ (f))`.
    pub fn colon_poly(&self, f: &MultiPoly<F>) -> Result<Self> {
        let f = self.lift(f)?;
        if f.is_zero() {
            return Err(Error::domain("colon by the zero polynomial"));
        }
        let principal = self.derived(&self.ring, vec![f.clone()])?;
        let meet = self.intersect(&principal)?;
        let gens = meet
            .gens
            .iter()
            .map(|g| g.div_exact(&f))
            .collect::<Result<Vec<_>>>()?;
        self.derived(&self.ring, gens)
    }

    /// `(I : J) = ∩_g (I : g)` over the generators `g` of `J`.
    pub fn colon(&self, other: &Self) -> Result<Self> {
        let parts: Vec<Self> = other
            .gens
            .par_iter()
            .map(|g| self.colon_poly(g))
            .collect::<Result<_>>()?;
        let mut it = parts.into_iter();
        let Some(mut acc) = it.next() else {
            return self.derived(&self.ring, vec![self.ring.one()]);
        };
        for p in it {
            acc = acc.intersect(&p)?;
        }
        Ok(acc)
    }

    /// `(I : f^∞)` by eliminating `y` from `I + (1 − y·f)`.
    pub fn saturate(&self, f: &MultiPoly<F>) -> Result<Self> {
        let f = self.lift(f)?;
        if f.is_zero() {
            return Err(Error::domain("saturation by the zero polynomial"));
        }
        let tagged = self.tagged_ring("y")?;
        let mut gens = self
            .gens
            .iter()
            .map(|g| g.map_by_name(&tagged))
            .collect::<Result<Vec<_>>>()?;
        gens.push(&tagged.one() - &(&tagged.gen(0) * &f.map_by_name(&tagged)?));
        let gb = self.run(&tagged, &gens)?;
        self.untag(&tagged, &gb)
    }

    /// `f ∈ √I` iff `1 ∈ I + (1 − y·f)`.
    pub fn radical_contains(&self, f: &MultiPoly<F>) -> Result<bool> {
        let f = self.lift(f)?;
        let tag = self.ring.fresh_name("y");
        let tagged = self.ring.prepend_vars(&[tag], TermOrder::GrevLex)?;
        let mut gens = self
            .gens
            .iter()
            .map(|g| g.map_by_name(&tagged))
            .collect::<Result<Vec<_>>>()?;
        gens.push(&tagged.one() - &(&tagged.gen(0) * &f.map_by_name(&tagged)?));
        Ok(self.run(&tagged, &gens)?.is_unit())
    }

    /// The ideal generated by the `q`-th powers of the listed generators;
    /// `q` must be a power of the characteristic.
    pub fn frobenius_power(&self, q: u64) -> Result<Self> {
        let p = self.ring.field().characteristic();
        let mut r = q;
        while p > 1 && r > 1 && r % p == 0 {
            r /= p;
        }
        if p == 0 || q < 1 || r != 1 {
            return Err(Error::domain(format!(
                "{q} is not a power of the characteristic {p}"
            )));
        }
        let gens = self.gens.iter().map(|g| g.pow(q)).collect();
        self.derived(&self.ring, gens)
    }
}
