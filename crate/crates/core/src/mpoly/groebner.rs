use crate::arith::Field;
use crate::error::{Error, ResourceStats, Result};
use crate::mpoly::monomial::Monomial;
use crate::mpoly::poly::{merge_scaled, MultiPoly};
use crate::mpoly::order::TermOrder;
use crate::mpoly::ring::PolyRing;

/// Default cap on pairs processed plus elementary reduction steps.
pub const DEFAULT_STEP_BUDGET: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GbStats {
    pub pairs_processed: u64,
    /// Pairs discarded by the coprime-lead and chain criteria.
    pub pairs_pruned: u64,
    pub reductions: u64,
    pub basis_size: usize,
}

impl GbStats {
    fn resource(&self) -> ResourceStats {
        ResourceStats {
            pairs_processed: self.pairs_processed,
            reductions: self.reductions,
            basis_size: self.basis_size,
        }
    }
}

struct Counter {
    stats: GbStats,
    budget: u64,
}

impl Counter {
    fn step(&mut self) -> Result<()> {
        self.stats.reductions += 1;
        self.check()
    }

    fn check(&self) -> Result<()> {
        if self.stats.reductions + self.stats.pairs_processed > self.budget {
            return Err(Error::Resource {
                what: format!("Gröbner step budget of {} exhausted", self.budget),
                stats: self.stats.resource(),
            });
        }
        Ok(())
    }
}

/// Full reduction of `terms` modulo the polynomials `basis[i]` with
/// `active[i]` set. Returns the remainder's terms.
fn reduce_terms<F: Field>(
    ring: &PolyRing<F>,
    terms: &[(F::Elem, Monomial)],
    basis: &[MultiPoly<F>],
    masks: &[u64],
    active: &[bool],
    counter: &mut Counter,
) -> Result<Vec<(F::Elem, Monomial)>> {
    let f = ring.field();
    let mut p: Vec<(F::Elem, Monomial)> = terms.to_vec();
    let mut start = 0;
    let mut rem = Vec::new();
    while start < p.len() {
        let (c, m) = &p[start];
        let mask = m.mask();
        let hit = (0..basis.len()).find(|&j| {
            active[j] && masks[j] & !mask == 0 && basis[j].lm().is_some_and(|l| l.divides(m))
        });
        match hit {
            Some(j) => {
                counter.step()?;
                let g = &basis[j];
                let (gc, gm) = g.lead_term().expect("nonzero basis element");
                let q = f.neg(&f.div(c, gc)?);
                let mm = gm.div(m).expect("divisibility checked");
                p = merge_scaled(ring, &p[start..], &q, &mm, g.terms());
                start = 0;
            }
            None => {
                rem.push(p[start].clone());
                start += 1;
            }
        }
    }
    Ok(rem)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Reduced Gröbner basis: monic, interreduced, sorted ascending by leading
/// monomial in the ring's order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    ring: PolyRing<F>,
    elements: Vec<MultiPoly<F>>,
    masks: Vec<u64>,
    stats: GbStats,
}

impl<F: Field> PartialEq for GroebnerBasis<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.elements == other.elements
    }
}

impl<F: Field> GroebnerBasis<F> {
    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn order(&self) -> &TermOrder {
        self.ring.order()
    }

    pub fn elements(&self) -> &[MultiPoly<F>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn stats(&self) -> GbStats {
        self.stats
    }

    /// Whether the basis generates the unit ideal.
    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_one()
    }

    /// Remainder of `f` on division by the basis; zero iff `f` lies in the
    /// ideal.
    pub fn normal_form(&self, f: &MultiPoly<F>) -> Result<MultiPoly<F>> {
        if f.ring() != &self.ring {
            return Err(Error::mismatch("polynomial and basis live in different rings"));
        }
        let active = vec![true; self.elements.len()];
        let mut counter = Counter {
            stats: GbStats::default(),
            budget: u64::MAX,
        };
        let rem = reduce_terms(
            &self.ring,
            f.terms(),
            &self.elements,
            &self.masks,
            &active,
            &mut counter,
        )?;
        Ok(MultiPoly::from_sorted(&self.ring, rem))
    }

    pub fn contains(&self, f: &MultiPoly<F>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Checks that every S-polynomial of basis pairs reduces to zero.
    pub fn verify_s_pairs(&self) -> Result<bool> {
        for i in 0..self.elements.len() {
            for j in i + 1..self.elements.len() {
                let s = s_poly(&self.elements[i], &self.elements[j]);
                if !self.normal_form(&s)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Checks monic, no leading monomial dividing any term of another
    /// element.
    pub fn is_reduced(&self) -> bool {
        let f = self.ring.field();
        self.elements.iter().enumerate().all(|(i, g)| {
            g.lc().is_some_and(|c| f.is_one(c))
                && self.elements.iter().enumerate().all(|(j, h)| {
                    i == j || {
                        let l = h.lm().expect("nonzero");
                        g.terms().iter().all(|(_, m)| !l.divides(m))
                    }
                })
        })
    }
}

fn s_poly<F: Field>(f: &MultiPoly<F>, g: &MultiPoly<F>) -> MultiPoly<F> {
    let field = f.field();
    let (fc, fm) = f.lead_term().expect("nonzero");
    let (gc, gm) = g.lead_term().expect("nonzero");
    let l = fm.lcm(gm);
    let a = f.mul_term(&field.inv(fc).expect("nonzero"), &fm.div(&l).expect("divides lcm"));
    let b = g.mul_term(&field.inv(gc).expect("nonzero"), &gm.div(&l).expect("divides lcm"));
    &a - &b
}

struct Engine<F: Field> {
    ring: PolyRing<F>,
    basis: Vec<MultiPoly<F>>,
    masks: Vec<u64>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    counter: Counter,
}

impl<F: Field> Engine<F> {
    fn lm(&self, i: usize) -> &Monomial {
        self.basis[i].lm().expect("nonzero basis element")
    }

    // Gebauer–Möller installation of a new element h.
    fn update(&mut self, h: MultiPoly<F>) {
        let hm = *h.lm().expect("nonzero");
        let new = self.basis.len();
        let cands: Vec<Pair> = (0..new)
            .filter(|&i| self.active[i])
            .map(|i| Pair {
                i,
                j: new,
                lcm: self.lm(i).lcm(&hm),
            })
            .collect();
        let mut kept: Vec<Pair> = Vec::new();
        for (k, c) in cands.iter().enumerate() {
            let coprime = self.lm(c.i).is_coprime(&hm);
            let dominated = cands[k + 1..]
                .iter()
                .chain(kept.iter())
                .any(|o| o.lcm.divides(&c.lcm));
            if coprime || !dominated {
                kept.push(c.clone());
            } else {
                self.counter.stats.pairs_pruned += 1;
            }
        }
        let before = kept.len();
        kept.retain(|c| !self.lm(c.i).is_coprime(&hm));
        self.counter.stats.pairs_pruned += (before - kept.len()) as u64;
        let before = self.pairs.len();
        let basis = &self.basis;
        self.pairs.retain(|p| {
            let li = basis[p.i].lm().expect("nonzero");
            let lj = basis[p.j].lm().expect("nonzero");
            !(hm.divides(&p.lcm) && li.lcm(&hm) != p.lcm && lj.lcm(&hm) != p.lcm)
        });
        self.counter.stats.pairs_pruned += (before - self.pairs.len()) as u64;
        self.pairs.extend(kept);
        for i in 0..new {
            if self.active[i] && hm.divides(self.lm(i)) {
                self.active[i] = false;
            }
        }
        self.masks.push(hm.mask());
        self.basis.push(h);
        self.active.push(true);
        self.counter.stats.basis_size = self.active.iter().filter(|&&a| a).count();
    }

    // Normal strategy: smallest lcm by degree, then term order, then index.
    fn select(&mut self) -> Option<Pair> {
        let ring = &self.ring;
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
            pa.lcm
                .degree()
                .cmp(&pb.lcm.degree())
                .then_with(|| ring.cmp(&pa.lcm, &pb.lcm))
                .then_with(|| (pa.i, pa.j).cmp(&(pb.i, pb.j)))
        })?;
        Some(self.pairs.swap_remove(best))
    }

    fn reduce(&mut self, f: &MultiPoly<F>) -> Result<MultiPoly<F>> {
        let rem = reduce_terms(
            &self.ring,
            f.terms(),
            &self.basis,
            &self.masks,
            &self.active,
            &mut self.counter,
        )?;
        Ok(MultiPoly::from_sorted(&self.ring, rem))
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` in `ring` (whose
/// order is used). `budget` caps pairs processed plus reduction steps.
pub fn buchberger<F: Field>(
    ring: &PolyRing<F>,
    gens: &[MultiPoly<F>],
    budget: u64,
) -> Result<GroebnerBasis<F>> {
    let mut gens: Vec<MultiPoly<F>> = gens
        .iter()
        .map(|g| {
            if g.ring() != ring {
                Err(Error::mismatch("generator outside the ring"))
            } else {
                Ok(g.clone())
            }
        })
        .filter(|g| !matches!(g, Ok(p) if p.is_zero()))
        .collect::<Result<_>>()?;
    gens.sort_by(|a, b| {
        let (la, lb) = (a.lm().expect("nonzero"), b.lm().expect("nonzero"));
        la.degree()
            .cmp(&lb.degree())
            .then_with(|| ring.cmp(la, lb))
            .then_with(|| a.len().cmp(&b.len()))
    });
    let mut eng = Engine {
        ring: ring.clone(),
        basis: Vec::new(),
        masks: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        counter: Counter {
            stats: GbStats::default(),
            budget,
        },
    };
    let unit = |eng: &Engine<F>| GroebnerBasis {
        ring: ring.clone(),
        elements: vec![ring.one()],
        masks: vec![0],
        stats: GbStats {
            basis_size: 1,
            ..eng.counter.stats
        },
    };
    for g in &gens {
        let h = eng.reduce(g)?;
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(unit(&eng));
        }
        eng.update(h.monic());
    }
    while let Some(pair) = eng.select() {
        eng.counter.stats.pairs_processed += 1;
        eng.counter.check()?;
        let s = s_poly(&eng.basis[pair.i], &eng.basis[pair.j]);
        let h = eng.reduce(&s)?;
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(unit(&eng));
        }
        eng.update(h.monic());
    }
    // Interreduce the minimal basis.
    let mut minimal: Vec<MultiPoly<F>> = (0..eng.basis.len())
        .filter(|&i| eng.active[i])
        .map(|i| eng.basis[i].clone())
        .collect();
    minimal.sort_by(|a, b| ring.cmp(a.lm().expect("nonzero"), b.lm().expect("nonzero")));
    let masks: Vec<u64> = minimal.iter().map(|g| g.lm().expect("nonzero").mask()).collect();
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let mut active = vec![true; minimal.len()];
        active[i] = false;
        let g = &minimal[i];
        let head = &g.terms()[..1];
        let tail = reduce_terms(ring, &g.terms()[1..], &minimal, &masks, &active, &mut eng.counter)?;
        let mut terms = head.to_vec();
        terms.extend(tail);
        reduced.push(MultiPoly::from_sorted(ring, terms));
    }
    let mut stats = eng.counter.stats;
    stats.basis_size = reduced.len();
    Ok(GroebnerBasis {
        ring: ring.clone(),
        masks,
        elements: reduced,
        stats,
    })
}

/// Checks the basis property from scratch: `basis` generates an ideal whose
/// leading-term ideal is generated by the leading monomials of `basis`.
/// Used as an independent post-condition in tests.
pub fn is_groebner_basis<F: Field>(basis: &[MultiPoly<F>]) -> Result<bool> {
    if basis.is_empty() {
        return Ok(true);
    }
    let ring = basis[0].ring().clone();
    let gb = GroebnerBasis {
        masks: basis.iter().map(|g| g.lm().map_or(0, |m| m.mask())).collect(),
        elements: basis.to_vec(),
        ring,
        stats: GbStats::default(),
    };
    gb.verify_s_pairs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{PrimeField, RationalField};

    fn qring(vars: &[&str], order: TermOrder) -> PolyRing<RationalField> {
        PolyRing::new(RationalField, vars, order).unwrap()
    }

    #[test]
    fn trivial_bases() {
        let r = qring(&["x", "y"], TermOrder::GrevLex);
        let gb = buchberger(&r, &[r.gen(0), r.gen(1)], DEFAULT_STEP_BUDGET).unwrap();
        assert_eq!(gb.elements(), &[r.gen(1), r.gen(0)]);
        let f = r.parse("2*x^2*y + 4*y - 2").unwrap();
        let gb = buchberger(&r, &[f.clone()], DEFAULT_STEP_BUDGET).unwrap();
        assert_eq!(gb.elements(), &[f.monic()]);
        let gb = buchberger(&r, &[r.gen(0), r.parse("x + 1").unwrap()], DEFAULT_STEP_BUDGET).unwrap();
        assert!(gb.is_unit());
    }

    #[test]
    fn hand_computed_lex_basis() {
        let r = qring(&["x", "y"], TermOrder::Lex);
        let gens = [r.parse("x^2 - y").unwrap(), r.parse("y^2 - x").unwrap()];
        let gb = buchberger(&r, &gens, DEFAULT_STEP_BUDGET).unwrap();
        assert!(gb.elements().contains(&r.parse("y^4 - y").unwrap()));
        assert_eq!(gb.elements(), &[r.parse("y^4 - y").unwrap(), r.parse("x - y^2").unwrap()]);
        assert!(gb.verify_s_pairs().unwrap());
        assert!(gb.is_reduced());
    }

    #[test]
    fn normal_forms() {
        let r = qring(&["x", "y"], TermOrder::GrevLex);
        let gb = buchberger(&r, &[r.gen(0)], DEFAULT_STEP_BUDGET).unwrap();
        assert!(gb.normal_form(&r.parse("x^2").unwrap()).unwrap().is_zero());
        assert_eq!(gb.normal_form(&r.parse("x*y + y").unwrap()).unwrap(), r.gen(1));
        // One reduction step by the relation under lex u > v > x > y > s > t.
        let r = qring(&["u", "v", "x", "y", "s", "t"], TermOrder::Lex);
        let rel = r.parse("s*u^2*x^2 + t*u*x*v*y + s*v^2*y^2").unwrap();
        let gb = buchberger(&r, &[rel], DEFAULT_STEP_BUDGET).unwrap();
        let nf = gb.normal_form(&r.parse("s*u^2*x^2").unwrap()).unwrap();
        assert_eq!(nf, r.parse("-t*u*x*v*y - s*v^2*y^2").unwrap());
    }

    #[test]
    fn budget_exhaustion_carries_statistics() {
        let r = PolyRing::new(PrimeField::new(7).unwrap(), &["x", "y", "z"], TermOrder::Lex).unwrap();
        let gens = [
            r.parse("x^3 - 2*x*y").unwrap(),
            r.parse("x^2*y - 2*y^2 + x").unwrap(),
            r.parse("z^2*x - y^3 + 1").unwrap(),
        ];
        match buchberger(&r, &gens, 5) {
            Err(Error::Resource { stats, .. }) => assert!(stats.reductions + stats.pairs_processed > 5),
            other => panic!("{other:?}"),
        }
        let gb = buchberger(&r, &gens, DEFAULT_STEP_BUDGET).unwrap();
        assert!(gb.verify_s_pairs().unwrap());
        assert!(gb.is_reduced());
        // Deterministic: same input, same basis.
        assert_eq!(buchberger(&r, &gens, DEFAULT_STEP_BUDGET).unwrap(), gb);
    }
}
