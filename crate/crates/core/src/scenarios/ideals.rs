//! Colon ideals, decompositions and radicals in `K[s,t,x,y]/(s x² + t x y + s y²)`
//! and its dehomogenization.

use std::str::FromStr;

use serde::Serialize;

use crate::arith::Field;
use crate::detfam::{det_family, family_unipoly, Family};
use crate::error::{Error, Result};
use crate::mpoly::{Grading, Ideal, MultiPoly};
use crate::scenarios::oracle::{equality_outcome, membership_outcome, summarize, Agreement};
use crate::scenarios::report::{Outcome, Recorder, RunContext, ScenarioReport};
use crate::scenarios::rings::{ring_a, ring_a_dehomogenized, HypersurfaceSpec};
use crate::unipoly::{Factorization, Factorizer, UniPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ColonVariant {
    /// `(x^n, y^n, s x² + t x y + s y²) : s^m x y^(n−1) = (x, y, Q_(n−1))`.
    Homogeneous,
    /// `(x^n, y^n, x² + t x y + y²) : x y^(n−1) = (x, y, P_(n−1))`.
    Inhomogeneous,
}

impl FromStr for ColonVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "homogeneous" | "2" => Ok(ColonVariant::Homogeneous),
            "inhomogeneous" | "3" => Ok(ColonVariant::Inhomogeneous),
            other => Err(Error::domain(format!("unknown colon variant {other:?}"))),
        }
    }
}

pub(crate) fn tracked<F: Field>(spec: HypersurfaceSpec<F>, rec: &Recorder) -> HypersurfaceSpec<F> {
    spec.with_tracking(rec.ctx().budget, rec.counters())
}

pub(crate) fn field_param<F: Field>(rec: &mut Recorder, field: &F) {
    rec.param("p", field.characteristic());
}

fn gb_strings<F: Field>(i: &Ideal<F>) -> Result<Vec<String>> {
    Ok(i.groebner()?.elements().iter().map(|g| g.to_string()).collect())
}

/// Runs `body` and records its error as the check `aborted`, so a resource
/// failure part way through still yields a report.
pub(crate) fn guarded(rec: &mut Recorder, body: impl FnOnce(&mut Recorder) -> Result<()>) -> Result<()> {
    match body(rec) {
        Ok(()) => Ok(()),
        Err(e) => rec.check("aborted", Err(e)).map(|_| ()),
    }
}

/// Every `membership_outcome` of `items` must hold; the first failure is
/// reported.
pub(crate) fn all_members<F: Field>(items: &[(MultiPoly<F>, &Ideal<F>)], grading: &Grading, expected: bool) -> Result<Outcome> {
    let mut worst = Outcome::Holds;
    for (f, i) in items {
        let o = membership_outcome(f, i, grading, expected)?;
        match o {
            Outcome::Fails(_) => return Ok(o),
            Outcome::Holds => {}
            _ => worst = o,
        }
    }
    Ok(worst)
}

fn q_poly<F: Field>(field: &F, n: usize, spec: &HypersurfaceSpec<F>) -> Result<MultiPoly<F>> {
    det_family(Family::Q, field, n).map_by_name(spec.ring())
}

/// Colon identity for one `n` and (homogeneous variant) exponent `m`, with
/// the membership `x y^(n−1) Q_(n−1) ∈ (x^n, y^n)` (resp. `P_(n−1)`).
pub fn colon_identity_check<F: Field>(
    field: &F,
    n: u32,
    m: u32,
    variant: ColonVariant,
    ctx: &RunContext,
) -> Result<ScenarioReport> {
    if n < 1 {
        return Err(Error::domain("colon identity needs n ≥ 1"));
    }
    let mut rec = Recorder::new("colon", ctx);
    field_param(&mut rec, field);
    rec.param("n", n).param("variant", variant);
    let (spec, f, det) = match variant {
        ColonVariant::Homogeneous => {
            rec.param("m", m);
            let spec = tracked(ring_a(field, &ctx.order)?, &rec);
            let f = spec.parse(&format!("s^{m}*x*y^{}", n - 1))?;
            let q = q_poly(field, n as usize - 1, &spec)?;
            (spec, f, q)
        }
        ColonVariant::Inhomogeneous => {
            let spec = tracked(ring_a_dehomogenized(field, &ctx.order)?, &rec);
            let f = spec.parse(&format!("x*y^{}", n - 1))?;
            let p = det_family(Family::P, field, n as usize - 1).map_by_name(spec.ring())?;
            (spec, f, p)
        }
    };
    let grading = spec.oracle_grading().clone();
    rec.witness("determinant", det.to_string());
    guarded(&mut rec, |rec| {
        let ideal = spec.ideal_of(&[&format!("x^{n}"), &format!("y^{n}")])?;
        let expected = spec.ideal(vec![spec.var("x")?, spec.var("y")?, det.clone()])?;
        let colon = ideal.colon_poly(&f)?;
        rec.witness("colon_generators", gb_strings(&colon)?);
        let (o, notes) = equality_outcome(&colon, &expected, &grading)?;
        rec.witness("oracle_colon", summarize(&notes));
        rec.check("colon", Ok(o))?;
        let products: Vec<_> = expected
            .gens()
            .iter()
            .map(|g| Ok((g.checked_mul(&f)?, &ideal)))
            .collect::<Result<_>>()?;
        rec.check("expected_generators_times_f", all_members(&products, &grading, true))?;
        let xy = spec.parse(&format!("x*y^{}", n - 1))?;
        rec.check("membership", membership_outcome(&xy.checked_mul(&det)?, &ideal, &grading, true))?;
        Ok(())
    })?;
    Ok(rec.finish())
}

/// `(x^n, y^n, s x y^(n−1)) = (x, y)^n ∩ (x^n, y^n, s x y^(n−1), s^n, t^n)`
/// and the three accompanying facts about its components.
pub fn decomposition_check<F: Field>(field: &F, n: u32, ctx: &RunContext) -> Result<ScenarioReport> {
    if n < 2 {
        return Err(Error::domain("decomposition check needs n ≥ 2"));
    }
    let mut rec = Recorder::new("decomposition", ctx);
    field_param(&mut rec, field);
    rec.param("n", n);
    let spec = tracked(ring_a(field, &ctx.order)?, &rec);
    let grading = spec.oracle_grading().clone();
    let xn = format!("x^{n}");
    let yn = format!("y^{n}");
    let sxy = format!("s*x*y^{}", n - 1);
    guarded(&mut rec, |rec| {
        let whole = spec.ideal_of(&[&xn, &yn, &sxy])?;
        let powers: Vec<String> = (0..=n).map(|i| format!("x^{i}*y^{}", n - i)).collect();
        let q1 = spec.ideal_of(&powers.iter().map(String::as_str).collect::<Vec<_>>())?;
        let q2 = spec.ideal_of(&[&xn, &yn, &sxy, &format!("s^{n}"), &format!("t^{n}")])?;
        let meet = q1.intersect(&q2)?;
        let (o, notes) = equality_outcome(&whole, &meet, &grading)?;
        rec.witness("oracle_equality", summarize(&notes));
        rec.check("equality", Ok(o))?;

        let small = spec.ideal_of(&[&xn, &yn, &format!("x*y^{}", n - 1)])?;
        let items: Vec<_> = (1..=n)
            .map(|i| Ok((spec.parse(&format!("s^{}*x^{i}*y^{}", i - 1, n - i))?, &small)))
            .collect::<Result<_>>()?;
        rec.check("s_powers", all_members(&items, &grading, true))?;

        let items: Vec<_> = (0..=n)
            .map(|j| Ok((spec.parse(&format!("t^{n}*x^{j}*y^{}", n - j))?, &whole)))
            .collect::<Result<_>>()?;
        rec.check("t_power_times_power_of_xy", all_members(&items, &grading, true))?;

        rec.check("second_component_radical", radical_is(&q2, &spec, &["s", "t", "x", "y"], &[], n))?;
        Ok(())
    })?;
    Ok(rec.finish())
}

/// The radical of `ideal` contains each of `inside` and none of `outside`,
/// and `ideal` is proper. Members are also certified by a power `v^k ∈ I`
/// with `k ≤ max_power` found by the graded oracle when possible.
fn radical_is<F: Field>(
    ideal: &Ideal<F>,
    spec: &HypersurfaceSpec<F>,
    inside: &[&str],
    outside: &[&str],
    max_power: u32,
) -> Result<Outcome> {
    if ideal.is_unit()? {
        return Ok(Outcome::Fails("the ideal is the unit ideal".into()));
    }
    let grading = spec.oracle_grading();
    for v in inside {
        let x = spec.var(v)?;
        if !ideal.radical_contains(&x)? {
            return Ok(Outcome::Fails(format!("{v} is not in the radical")));
        }
        let mut certified = false;
        for k in 1..=max_power {
            if let Ok(true) = crate::scenarios::oracle::graded_answer(&x.pow(k as u64), ideal, grading)? {
                certified = true;
                break;
            }
        }
        if !certified {
            return Ok(Outcome::Unknown(format!("no power of {v} up to {max_power} certified by the graded oracle")));
        }
    }
    for v in outside {
        if ideal.radical_contains(&spec.var(v)?)? {
            return Ok(Outcome::Fails(format!("{v} is in the radical")));
        }
    }
    Ok(Outcome::Holds)
}

/// Factor lists as `(factor, multiplicity)` strings.
pub(crate) fn factor_strings<F: Field>(f: &Factorization<F>) -> Vec<(String, u32)> {
    f.factors.iter().map(|(g, e)| (g.to_string(), *e)).collect()
}

/// `n = 2`: `(x², y²) = (x, y)² ∩ (x², y², t)` with radicals `(x, y)` and
/// `(t, x, y)`. `n ≥ 3`: `(x^n, y^n) : (xy)^(n−1) = (s, t, x, y)`, and the
/// colon by `s x y^(n−1)` contracts to `(Q_(n−1))` in `K[s, t]`, whose
/// factors (after setting `s = 1`) must be those of `P_(n−1)`.
pub fn genfrob_check<F: Field, Z: Factorizer<F>>(
    field: &F,
    n: u32,
    factorizer: &Z,
    ctx: &RunContext,
) -> Result<ScenarioReport> {
    if n < 2 {
        return Err(Error::domain("genfrob check needs n ≥ 2"));
    }
    let mut rec = Recorder::new("genfrob", ctx);
    field_param(&mut rec, field);
    rec.param("n", n);
    let spec = tracked(ring_a(field, &ctx.order)?, &rec);
    let grading = spec.oracle_grading().clone();
    if n == 2 {
        guarded(&mut rec, |rec| {
            let whole = spec.ideal_of(&["x^2", "y^2"])?;
            let q1 = spec.ideal_of(&["x^2", "x*y", "y^2"])?;
            let q2 = spec.ideal_of(&["x^2", "y^2", "t"])?;
            let (o, notes) = equality_outcome(&whole, &q1.intersect(&q2)?, &grading)?;
            rec.witness("oracle_decomposition", summarize(&notes));
            rec.check("decomposition", Ok(o))?;
            rec.check("radical_first", radical_is(&q1, &spec, &["x", "y"], &["s", "t"], 2))?;
            rec.check("radical_second", radical_is(&q2, &spec, &["t", "x", "y"], &["s"], 2))?;
            Ok(())
        })?;
        return Ok(rec.finish());
    }
    guarded(&mut rec, |rec| {
        let whole = spec.ideal_of(&[&format!("x^{n}"), &format!("y^{n}")])?;
        let xy = spec.parse(&format!("x^{m}*y^{m}", m = n - 1))?;
        let colon = whole.colon_poly(&xy)?;
        let maximal = spec.ideal_of(&["s", "t", "x", "y"])?;
        let (o, notes) = equality_outcome(&colon, &maximal, &grading)?;
        rec.witness("oracle_maximal_colon", summarize(&notes));
        rec.check("maximal_colon", Ok(o))?;

        let f = spec.parse(&format!("s*x*y^{}", n - 1))?;
        let contraction = spec.contract_to_degree_zero(&whole.colon_poly(&f)?)?;
        let small = contraction.ring().clone();
        let q = det_family(Family::Q, field, n as usize - 1).map_by_name(&small)?;
        let expected = Ideal::new(&small, vec![q])?;
        let (o, notes) = equality_outcome(&contraction, &expected, &Grading::new(&[1, 1]))?;
        rec.witness("oracle_contraction", summarize(&notes));
        rec.witness("contraction_generators", gb_strings(&contraction)?);
        rec.check("contraction", Ok(o))?;

        let outcome = contraction_factors(rec, field, n, &contraction, factorizer);
        rec.check("factors", outcome)?;
        Ok(())
    })?;
    Ok(rec.finish())
}

fn contraction_factors<F: Field, Z: Factorizer<F>>(
    rec: &mut Recorder,
    field: &F,
    n: u32,
    contraction: &Ideal<F>,
    factorizer: &Z,
) -> Result<Outcome> {
    let gb = contraction.groebner()?;
    let [g] = gb.elements() else {
        return Ok(Outcome::Fails(format!("contraction has {} basis elements", gb.elements().len())));
    };
    let ring = g.ring();
    let (si, ti) = (ring.var_index("s").expect("s"), ring.var_index("t").expect("t"));
    let dehom: UniPoly<F> = g.substitute(si, &ring.one())?.to_univariate(ti)?;
    let p = family_unipoly(Family::P, field, n as usize - 1)?;
    if dehom.degree() != p.degree() {
        return Ok(Outcome::Fails(format!("dehomogenized generator {dehom} has the wrong degree")));
    }
    let from_contraction = factorizer.factor(&dehom)?;
    let from_family = factorizer.factor(&p)?;
    rec.witness("factors", factor_strings(&from_contraction));
    let mine: Vec<_> = from_contraction.factors.iter().map(|(f, _)| f.coeffs().to_vec()).collect();
    let theirs: Vec<_> = from_family.factors.iter().map(|(f, _)| f.coeffs().to_vec()).collect();
    Ok(Outcome::from_bool(mine.iter().all(|f| theirs.contains(f)), || {
        format!("factors {from_contraction} not among those of P_{}", n - 1)
    }))
}

/// Summary used when a scenario skipped the second oracle altogether.
pub(crate) fn skipped(reason: &str) -> serde_json::Value {
    summarize(&[Agreement::Skipped(reason.to_string())])
}
