//! The ideals `𝔞_q = (x^q, y^q, z^q) : t^q u v^(q−2) x² y^(q−1) z^(q−1)` in
//! `K[t,u,v,w,x,y,z]/(u²x² + v²y² + t u x v y + t w²z²)`, and when
//! `u²x² + v²y²` splits.

use crate::arith::{is_square, Field, PrimeField};
use crate::detfam::{family_unipoly, Family};
use crate::error::{Error, Result};
use crate::mpoly::{Ideal, MultiPoly, PolyRing, TermOrder};
use crate::scenarios::ideals::{factor_strings, field_param, guarded, tracked};
use crate::scenarios::oracle::{graded_answer, membership_with_note, summarize};
use crate::scenarios::report::{Outcome, Recorder, RunContext, ScenarioReport};
use crate::scenarios::rings::{ring_assmax, HypersurfaceSpec};
use crate::unipoly::{factor, UniPoly};

/// `(P_(q−2)) : (t^q)` in `K[t]` as `P / gcd(P, t^q)`.
pub fn univariate_colon_by_gcd(p_poly: &UniPoly<PrimeField>, q: u64) -> Result<UniPoly<PrimeField>> {
    let field = p_poly.field().clone();
    let tq = UniPoly::monomial(field.clone(), field.one(), q as usize);
    Ok(p_poly.div_exact(&p_poly.gcd(&tq)?)?.monic())
}

/// The same colon from a factorization: every power of `t` is dropped.
pub fn univariate_colon_by_factors(p_poly: &UniPoly<PrimeField>, q: u64, seed: u64) -> Result<UniPoly<PrimeField>> {
    let field = p_poly.field().clone();
    let t = UniPoly::x(field.clone());
    let fac = factor(p_poly, seed)?;
    let mut acc = UniPoly::one(field.clone());
    for (g, e) in &fac.factors {
        // t^q absorbs up to q copies of t
        let keep = if *g == t { e.saturating_sub(q as u32) } else { *e };
        acc = acc.checked_mul(&g.pow(keep as u64))?;
    }
    Ok(acc.monic())
}

fn q_power(p: u64, e: u32) -> Result<u64> {
    p.checked_pow(e)
        .filter(|&q| q >= 2)
        .ok_or_else(|| Error::domain(format!("q = {p}^{e} must be at least 2 and fit in 64 bits")))
}

pub fn assmax_check(p: u64, e: u32, ctx: &RunContext) -> Result<ScenarioReport> {
    let field = PrimeField::new(p)?;
    let q = q_power(p, e)?;
    let mut rec = Recorder::new("assmax", ctx);
    field_param(&mut rec, &field);
    rec.param("e", e).param("q", q);
    let spec = tracked(ring_assmax(&field, &ctx.order)?, &rec);
    guarded(&mut rec, |rec| assmax_body(rec, &spec, &field, q))?;
    Ok(rec.finish())
}

fn assmax_body(rec: &mut Recorder, spec: &HypersurfaceSpec<PrimeField>, field: &PrimeField, q: u64) -> Result<()> {
    let grading = spec.oracle_grading().clone();
    let base = spec.ideal_of(&[&format!("x^{q}"), &format!("y^{q}"), &format!("z^{q}")])?;
    let f = spec.parse(&format!("t^{q}*u*v^{}*x^2*y^{m}*z^{m}", q - 2, m = q - 1))?;
    let aq = base.colon_poly(&f)?;
    let unit = aq.is_unit()?;
    rec.witness("unit_ideal", unit);
    if unit {
        rec.witness("degenerate", format!("the colon ideal is the whole ring at q = {q}"));
    }

    // contraction to K[t], Gröbner side against two univariate routes
    let t_index = spec.ring().var_index("t").expect("t");
    let contraction = aq.contract_univariate(t_index)?.monic();
    let p_poly = family_unipoly(Family::P, field, q as usize - 2)?;
    let by_gcd = univariate_colon_by_gcd(&p_poly, q)?;
    let by_factors = univariate_colon_by_factors(&p_poly, q, rec.ctx().seed)?;
    rec.witness("contraction", contraction.to_string());
    rec.witness("family_factors", factor_strings(&factor(&p_poly, rec.ctx().seed)?));
    let outcome = if by_gcd != by_factors {
        Outcome::Fails(format!("univariate oracles disagree: {by_gcd} vs {by_factors}"))
    } else {
        Outcome::from_bool(contraction == by_gcd, || {
            format!("contraction {contraction} differs from the univariate colon {by_gcd}")
        })
    };
    rec.check("contraction", Ok(outcome))?;

    // g ∈ 𝔞_q from the colon, and g·f ∈ (x^q, y^q, z^q) read off directly
    let mut notes = Vec::new();
    for (name, g) in [
        ("u_member", spec.var("u")?),
        ("v_member", spec.var("v")?),
        ("w_power_member", spec.parse(&format!("w^{}", q - 1))?),
    ] {
        let o = if aq.contains(&g)? {
            let (o, note) = membership_with_note(&g.checked_mul(&f)?, &base, &grading, true)?;
            notes.push(note);
            o
        } else {
            Outcome::Fails(format!("{g} is not in the colon ideal"))
        };
        rec.check(name, Ok(o))?;
    }
    rec.witness("oracle_members", summarize(&notes));

    // x, y, z in the radical: Rabinowitsch plus a power certificate
    let mut powers = serde_json::Map::new();
    let mut radical = Outcome::Holds;
    for v in ["x", "y", "z"] {
        let x = spec.var(v)?;
        if !aq.radical_contains(&x)? {
            radical = Outcome::Fails(format!("{v} is not in the radical"));
            break;
        }
        match least_power(&x, &f, &base, spec, q)? {
            Some(k) => {
                powers.insert(v.to_string(), k.into());
            }
            None => radical = Outcome::Unknown(format!("no power of {v} up to {q} certified by the graded oracle")),
        }
    }
    rec.witness("radical_powers", powers);
    rec.check("xyz_in_radical", Ok(radical))?;

    // same radical as (u, v, w, x, y, z) + (P_(q−2) : t^q)
    let h = MultiPoly::from_univariate(spec.ring(), t_index, &by_gcd);
    let mut other = ["u", "v", "w", "x", "y", "z"]
        .iter()
        .map(|v| spec.var(v))
        .collect::<Result<Vec<_>>>()?;
    other.push(h);
    let other = spec.ideal(other)?;
    rec.check("radical_consistency", radical_equal(&aq, &other))?;
    Ok(())
}

/// Least `k ≤ max` with `x^k f ∈ I` according to the graded oracle.
fn least_power(
    x: &MultiPoly<PrimeField>,
    f: &MultiPoly<PrimeField>,
    ideal: &Ideal<PrimeField>,
    spec: &HypersurfaceSpec<PrimeField>,
    max: u64,
) -> Result<Option<u64>> {
    for k in 1..=max {
        if let Ok(true) = graded_answer(&x.pow(k).checked_mul(f)?, ideal, spec.oracle_grading())? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

fn radical_equal(a: &Ideal<PrimeField>, b: &Ideal<PrimeField>) -> Result<Outcome> {
    for (x, y) in [(a, b), (b, a)] {
        for g in x.groebner()?.elements() {
            if !y.radical_contains(g)? {
                return Ok(Outcome::Fails(format!("{g} is not in the other radical")));
            }
        }
    }
    Ok(Outcome::Holds)
}

/// Whether `u²x² + v²y²` splitting over `𝔽_p` agrees with `−1` being a
/// square. The splitting is searched as `(ux + c vy)(ux − c vy)` with
/// `c² = −1`.
pub fn ufd_remark_check(p: u64) -> Result<bool> {
    let (splits, square) = ufd_sides(p)?;
    Ok(splits.is_some() == square)
}

// (the root c of T² + 1 if the product verifies, Euler's criterion)
fn ufd_sides(p: u64) -> Result<(Option<u64>, bool)> {
    if p == 2 {
        return Err(Error::domain("the splitting criterion needs p odd"));
    }
    let field = PrimeField::new(p)?;
    let minus_one = field.from_i64(-1);
    let ring = PolyRing::new(field, &["u", "v", "x", "y"], TermOrder::GrevLex)?;
    let target = ring.parse("u^2*x^2 + v^2*y^2")?;
    let mut splits = None;
    for c in field.elements() {
        if field.mul(&c, &c) != minus_one {
            continue;
        }
        let ux = ring.parse("u*x")?;
        let vy = ring.parse("v*y")?.scale(&c);
        if ux.checked_add(&vy)?.checked_mul(&ux.checked_sub(&vy)?)? == target {
            splits = Some(c);
            break;
        }
    }
    Ok((splits, is_square(&field, minus_one)))
}

/// Report form of [`ufd_remark_check`], with the factorization of `T² + 1`
/// as a third opinion.
pub fn ufd_remark_report(p: u64, ctx: &RunContext) -> Result<ScenarioReport> {
    let mut rec = Recorder::new("ufd-remark", ctx);
    rec.param("p", p);
    let (splits, square) = ufd_sides(p)?;
    let field = PrimeField::new(p)?;
    let quad = UniPoly::from_i64s(field, &[1, 0, 1]);
    let pieces = factor(&quad, ctx.seed)?.distinct_count();
    rec.witness("minus_one_is_square", square);
    rec.witness("square_root_of_minus_one", splits);
    rec.witness("factors_of_t2_plus_1", pieces);
    rec.check(
        "criterion",
        Ok(Outcome::from_bool(splits.is_some() == square && (pieces == 2) == square, || {
            format!("splitting {:?}, Euler criterion {square}, T^2+1 has {pieces} factors", splits)
        })),
    )?;
    Ok(rec.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenarios::report::Status;

    #[test]
    fn univariate_colons() {
        let f5 = PrimeField::new(5).unwrap();
        let p3 = family_unipoly(Family::P, &f5, 3).unwrap();
        let expected = UniPoly::from_i64s(f5, &[-2, 0, 1]);
        assert_eq!(univariate_colon_by_gcd(&p3, 5).unwrap(), expected);
        assert_eq!(univariate_colon_by_factors(&p3, 5, 1).unwrap(), expected);
        let f2 = PrimeField::new(2).unwrap();
        let p2 = family_unipoly(Family::P, &f2, 2).unwrap();
        // (t + 1)² : t⁴
        assert_eq!(univariate_colon_by_gcd(&p2, 4).unwrap(), UniPoly::from_i64s(f2, &[1, 0, 1]));
    }

    #[test]
    fn small_q_degenerates_to_the_unit_ideal() {
        let r = assmax_check(3, 1, &RunContext::default()).unwrap();
        assert_eq!(r.status, Status::Verified, "{}", r.to_json());
        assert_eq!(r.witnesses["unit_ideal"], true);
        assert_eq!(r.witnesses["contraction"], "1");
    }

    #[test]
    fn q_four_over_f2() {
        let r = assmax_check(2, 2, &RunContext::default()).unwrap();
        assert_eq!(r.status, Status::Verified, "{}", r.to_json());
        assert_eq!(r.witnesses["contraction"], "t^2 + 1");
    }

    #[test]
    fn splitting_criterion() {
        assert!(ufd_remark_check(7).unwrap());
        assert!(ufd_remark_check(5).unwrap());
        assert_eq!(ufd_sides(5).unwrap(), (Some(2), true));
        assert_eq!(ufd_sides(7).unwrap(), (None, false));
        assert!(ufd_remark_check(2).is_err());
        let r = ufd_remark_report(13, &RunContext::default()).unwrap();
        assert_eq!(r.status, Status::Verified);
    }
}
