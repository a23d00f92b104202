//! Membership certificates showing that
//! `K[s,t,u,v,w,x,y,z]/(s u²x² + s v²y² + t u x v y + t w²z²)` is F-regular.

use std::fmt;
use std::str::FromStr;

use crate::arith::{binomial_mod, Field, Integer, PrimeField};
use crate::error::{Error, Result};
use crate::mpoly::{Grading, Ideal, MultiPoly, PolyRing};
use crate::scenarios::ideals::{all_members, field_param, guarded, skipped};
use crate::scenarios::oracle::{membership_outcome, membership_with_note, summarize};
use crate::scenarios::report::{Outcome, Recorder, RunContext, ScenarioReport};
use crate::scenarios::rings::scenario_ring;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FregMode {
    /// `t⁴(s u x v y (w−t)(z−t))^(q−1) ∈ (t^(4q+1) w z, s^q, u^q, x^q, v^q,
    /// y^q, (w−t)^q, (z−t)^q)` in the eight-variable ring. `None` picks the
    /// exponent known to work for `p`.
    Full8var { q: Option<u64> },
    /// `t⁴(s u x v y)^(p−1) ∈ (x^p, y^p, s u²x² + s v²y² + t u x v y + t⁵,
    /// t^(5p−1))` in `K[s,t,u,v,x,y]`.
    Reduced6var,
    /// The same membership through the explicit binomial expansion.
    BinomialPath,
}

impl fmt::Display for FregMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FregMode::Full8var { .. } => "full8var",
            FregMode::Reduced6var => "reduced6var",
            FregMode::BinomialPath => "binomial_path",
        })
    }
}

impl FromStr for FregMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full8var" | "full" => Ok(FregMode::Full8var { q: None }),
            "reduced6var" | "reduced" => Ok(FregMode::Reduced6var),
            "binomial_path" | "binomial-path" | "binomial" => Ok(FregMode::BinomialPath),
            other => Err(Error::domain(format!("unknown freg mode {other:?}"))),
        }
    }
}

/// The Frobenius exponent used for the eight-variable certificate: `2³`,
/// `3²`, or `p` itself.
pub fn full8var_exponent(p: u64) -> u64 {
    match p {
        2 => 8,
        3 => 9,
        _ => p,
    }
}

fn tracked_ideal(rec: &Recorder, ring: &PolyRing<PrimeField>, gens: Vec<MultiPoly<PrimeField>>) -> Result<Ideal<PrimeField>> {
    Ok(Ideal::new(ring, gens)?
        .with_budget(rec.ctx().budget)
        .with_counters(rec.counters()))
}

pub fn freg_certificate(p: u64, mode: FregMode, ctx: &RunContext) -> Result<ScenarioReport> {
    let field = PrimeField::new(p)?;
    let mut rec = Recorder::new("freg", ctx);
    field_param(&mut rec, &field);
    rec.param("mode", mode.to_string());
    match mode {
        FregMode::Full8var { q } => {
            let expected = full8var_exponent(p);
            let q = q.unwrap_or(expected);
            if q != expected {
                return Err(Error::domain(format!(
                    "the eight-variable certificate is stated for q = {expected} when p = {p}, not q = {q}"
                )));
            }
            rec.param("q", q);
            guarded(&mut rec, |rec| full8var(rec, &field, q))?;
        }
        FregMode::Reduced6var | FregMode::BinomialPath => {
            if p < 5 {
                return Err(Error::domain(format!("the reduced certificate needs p ≥ 5, got {p}")));
            }
            rec.param("q", p);
            guarded(&mut rec, |rec| {
                let six = SixVar::new(&field, rec)?;
                if mode == FregMode::Reduced6var {
                    six.reduced(rec)
                } else {
                    six.binomial_path(rec)
                }
            })?;
        }
    }
    Ok(rec.finish())
}

/// Works in `W = w − t`, `Z = z − t`, so the Frobenius powers of the system
/// of parameters are pure powers of variables.
fn full8var(rec: &mut Recorder, field: &PrimeField, q: u64) -> Result<()> {
    let ring = scenario_ring(field, &["s", "t", "u", "v", "W", "x", "y", "Z"], &rec.ctx().order)?;
    let t = ring.var("t")?;
    let w = ring.var("W")?.checked_add(&t)?;
    let z = ring.var("Z")?.checked_add(&t)?;
    let mut gens = vec![t.pow(4 * q + 1).checked_mul(&w)?.checked_mul(&z)?];
    for v in ["s", "u", "x", "v", "y", "W", "Z"] {
        gens.push(ring.var(v)?.pow(q));
    }
    let tail = t.checked_mul(&w.pow(2).checked_mul(&z.pow(2))?)?;
    gens.push(ring.parse("s*u^2*x^2 + s*v^2*y^2 + t*u*x*v*y")?.checked_add(&tail)?);
    let elem = t.pow(4).checked_mul(&ring.parse("s*u*x*v*y*W*Z")?.pow(q - 1))?;
    rec.witness("coordinates", "W = w - t, Z = z - t");
    rec.witness(
        "oracle_membership",
        skipped("no positive grading makes the translated ideal homogeneous"),
    );
    let ideal = tracked_ideal(rec, &ring, gens)?;
    let answer = ideal.contains(&elem);
    if let Ok(true) = answer {
        rec.witness("basis_size", ideal.groebner()?.elements().len());
    }
    rec.check(
        "membership",
        answer.map(|b| Outcome::from_bool(b, || format!("t^4*(s*u*x*v*y*W*Z)^{} has a nonzero normal form", q - 1))),
    )?;
    Ok(())
}

struct SixVar {
    p: u64,
    ring: PolyRing<PrimeField>,
    /// `s u²x² + s v²y² + t u x v y`.
    rel: MultiPoly<PrimeField>,
    /// `(x^p, y^p, rel + t⁵)`.
    a: Ideal<PrimeField>,
    grading: Grading,
}

impl SixVar {
    fn new(field: &PrimeField, rec: &Recorder) -> Result<Self> {
        let p = field.characteristic();
        let ring = scenario_ring(field, &["s", "t", "u", "v", "x", "y"], &rec.ctx().order)?;
        let rel = ring.parse("s*u^2*x^2 + s*v^2*y^2 + t*u*x*v*y")?;
        let a = tracked_ideal(
            rec,
            &ring,
            vec![
                ring.parse(&format!("x^{p}"))?,
                ring.parse(&format!("y^{p}"))?,
                rel.checked_add(&ring.parse("t^5")?)?,
            ],
        )?;
        let grading = Grading::new(&[1; 6])
            .with_extra(vec![0, 0, 1, 0, -1, 0])
            .with_extra(vec![0, 0, 0, 1, 0, -1]);
        Ok(SixVar { p, ring, rel, a, grading })
    }

    fn parse(&self, text: &str) -> Result<MultiPoly<PrimeField>> {
        self.ring.parse(text)
    }

    /// `t⁴(s u x v y)^(p−1)`.
    fn element(&self) -> Result<MultiPoly<PrimeField>> {
        self.parse(&format!("t^4*s^{m}*u^{m}*x^{m}*v^{m}*y^{m}", m = self.p - 1))
    }

    /// `𝔞 + (t^(5p−1))`.
    fn with_t_power(&self) -> Result<Ideal<PrimeField>> {
        self.a.add_gens(&[self.parse(&format!("t^{}", 5 * self.p - 1))?])
    }

    fn reduced(&self, rec: &mut Recorder) -> Result<()> {
        let ideal = self.with_t_power()?;
        let (o, note) = membership_with_note(&self.element()?, &ideal, &self.grading, true)?;
        rec.witness("oracle_membership", summarize(&[note]));
        rec.check("membership", Ok(o))?;
        Ok(())
    }

    /// `Σ_(i,j) C(p−1,i) C(p−1−i,j) (s u²x²)^i (s v²y²)^j (t u x v y)^(p−1−i−j)`
    /// with coefficients reduced mod `p` digit by digit.
    fn multinomial_expansion(&self) -> Result<MultiPoly<PrimeField>> {
        let p = self.p;
        let field = self.ring.field();
        let mut sum = self.ring.zero();
        for i in 0..p {
            for j in 0..p - i {
                let c = field.mul(&binomial_mod(p - 1, i, p)?, &binomial_mod(p - 1 - i, j, p)?);
                let k = p - 1 - i - j;
                let m = self.parse(&format!(
                    "s^{}*t^{k}*u^{}*x^{}*v^{}*y^{}",
                    i + j,
                    2 * i + k,
                    2 * i + k,
                    2 * j + k,
                    2 * j + k
                ))?;
                sum = sum.checked_add(&m.scale(&c))?;
            }
        }
        Ok(sum)
    }

    /// Drops every term divisible by `x^p` or `y^p`.
    fn truncate(&self, f: &MultiPoly<PrimeField>) -> MultiPoly<PrimeField> {
        let (xi, yi) = (4, 5);
        let p = self.p as u32;
        MultiPoly::from_terms(
            &self.ring,
            f.terms()
                .iter()
                .filter(|(_, m)| m.exp(xi) < p && m.exp(yi) < p)
                .cloned()
                .collect(),
        )
    }

    /// `Σ_(i ≤ (p−1)/2) C(p−1,i) C(p−1−i,i) s^(2i) t^(p−1−2i) (u x v y)^(p−1)`.
    fn diagonal(&self) -> Result<MultiPoly<PrimeField>> {
        let p = self.p;
        let field = self.ring.field();
        let mut sum = self.ring.zero();
        for i in 0..=(p - 1) / 2 {
            let c = field.mul(&binomial_mod(p - 1, i, p)?, &binomial_mod(p - 1 - i, i, p)?);
            let m = self.parse(&format!("s^{}*t^{}*u^{m}*x^{m}*v^{m}*y^{m}", 2 * i, p - 1 - 2 * i, m = p - 1))?;
            sum = sum.checked_add(&m.scale(&c))?;
        }
        Ok(sum)
    }

    fn binomial_path(&self, rec: &mut Recorder) -> Result<()> {
        let p = self.p;
        let field = self.ring.field().clone();
        let power = self.rel.pow(p - 1);
        let expansion = self.multinomial_expansion()?;
        rec.witness("expansion_terms", power.len());
        rec.check(
            "expansion",
            Ok(Outcome::from_bool(power == expansion, || {
                format!("multinomial sum differs from the power by {}", power.checked_sub(&expansion).expect("same ring"))
            })),
        )?;

        let diagonal = self.diagonal()?;
        let dropped = self.truncate(&power);
        let monomial = tracked_ideal(rec, &self.ring, vec![self.parse(&format!("x^{p}"))?, self.parse(&format!("y^{p}"))?])?;
        let reduced = monomial.normal_form(&power)?;
        rec.witness("diagonal", diagonal.to_string());
        let outcome = if dropped != reduced {
            Outcome::Fails(format!("oracles disagree: truncation {dropped} vs normal form {reduced}"))
        } else {
            Outcome::from_bool(dropped == diagonal, || format!("surviving terms {dropped}"))
        };
        rec.check("diagonal_terms", Ok(outcome))?;

        let half = (p - 1) / 2;
        let lucas = binomial_mod(p - 1, half, p)?;
        let exact = Integer::binomial(p - 1, half);
        rec.witness(
            "central_binomial",
            serde_json::json!({"exact": exact.to_string(), "mod_p": lucas}),
        );
        let direct = exact.rem_u64(p);
        rec.check(
            "central_binomial_unit",
            Ok(if lucas != direct {
                Outcome::Fails(format!("C({}, {half}) mod {p}: {lucas} by digits, {direct} exactly", p - 1))
            } else {
                Outcome::from_bool(lucas != 0, || format!("C({}, {half}) vanishes mod {p}", p - 1))
            }),
        )?;

        let t4 = self.parse("t^4")?;
        let t_top = self.parse(&format!("t^{}", 5 * p - 1))?;
        let uxvy = self.parse(&format!("u^{m}*x^{m}*v^{m}*y^{m}", m = p - 1))?;
        let lower = self.parse("t^5")?.checked_mul(&uxvy)?;
        rec.check("lower_terms", membership_outcome(&lower, &self.a, &self.grading, true))?;
        let leading = t4
            .checked_mul(&self.parse(&format!("s^{}", p - 1))?)?
            .checked_mul(&uxvy)?
            .scale(&lucas);
        let chain = [
            (t_top.checked_sub(&t4.checked_mul(&power)?)?, &self.a),
            (t_top.checked_sub(&t4.checked_mul(&diagonal)?)?, &self.a),
            (t_top.checked_sub(&leading)?, &self.a),
        ];
        rec.check("congruence_chain", all_members(&chain, &self.grading, true))?;

        // t⁴(suxvy)^(p−1) = C⁻¹ (t^(5p−1) − (t^(5p−1) − C t⁴ s^(p−1)(uxvy)^(p−1)))
        let ideal = self.with_t_power()?;
        let elem = self.element()?;
        let rebuilt = t_top
            .checked_sub(&chain[2].0)?
            .scale(&field.inv(&lucas)?);
        let outcome = if rebuilt != elem {
            Outcome::Fails(format!("rebuilt element {rebuilt}"))
        } else {
            let (o, note) = membership_with_note(&elem, &ideal, &self.grading, true)?;
            rec.witness("oracle_certificate", summarize(&[note]));
            o
        };
        rec.check("certificate", Ok(outcome))?;
        Ok(())
    }
}
