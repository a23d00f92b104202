//! Scenarios on Čech classes: Frobenius classes killed by `s^q` and `t^q`,
//! and annihilators transferred between the small and large rings.

use serde_json::json;

use crate::arith::{Field, PrimeField};
use crate::detfam::{det_family, frobenius_det_identity, Family};
use crate::error::{Error, Result};
use crate::mpoly::{Grading, Ideal};
use crate::scenarios::ideals::{field_param, guarded, tracked};
use crate::scenarios::lc::{ann_degree_zero, eta_large, eta_small, lc_class_is_zero, multigraded_shift_check, LocalCohomologyClass, Vanishing};
use crate::scenarios::oracle::{equality_outcome, summarize};
use crate::scenarios::report::{Outcome, Recorder, RunContext, ScenarioReport};
use crate::scenarios::rings::{ring_a, ring_b, ring_b_r, ring_s, HypersurfaceSpec};

/// In `K[s,t,x,y]/(s x² + t x y + s y²)` the class `η_q = [1 + (x^q, y^q)]`
/// is killed by `s^q` and by `t^q`; also `Q_(q−1) = Q_(p−1)^((q−1)/(p−1))`.
/// The search bound defaults to `3q`.
pub fn eta_kill_check(p: u64, e: u32, ctx: &RunContext) -> Result<ScenarioReport> {
    let field = PrimeField::new(p)?;
    let q = p
        .checked_pow(e)
        .filter(|&q| q >= 2 && q <= u32::MAX as u64 / 4)
        .ok_or_else(|| Error::domain(format!("q = {p}^{e} out of range")))? as u32;
    let k_bound = ctx.k_bound.unwrap_or(3 * q);
    let mut rec = Recorder::new("eta-kill", ctx);
    field_param(&mut rec, &field);
    rec.param("e", e).param("q", q).param("k_bound", k_bound);
    let spec = tracked(ring_a(&field, &ctx.order)?, &rec);
    guarded(&mut rec, |rec| {
        let eta = LocalCohomologyClass::new(&spec, spec.parse("1")?, &["x", "y"], &[q, q])?;
        for g in ["s", "t"] {
            let c = eta.times(&spec.parse(&format!("{g}^{q}"))?)?;
            let o = match lc_class_is_zero(&c, k_bound)? {
                Vanishing::Zero { k } => {
                    rec.witness(&format!("{g}_power_k"), k);
                    Outcome::Holds
                }
                Vanishing::Inconclusive { searched_up_to } => {
                    Outcome::Unknown(format!("no witness k ≤ {searched_up_to} for {g}^{q}·eta"))
                }
            };
            rec.check(&format!("{g}_power_kills"), Ok(o))?;
        }
        Ok(())
    })?;
    if e >= 1 {
        let ok = frobenius_det_identity(p, e, Family::Q)?;
        rec.check(
            "q_power_identity",
            Ok(Outcome::from_bool(ok, || format!("Q_{} is not a power of Q_{}", q - 1, p - 1))),
        )?;
    }
    Ok(rec.finish())
}

fn principal_in<F: Field>(ann: &Ideal<F>, field: &F, n: u32) -> Result<Ideal<F>> {
    let q = det_family(Family::Q, field, n as usize - 1).map_by_name(ann.ring())?;
    Ideal::new(ann.ring(), vec![q])
}

fn ann_check<F: Field>(rec: &mut Recorder, spec: &HypersurfaceSpec<F>, field: &F, n: u32, label: &str) -> Result<()> {
    let ann = ann_degree_zero(&eta_small(spec, n)?)?;
    let expected = principal_in(&ann, field, n)?;
    let grading = Grading::new(&vec![1; ann.ring().nvars()]);
    let (o, notes) = equality_outcome(&ann, &expected, &grading)?;
    rec.witness(&format!("oracle_ann_{label}_n{n}"), summarize(&notes));
    rec.check(&format!("ann_{label}_n{n}"), Ok(o))?;
    Ok(())
}

/// For each `n`: the annihilator of `η_n` over the degree-zero subring is
/// `(Q_(n−1))` in the `S` scenario (computed through `B`) and in the `T`
/// scenario (through `B_T`); for `n ≤ shift_max`, the colon on the `B` side
/// equals the shifted colon on the `S` side for `k ∈ {0,1}²` (`k_z = 0`).
pub fn multigraded_check<F: Field>(field: &F, ns: &[u32], shift_max: u32, ctx: &RunContext) -> Result<ScenarioReport> {
    if ns.is_empty() || ns.contains(&0) {
        return Err(Error::domain("multigraded needs a nonempty range of n ≥ 1"));
    }
    let mut rec = Recorder::new("multigraded", ctx);
    field_param(&mut rec, field);
    rec.param("n", ns).param("shift_max", shift_max);
    let b = tracked(ring_b(field, &ctx.order)?, &rec);
    let bt = tracked(ring_b_r(field, &ctx.order)?, &rec);
    let s = tracked(ring_s(field, &ctx.order)?, &rec);
    let grid: Vec<[u32; 3]> = vec![[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0]];
    rec.witness("k_grid", json!(grid));
    guarded(&mut rec, |rec| {
        for &n in ns {
            ann_check(rec, &b, field, n, "s")?;
            ann_check(rec, &bt, field, n, "t")?;
            if n <= shift_max {
                let small = eta_small(&b, n)?;
                let large = eta_large(&s, n)?;
                let mut bad = None;
                for k in &grid {
                    if !multigraded_shift_check(&small, &large, k)? {
                        bad = Some(*k);
                        break;
                    }
                }
                rec.check(
                    &format!("shift_n{n}"),
                    Ok(Outcome::from_bool(bad.is_none(), || format!("k = {:?} gives a different colon", bad.unwrap_or_default()))),
                )?;
            }
        }
        Ok(())
    })?;
    Ok(rec.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenarios::report::Status;

    #[test]
    fn frobenius_classes_vanish() {
        let r = eta_kill_check(2, 1, &RunContext::default()).unwrap();
        assert_eq!(r.status, Status::Verified, "{}", r.to_json());
        assert!(r.witnesses["s_power_k"].as_u64().unwrap() <= 6);
        let tight = RunContext {
            k_bound: Some(0),
            ..RunContext::default()
        };
        let r = eta_kill_check(3, 1, &tight).unwrap();
        assert!(matches!(r.status, Status::Inconclusive | Status::Verified));
    }

    #[test]
    fn annihilators_and_shifts() {
        let f5 = PrimeField::new(5).unwrap();
        let r = multigraded_check(&f5, &[1, 2, 3], 2, &RunContext::default()).unwrap();
        assert_eq!(r.status, Status::Verified, "{}", r.to_json());
        assert!(r.witnesses["checks"].get("shift_n2").is_some());
        assert!(r.witnesses["checks"].get("shift_n3").is_none());
    }
}
