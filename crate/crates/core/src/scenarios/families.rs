//! Scenarios about the determinant families: Frobenius identities, root
//! counts, factor growth, presentation matrices and supports.

use serde_json::{json, Value};

use crate::arith::{build_extension, Field, PrimeField, DEFAULT_ENUMERATION_BUDGET};
use crate::detfam::{
    build_matrix, det_direct, f_root_formula_check, family_unipoly, frobenius_det_identity,
    katzman_closed_form_check, p_root_formula_check, p_values_at_two_check, presentation_matrix,
    support_consistency, Family, MultidiagSpec,
};
use crate::error::{Error, Result};
use crate::mpoly::{PolyRing, TermOrder};
use crate::scenarios::ideals::{factor_strings, field_param};
use crate::scenarios::report::{Outcome, Recorder, RunContext, ScenarioReport};
use crate::unipoly::{cumulative_factor_set, distinct_root_count, eval_in_extension, FiniteFieldFactorizer, GrowthTable, UniPoly};

fn prime_power(p: u64, e: u32) -> Result<u64> {
    p.checked_pow(e)
        .ok_or_else(|| Error::domain(format!("{p}^{e} does not fit in 64 bits")))
}

fn nonempty<T>(xs: &[T], what: &str) -> Result<()> {
    if xs.is_empty() {
        return Err(Error::domain(format!("empty range of {what}")));
    }
    Ok(())
}

fn odd_prime(p: u64, scenario: &str) -> Result<PrimeField> {
    let field = PrimeField::new(p)?;
    if p == 2 {
        return Err(Error::domain(format!("{scenario} needs an odd characteristic")));
    }
    Ok(field)
}

/// `det M_(p^e − 1) = (det M_(p−1))^((p^e − 1)/(p − 1))` for the generic
/// three-variable band and for `Q` in `𝔽_p[s, t]`.
pub fn threediag_check(p: u64, es: &[u32], ctx: &RunContext) -> Result<ScenarioReport> {
    nonempty(es, "exponents")?;
    let field = PrimeField::new(p)?;
    let mut rec = Recorder::new("threediag", ctx);
    field_param(&mut rec, &field);
    rec.param("e", es);
    rec.witness("base_determinant", crate::detfam::det_family(Family::Q, &field, p as usize - 1).to_string());
    for &e in es {
        for (label, family) in [("generic", Family::Generic), ("q", Family::Q)] {
            let ok = frobenius_det_identity(p, e, family)?;
            rec.check(
                &format!("{label}_e{e}"),
                Ok(Outcome::from_bool(ok, || format!("det M_{} is not the expected power", p.pow(e) - 1))),
            )?;
        }
    }
    Ok(rec.finish())
}

/// Roots of `f` among all elements of `𝔽_(p^k)`, by evaluating at every
/// element. `None` when the field is too large to enumerate.
fn brute_force_roots(f: &UniPoly<PrimeField>, k: usize) -> Result<Option<usize>> {
    let p = f.field().modulus();
    match p.checked_pow(k as u32) {
        Some(order) if order <= DEFAULT_ENUMERATION_BUDGET => {}
        _ => return Ok(None),
    }
    let ext = build_extension(p, k)?;
    Ok(Some(
        ext.elements()
            .filter(|a| ext.is_zero(&eval_in_extension(f, &ext, a)))
            .count(),
    ))
}

/// `distinct_root_count(family_(q−2)) = expected(q)` for each `q = p^e`,
/// also counted by brute force over `𝔽_(q²)`, which holds every root.
fn distinct_roots(
    rec: &mut Recorder,
    family: Family,
    field: &PrimeField,
    es: &[u32],
    expected: impl Fn(u64) -> u64,
) -> Result<()> {
    let p = field.modulus();
    let mut rows = Vec::new();
    let mut outcome = Outcome::Holds;
    for &e in es {
        let q = prime_power(p, e)?;
        if q < 3 {
            rows.push(json!({"q": q, "note": "index q - 2 is below 1, skipped"}));
            continue;
        }
        let f = family_unipoly(family, field, q as usize - 2)?;
        let count = distinct_root_count(&f)? as u64;
        let brute = brute_force_roots(&f, 2 * e as usize)?;
        let want = expected(q);
        rows.push(json!({"q": q, "distinct_roots": count, "enumerated_roots": brute, "expected": want}));
        let bad = count != want || brute.is_some_and(|b| b as u64 != count);
        if bad && !matches!(outcome, Outcome::Fails(_)) {
            outcome = Outcome::Fails(format!(
                "{family}_{}: {count} distinct roots, {brute:?} enumerated, expected {want}",
                q - 2
            ));
        } else if brute.is_none() && outcome == Outcome::Holds {
            outcome = Outcome::Unknown(format!("F_(q^2) for q = {q} is too large to enumerate"));
        }
    }
    rec.witness("root_counts", rows);
    rec.check("distinct_roots", Ok(outcome))?;
    Ok(())
}

/// Root formula for `P_n` over `𝔽_(p²)` for `n ≤ n_max`, the values
/// `P_n(±2)` over ℚ for `n ≤ 50`, and the count of distinct roots of
/// `P_(q−2)`.
pub fn roots_check(p: u64, es: &[u32], n_max: usize, ctx: &RunContext) -> Result<ScenarioReport> {
    nonempty(es, "exponents")?;
    let field = PrimeField::new(p)?;
    let mut rec = Recorder::new("roots", ctx);
    field_param(&mut rec, &field);
    rec.param("e", es).param("n_max", n_max);
    let bad = (1..=n_max).map(|n| Ok((n, p_root_formula_check(n, p)?))).collect::<Result<Vec<_>>>()?;
    rec.check(
        "root_formula",
        Ok(match bad.iter().find(|(_, ok)| !ok) {
            Some((n, _)) => Outcome::Fails(format!("P_{n}(xi + 1/xi) formula fails")),
            None => Outcome::Holds,
        }),
    )?;
    let at_two = (0..=50).find(|&n| !p_values_at_two_check(n));
    rec.check(
        "values_at_two",
        Ok(Outcome::from_bool(at_two.is_none(), || format!("P_{}(±2) ≠ ±{}", at_two.unwrap_or(0), at_two.unwrap_or(0) + 1))),
    )?;
    distinct_roots(&mut rec, Family::P, &field, es, |q| if p == 2 { q / 2 - 1 } else { q - 2 })?;
    Ok(rec.finish())
}

/// The same for `F_n`: root formula for odd `n ≤ n_max` and `q − 2`
/// distinct roots of `F_(q−2)`.
pub fn roots2_check(p: u64, es: &[u32], n_max: usize, ctx: &RunContext) -> Result<ScenarioReport> {
    nonempty(es, "exponents")?;
    let field = odd_prime(p, "roots2")?;
    let mut rec = Recorder::new("roots2", ctx);
    field_param(&mut rec, &field);
    rec.param("e", es).param("n_max", n_max);
    let mut failure = None;
    for n in (1..=n_max).step_by(2) {
        if !f_root_formula_check(n, p)? {
            failure = Some(n);
            break;
        }
    }
    rec.check(
        "root_formula",
        Ok(Outcome::from_bool(failure.is_none(), || format!("F_{}(xi + 1/xi) formula fails", failure.unwrap_or(0)))),
    )?;
    distinct_roots(&mut rec, Family::F, &field, es, |q| q - 2)?;
    Ok(rec.finish())
}

fn growth_rows(table: &GrowthTable<PrimeField>, es: &[u32]) -> Value {
    Value::Array(
        table
            .rows
            .iter()
            .zip(es)
            .map(|(r, e)| {
                json!({
                    "e": e,
                    "index": r.index,
                    "factors": factor_strings(&r.factorization),
                    "new": r.new,
                    "cumulative": r.cumulative,
                })
            })
            .collect(),
    )
}

fn growth_outcome(table: &GrowthTable<PrimeField>) -> Outcome {
    Outcome::from_bool(table.strictly_increasing(), || format!("cumulative counts {:?}", table.counts()))
}

/// Factors `F_(q−2)` for `q = p, …, p^e_max`: each must be squarefree of
/// degree `q − 2`, and the distinct factors must keep growing.
pub fn lowdim_factor_growth(p: u64, e_max: u32, ctx: &RunContext) -> Result<ScenarioReport> {
    let field = odd_prime(p, "lowdim")?;
    if e_max < 1 {
        return Err(Error::domain("lowdim needs e_max ≥ 1"));
    }
    let mut rec = Recorder::new("lowdim", ctx);
    field_param(&mut rec, &field);
    rec.param("e_max", e_max);
    let es: Vec<u32> = (1..=e_max).collect();
    let indices = es
        .iter()
        .map(|&e| Ok(prime_power(p, e)? as usize - 2))
        .collect::<Result<Vec<_>>>()?;
    let fz = FiniteFieldFactorizer { seed: ctx.seed };
    let table = cumulative_factor_set(|n| family_unipoly(Family::F, &field, n), &indices, &fz)?;
    rec.witness("growth", growth_rows(&table, &es));
    let bad = table.rows.iter().find(|r| {
        let deg: usize = r.factorization.factors.iter().map(|(g, m)| g.degree().unwrap_or(0) * *m as usize).sum();
        !r.factorization.is_squarefree() || deg != r.index
    });
    rec.check(
        "squarefree",
        Ok(match bad {
            Some(r) => Outcome::Fails(format!("F_{} = {}", r.index, r.factorization)),
            None => Outcome::Holds,
        }),
    )?;
    rec.check("growth", Ok(growth_outcome(&table)))?;
    Ok(rec.finish())
}

/// `(−1)^n (1 + t + … + t^n)` over `field`.
fn katzman_closed_form(field: &PrimeField, n: usize) -> UniPoly<PrimeField> {
    let c = field.from_i64(if n % 2 == 0 { 1 } else { -1 });
    UniPoly::new(*field, vec![c; n + 1]).with_var("t")
}

/// Factors `det M_(p^e − 2)` for the band `(1, −(1+t), t)`, checking the
/// closed form over ℚ and over `𝔽_p`, and the growth of distinct factors.
pub fn katzman_legacy_check(p: u64, e_max: u32, ctx: &RunContext) -> Result<ScenarioReport> {
    let field = PrimeField::new(p)?;
    if e_max < 1 {
        return Err(Error::domain("katzman needs e_max ≥ 1"));
    }
    let mut rec = Recorder::new("katzman", ctx);
    field_param(&mut rec, &field);
    rec.param("e_max", e_max);
    let mut es = Vec::new();
    let mut indices = Vec::new();
    let mut skipped = Vec::new();
    for e in 1..=e_max {
        let q = prime_power(p, e)?;
        if q < 3 {
            skipped.push(json!({"e": e, "note": format!("index {q} - 2 is below 1")}));
        } else {
            es.push(e);
            indices.push(q as usize - 2);
        }
    }
    rec.witness("skipped", skipped);
    if indices.is_empty() {
        rec.check("growth", Ok(Outcome::Unknown("no index in range".into())))?;
        return Ok(rec.finish());
    }
    let mut closed = Outcome::Holds;
    for &n in &indices {
        let over_fp = family_unipoly(Family::Katzman, &field, n)? == katzman_closed_form(&field, n);
        if !over_fp || !katzman_closed_form_check(n) {
            closed = Outcome::Fails(format!("det M_{n} does not match (-1)^n (t^(n+1) - 1)/(t - 1)"));
            break;
        }
    }
    rec.check("closed_form", Ok(closed))?;
    let fz = FiniteFieldFactorizer { seed: ctx.seed };
    let table = cumulative_factor_set(|n| family_unipoly(Family::Katzman, &field, n), &indices, &fz)?;
    rec.witness("growth", growth_rows(&table, &es));
    rec.check("growth", Ok(growth_outcome(&table)))?;
    Ok(rec.finish())
}

/// The band `r0, …, r_d` over `K[r0, …, r_d]`.
pub fn generic_band<F: Field>(field: &F, d: usize, a: u32) -> Result<MultidiagSpec<F>> {
    if d == 0 || d % 2 == 1 {
        return Err(Error::domain(format!("band width d = {d} must be positive and even")));
    }
    let names: Vec<String> = (0..=d).map(|i| format!("r{i}")).collect();
    let ring = PolyRing::new(field.clone(), &names, TermOrder::GrevLex)?;
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    MultidiagSpec::parse(&ring, &refs, a)
}

/// The presentation matrix of the graded piece of
/// `A/(x^n, y^n)` equals the multidiagonal matrix of size `n − a − d/2`,
/// for `n = a + d + 1, …, n_max`, and their determinants agree.
pub fn presentation_check<F: Field>(field: &F, d: usize, a: u32, n_max: usize, ctx: &RunContext) -> Result<ScenarioReport> {
    let spec = generic_band(field, d, a)?;
    let mut rec = Recorder::new("presentation", ctx);
    field_param(&mut rec, field);
    rec.param("d", d).param("a", a).param("n_max", n_max);
    let first = a as usize + d + 1;
    if n_max < first {
        return Err(Error::domain(format!("n_max must be at least a + d + 1 = {first}")));
    }
    let mut entries = Outcome::Holds;
    let mut dets = Outcome::Holds;
    for n in first..=n_max {
        let size = n - a as usize - d / 2;
        let pres = presentation_matrix(&spec, n)?;
        let band = build_matrix(&spec, size);
        if pres != band {
            entries = Outcome::Fails(format!("n = {n}: {pres} differs from the band matrix of size {size}"));
            break;
        }
        if size <= 6 && det_direct(&pres)? != crate::detfam::det_custom(&spec, size)? {
            dets = Outcome::Fails(format!("n = {n}: determinants differ"));
        }
    }
    rec.witness("smallest", presentation_matrix(&spec, first)?.to_string());
    rec.check("entrywise", Ok(entries))?;
    rec.check("determinants", Ok(dets))?;
    Ok(rec.finish())
}

/// At every `t₀ ∈ 𝔽_p`, `det M_n(t₀) = 0` iff `M_n(t₀)` is singular, for
/// the P, F and Katzman bands with `n = 1, …, n_max`.
pub fn minprimes_check(p: u64, n_max: usize, ctx: &RunContext) -> Result<ScenarioReport> {
    let field = PrimeField::new(p)?;
    if n_max < 1 {
        return Err(Error::domain("minprimes needs n_max ≥ 1"));
    }
    let mut rec = Recorder::new("minprimes", ctx);
    field_param(&mut rec, &field);
    rec.param("n_max", n_max);
    for family in [Family::P, Family::F, Family::Katzman] {
        let spec = family.spec(&field);
        let mut outcome = Outcome::Holds;
        for n in 1..=n_max {
            if !support_consistency(&spec, n)? {
                outcome = Outcome::Fails(format!("{family}: support of det M_{n} differs from the cokernel"));
                break;
            }
        }
        rec.check(&format!("support_{}", family.to_string().to_lowercase()), Ok(outcome))?;
    }
    Ok(rec.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::RationalField;
    use crate::scenarios::report::Status;

    fn ctx() -> RunContext {
        RunContext::default()
    }

    #[test]
    fn threediag_small() {
        let r = threediag_check(3, &[1, 2], &ctx()).unwrap();
        assert_eq!(r.status, Status::Verified);
        assert_eq!(r.witnesses["base_determinant"], "-s^2 + t^2");
        assert!(threediag_check(3, &[], &ctx()).is_err());
    }

    #[test]
    fn root_counts_match_enumeration() {
        let r = roots_check(3, &[1, 2], 6, &ctx()).unwrap();
        assert_eq!(r.status, Status::Verified, "{}", r.to_json());
        assert_eq!(r.witnesses["root_counts"][1]["distinct_roots"], 7);
        assert_eq!(r.witnesses["root_counts"][1]["enumerated_roots"], 7);
        let r = roots_check(2, &[1, 2, 3], 4, &ctx()).unwrap();
        assert_eq!(r.status, Status::Verified, "{}", r.to_json());
        assert_eq!(r.witnesses["root_counts"][2]["distinct_roots"], 3);
        let r = roots2_check(5, &[1, 2], 7, &ctx()).unwrap();
        assert_eq!(r.status, Status::Verified, "{}", r.to_json());
        assert!(roots2_check(2, &[1], 3, &ctx()).is_err());
    }

    #[test]
    fn lowdim_base_cases() {
        let r = lowdim_factor_growth(3, 1, &ctx()).unwrap();
        assert_eq!(r.status, Status::Verified);
        assert_eq!(r.witnesses["growth"][0]["factors"], json!([["t", 1]]));
        let r = lowdim_factor_growth(3, 2, &ctx()).unwrap();
        assert_eq!(r.status, Status::Verified, "{}", r.to_json());
        assert!(lowdim_factor_growth(2, 2, &ctx()).is_err());
    }

    #[test]
    fn katzman_skips_small_indices() {
        let r = katzman_legacy_check(2, 3, &ctx()).unwrap();
        assert_eq!(r.status, Status::Verified, "{}", r.to_json());
        assert_eq!(r.witnesses["skipped"].as_array().unwrap().len(), 1);
        assert_eq!(r.witnesses["growth"][0]["factors"], json!([["t^2 + t + 1", 1]]));
        let r = katzman_legacy_check(2, 1, &ctx()).unwrap();
        assert_eq!(r.status, Status::Inconclusive);
    }

    #[test]
    fn presentation_and_supports() {
        let r = presentation_check(&PrimeField::new(5).unwrap(), 2, 1, 8, &ctx()).unwrap();
        assert_eq!(r.status, Status::Verified, "{}", r.to_json());
        let r = presentation_check(&RationalField, 4, 0, 8, &ctx()).unwrap();
        assert_eq!(r.status, Status::Verified, "{}", r.to_json());
        assert!(presentation_check(&RationalField, 3, 0, 8, &ctx()).is_err());
        let r = minprimes_check(3, 6, &ctx()).unwrap();
        assert_eq!(r.status, Status::Verified);
    }
}
