//! Gröbner answers paired with the graded linear-algebra answer.

use serde::Serialize;

use crate::arith::Field;
use crate::error::{Error, Result};
use crate::mpoly::{Grading, Ideal, MultiPoly};
use crate::scenarios::report::Outcome;

/// What the second oracle said about a Gröbner answer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Agreement {
    Agrees,
    /// The oracle found no certificate within its cap although Gröbner
    /// reduction did.
    Unconfirmed,
    Skipped(String),
    Disagrees,
}

/// Exponent sum over weight-zero variables.
fn zero_weight_degree<F: Field>(f: &MultiPoly<F>, g: &Grading) -> u32 {
    f.terms()
        .iter()
        .map(|(_, m)| {
            (0..g.weights.len())
                .filter(|&i| g.weights[i] == 0)
                .map(|i| m.exp(i))
                .sum::<u32>()
        })
        .max()
        .unwrap_or(0)
}

/// The grading with a cap on weight-zero variables generous enough for the
/// memberships met in the scenarios: twice the weight-zero degree of `f`
/// plus the largest one among the generators, plus two.
fn capped<F: Field>(g: &Grading, f: &MultiPoly<F>, ideal: &Ideal<F>) -> Grading {
    if !g.weights.contains(&0) || g.zero_weight_cap.is_some() {
        return g.clone();
    }
    let gens = ideal.gens().iter().map(|h| zero_weight_degree(h, g)).max().unwrap_or(0);
    g.clone().with_cap(2 * zero_weight_degree(f, g) + gens + 2)
}

/// The linear-algebra verdict on `f ∈ I`, or why it was not consulted.
pub fn graded_answer<F: Field>(f: &MultiPoly<F>, ideal: &Ideal<F>, grading: &Grading) -> Result<std::result::Result<bool, String>> {
    let g = capped(grading, f, ideal);
    match g.contains(f, ideal) {
        Ok(b) => Ok(Ok(b)),
        Err(Error::Domain(msg)) => Ok(Err(format!("not homogeneous: {msg}"))),
        Err(Error::Resource { what, .. }) => Ok(Err(what)),
        Err(e) => Err(e),
    }
}

/// `f ∈ I` by Gröbner normal form, cross-checked.
pub fn dual_contains<F: Field>(f: &MultiPoly<F>, ideal: &Ideal<F>, grading: &Grading) -> Result<(bool, Agreement)> {
    let gb = ideal.contains(f)?;
    let capped = grading.weights.contains(&0);
    let agreement = match graded_answer(f, ideal, grading)? {
        Err(why) => Agreement::Skipped(why),
        Ok(g) if g == gb => Agreement::Agrees,
        Ok(false) if capped => Agreement::Unconfirmed,
        Ok(_) => Agreement::Disagrees,
    };
    Ok((gb, agreement))
}

/// Folds a membership answer and its cross-check into a sub-check outcome.
/// `expected` is what the statement claims.
pub fn membership_outcome<F: Field>(
    f: &MultiPoly<F>,
    ideal: &Ideal<F>,
    grading: &Grading,
    expected: bool,
) -> Result<Outcome> {
    Ok(membership_with_note(f, ideal, grading, expected)?.0)
}

/// [`membership_outcome`] together with what the graded oracle said.
pub fn membership_with_note<F: Field>(
    f: &MultiPoly<F>,
    ideal: &Ideal<F>,
    grading: &Grading,
    expected: bool,
) -> Result<(Outcome, Agreement)> {
    let (gb, agreement) = dual_contains(f, ideal, grading)?;
    let o = fold(gb == expected, &agreement, || {
        format!("{f} is {}in the ideal", if gb { "" } else { "not " })
    });
    Ok((o, agreement))
}

fn fold(ok: bool, agreement: &Agreement, counterexample: impl FnOnce() -> String) -> Outcome {
    match (ok, agreement) {
        (_, Agreement::Disagrees) => Outcome::Fails(format!("oracles disagree: {}", counterexample())),
        (false, _) => Outcome::Fails(counterexample()),
        (true, Agreement::Unconfirmed) => Outcome::Unknown("graded oracle found no certificate under its cap".into()),
        (true, _) => Outcome::Holds,
    }
}

/// Equality of ideals: Gröbner comparison, and each generator of either
/// side checked in the other by the graded oracle.
pub fn equality_outcome<F: Field>(a: &Ideal<F>, b: &Ideal<F>, grading: &Grading) -> Result<(Outcome, Vec<Agreement>)> {
    let gb = a.equals(b)?;
    let mut notes = Vec::new();
    let mut worst = Agreement::Agrees;
    let mut witness = None;
    for (x, y) in [(a, b), (b, a)] {
        for g in x.gens() {
            let member_gb = y.contains(g)?;
            if !member_gb && witness.is_none() {
                witness = Some(g.to_string());
            }
            let agreement = match graded_answer(g, y, grading)? {
                Err(why) => Agreement::Skipped(why),
                Ok(v) if v == member_gb => Agreement::Agrees,
                Ok(false) if grading.weights.contains(&0) => Agreement::Unconfirmed,
                Ok(_) => Agreement::Disagrees,
            };
            worst = severity_max(worst, agreement.clone());
            notes.push(agreement);
        }
    }
    let outcome = fold(gb, &worst, || {
        format!(
            "generator {} lies in one ideal but not the other",
            witness.clone().unwrap_or_else(|| "?".into())
        )
    });
    Ok((outcome, notes))
}

fn severity_max(a: Agreement, b: Agreement) -> Agreement {
    let rank = |x: &Agreement| match x {
        Agreement::Agrees => 0,
        Agreement::Skipped(_) => 1,
        Agreement::Unconfirmed => 2,
        Agreement::Disagrees => 3,
    };
    if rank(&b) > rank(&a) {
        b
    } else {
        a
    }
}

/// Summary of a list of agreements for a report: counts per kind.
pub fn summarize(notes: &[Agreement]) -> serde_json::Value {
    let mut counts = std::collections::BTreeMap::new();
    for n in notes {
        let k = match n {
            Agreement::Agrees => "agrees",
            Agreement::Unconfirmed => "unconfirmed",
            Agreement::Skipped(_) => "skipped",
            Agreement::Disagrees => "disagrees",
        };
        *counts.entry(k).or_insert(0u64) += 1;
    }
    serde_json::to_value(counts).expect("counts serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::PrimeField;
    use crate::mpoly::{PolyRing, TermOrder};

    #[test]
    fn membership_with_and_without_caps() {
        let f5 = PrimeField::new(5).unwrap();
        let r = PolyRing::new(f5, &["t", "x", "y"], TermOrder::GrevLex).unwrap();
        let i = Ideal::new(&r, vec![r.parse("x^3").unwrap(), r.parse("y^3").unwrap(), r.parse("x^2 + t*x*y + y^2").unwrap()]).unwrap();
        let g = Grading::new(&[0, 1, 1]);
        let f = r.parse("t^2*x*y^2 - x*y^2").unwrap();
        assert_eq!(membership_outcome(&f, &i, &g, true).unwrap(), Outcome::Holds);
        let (gb, agreement) = dual_contains(&r.parse("x*y^2").unwrap(), &i, &g).unwrap();
        assert!(!gb);
        assert_eq!(agreement, Agreement::Agrees);
        let o = membership_outcome(&r.parse("x*y^2").unwrap(), &i, &g, true).unwrap();
        assert!(matches!(o, Outcome::Fails(_)));
    }

    #[test]
    fn inhomogeneous_ideals_are_skipped() {
        let f5 = PrimeField::new(5).unwrap();
        let r = PolyRing::new(f5, &["x", "y"], TermOrder::GrevLex).unwrap();
        let i = Ideal::new(&r, vec![r.parse("x^2 - y").unwrap()]).unwrap();
        let (gb, a) = dual_contains(&r.parse("x^4 - y^2").unwrap(), &i, &Grading::new(&[1, 1])).unwrap();
        assert!(gb);
        assert!(matches!(a, Agreement::Skipped(_)));
    }

    #[test]
    fn equality_checks_both_ways() {
        let f5 = PrimeField::new(5).unwrap();
        let r = PolyRing::new(f5, &["x", "y"], TermOrder::GrevLex).unwrap();
        let a = Ideal::new(&r, vec![r.parse("x^2").unwrap(), r.parse("x*y").unwrap()]).unwrap();
        let b = Ideal::new(&r, vec![r.parse("x^2 + x*y").unwrap(), r.parse("x*y").unwrap()]).unwrap();
        let c = Ideal::new(&r, vec![r.parse("x").unwrap()]).unwrap();
        let g = Grading::new(&[1, 1]);
        let (o, notes) = equality_outcome(&a, &b, &g).unwrap();
        assert_eq!(o, Outcome::Holds);
        assert_eq!(summarize(&notes)["agrees"], 4);
        let (o, _) = equality_outcome(&a, &c, &g).unwrap();
        assert_eq!(o, Outcome::Fails("generator x lies in one ideal but not the other".into()));
    }
}
