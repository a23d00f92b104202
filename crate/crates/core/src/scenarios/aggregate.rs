//! Merging reports from several runs into one summary.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::scenarios::report::{ReportKey, ScenarioReport, Status};

/// Reports keyed by scenario and parameters, with status counts. When two
/// runs report the same key the more severe report is kept (ties broken by
/// serialized text), so merging is associative and commutative.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub status: Status,
    pub total: usize,
    pub by_status: BTreeMap<Status, usize>,
    pub by_scenario: BTreeMap<String, BTreeMap<Status, usize>>,
    pub reports: Vec<ScenarioReport>,
}

impl Aggregate {
    pub fn from_reports(reports: impl IntoIterator<Item = ScenarioReport>) -> Self {
        let mut kept: BTreeMap<ReportKey, (ScenarioReport, String)> = BTreeMap::new();
        for r in reports {
            let text = r.to_json();
            match kept.get(&r.key()) {
                Some((old, old_text)) if (old.status, old_text) >= (r.status, &text) => {}
                _ => {
                    kept.insert(r.key(), (r, text));
                }
            }
        }
        let reports: Vec<ScenarioReport> = kept.into_values().map(|(r, _)| r).collect();
        let mut by_status = BTreeMap::new();
        let mut by_scenario: BTreeMap<String, BTreeMap<Status, usize>> = BTreeMap::new();
        for r in &reports {
            *by_status.entry(r.status).or_default() += 1;
            *by_scenario.entry(r.scenario.clone()).or_default().entry(r.status).or_default() += 1;
        }
        // an empty aggregate has verified nothing
        let status = reports
            .iter()
            .map(|r| r.status)
            .reduce(Status::worst)
            .unwrap_or(Status::Inconclusive);
        Aggregate {
            status,
            total: reports.len(),
            by_status,
            by_scenario,
            reports,
        }
    }

    pub fn merge(&self, other: &Aggregate) -> Aggregate {
        Aggregate::from_reports(self.reports.iter().chain(&other.reports).cloned())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("aggregates serialize")
    }
}

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        col: e.column(),
        msg: e.to_string(),
    }
}

/// Reads a report file: a single report, an array of reports, or an
/// aggregate (whose summary fields are recomputed, not trusted).
pub fn parse_reports(text: &str) -> Result<Vec<ScenarioReport>> {
    let value: Value = serde_json::from_str(text).map_err(parse_error)?;
    match value {
        Value::Array(items) => items
            .into_iter()
            .map(|v| serde_json::from_value(v).map_err(parse_error))
            .collect(),
        Value::Object(ref map) if map.contains_key("reports") && !map.contains_key("scenario") => {
            let agg: Aggregate = serde_json::from_value(value).map_err(parse_error)?;
            Ok(agg.reports)
        }
        Value::Object(_) => Ok(vec![serde_json::from_value(value).map_err(parse_error)?]),
        _ => Err(Error::Parse {
            line: 1,
            col: 1,
            msg: "expected a report, an array of reports or an aggregate".into(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenarios::report::{Outcome, Recorder, RunContext};
    use proptest::prelude::*;

    fn report(scenario: &str, n: u32, status: Status) -> ScenarioReport {
        let mut rec = Recorder::new(scenario, &RunContext::default());
        rec.param("n", n);
        let o = match status {
            Status::Verified => Outcome::Holds,
            Status::Refuted => Outcome::Fails(format!("n = {n}")),
            Status::Inconclusive => Outcome::Unknown("bound".into()),
            Status::ResourceExhausted => Outcome::Exhausted("budget".into()),
        };
        rec.check("c", Ok(o)).unwrap();
        rec.finish()
    }

    fn status_strategy() -> impl Strategy<Value = Status> {
        prop_oneof![
            Just(Status::Verified),
            Just(Status::Inconclusive),
            Just(Status::ResourceExhausted),
            Just(Status::Refuted),
        ]
    }

    fn run_strategy() -> impl Strategy<Value = Aggregate> {
        prop::collection::vec((prop_oneof![Just("a"), Just("b")], 0u32..4, status_strategy()), 0..6)
            .prop_map(|v| Aggregate::from_reports(v.into_iter().map(|(s, n, st)| report(s, n, st))))
    }

    proptest! {
        #[test]
        fn merge_is_associative_and_commutative(a in run_strategy(), b in run_strategy(), c in run_strategy()) {
            prop_assert_eq!(a.merge(&b).merge(&c), a.merge(&b.merge(&c)));
            prop_assert_eq!(a.merge(&b), b.merge(&a));
            prop_assert_eq!(a.merge(&a), a.clone());
        }
    }

    #[test]
    fn keeps_the_worst_duplicate_and_counts() {
        let agg = Aggregate::from_reports(vec![
            report("a", 1, Status::Verified),
            report("a", 1, Status::Refuted),
            report("b", 2, Status::Inconclusive),
        ]);
        assert_eq!(agg.total, 2);
        assert_eq!(agg.status, Status::Refuted);
        assert_eq!(agg.by_scenario["a"][&Status::Refuted], 1);
        assert_eq!(Aggregate::from_reports(vec![]).status, Status::Inconclusive);
    }

    #[test]
    fn reads_every_file_shape() {
        let r = report("a", 1, Status::Verified);
        assert_eq!(parse_reports(&r.to_json()).unwrap(), vec![r.clone()]);
        let arr = serde_json::to_string(&vec![r.clone(), r.clone()]).unwrap();
        assert_eq!(parse_reports(&arr).unwrap().len(), 2);
        let agg = Aggregate::from_reports(vec![r.clone()]);
        assert_eq!(parse_reports(&agg.to_json()).unwrap(), vec![r]);
        assert!(parse_reports("3").is_err());
        assert!(parse_reports("{").is_err());
        assert!(parse_reports("{\"reports\": 1}").is_err());
    }
}
