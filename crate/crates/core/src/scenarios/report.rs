use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::mpoly::{GbCounters, GbTotals, TermOrder};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    Inconclusive,
    ResourceExhausted,
    Refuted,
}

impl Status {
    /// The more severe of two statuses: refuted over resource-exhausted over
    /// inconclusive over verified.
    pub fn worst(self, other: Status) -> Status {
        self.max(other)
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Verified => 0,
            Status::Refuted => 2,
            Status::Inconclusive | Status::ResourceExhausted => 3,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Verified => "verified",
            Status::Inconclusive => "inconclusive",
            Status::ResourceExhausted => "resource-exhausted",
            Status::Refuted => "refuted",
        })
    }
}

impl FromStr for Status {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "verified" => Ok(Status::Verified),
            "inconclusive" => Ok(Status::Inconclusive),
            "resource-exhausted" => Ok(Status::ResourceExhausted),
            "refuted" => Ok(Status::Refuted),
            other => Err(Error::domain(format!("unknown status {other:?}"))),
        }
    }
}

/// Gröbner work done while producing a report.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportStats {
    pub budget: u64,
    pub gb_computations: u64,
    pub pairs_processed: u64,
    pub reductions: u64,
    pub max_basis_size: u64,
}

/// Outcome of one scenario run. Serializes with a fixed key order; maps are
/// sorted.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub params: BTreeMap<String, Value>,
    pub status: Status,
    pub witnesses: BTreeMap<String, Value>,
    pub stats: ReportStats,
    pub order_used: String,
    pub seed: u64,
    pub duration_ms: Option<u64>,
}

impl ScenarioReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            col: e.column(),
            msg: e.to_string(),
        })
    }

    /// Sort key used for deterministic output: scenario id, then parameters
    /// by name, numbers compared numerically.
    pub fn key(&self) -> ReportKey {
        ReportKey {
            scenario: self.scenario.clone(),
            params: self.params.iter().map(|(k, v)| (k.clone(), KeyValue::from(v))).collect(),
        }
    }

    pub fn counterexample(&self) -> Option<&Value> {
        self.witnesses.get("counterexample")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ReportKey {
    pub scenario: String,
    pub params: Vec<(String, KeyValue)>,
}

/// A parameter value with a total order; integers sort numerically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum KeyValue {
    Null,
    Bool(bool),
    Int(i128),
    /// Non-integral numbers and strings, by text.
    Text(String),
    List(Vec<KeyValue>),
    Map(Vec<(String, KeyValue)>),
}

impl From<&Value> for KeyValue {
    fn from(v: &Value) -> Self {
        match v {
            Value::Null => KeyValue::Null,
            Value::Bool(b) => KeyValue::Bool(*b),
            Value::Number(n) => match (n.as_i64(), n.as_u64()) {
                (Some(i), _) => KeyValue::Int(i as i128),
                (_, Some(u)) => KeyValue::Int(u as i128),
                _ => KeyValue::Text(n.to_string()),
            },
            Value::String(s) => KeyValue::Text(s.clone()),
            Value::Array(a) => KeyValue::List(a.iter().map(KeyValue::from).collect()),
            Value::Object(m) => KeyValue::Map(m.iter().map(|(k, v)| (k.clone(), KeyValue::from(v))).collect()),
        }
    }
}

/// Result of one sub-check inside a scenario.
#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Holds,
    /// Carries the counterexample: an element, generator or value exhibiting
    /// the failure.
    Fails(String),
    /// A bounded search or oracle could not decide.
    Unknown(String),
    Exhausted(String),
}

impl Outcome {
    pub fn from_bool(ok: bool, counterexample: impl FnOnce() -> String) -> Self {
        if ok {
            Outcome::Holds
        } else {
            Outcome::Fails(counterexample())
        }
    }

    /// Resource errors become `Exhausted`, unsupported inputs `Unknown`;
    /// other errors are passed on.
    pub fn from_result(r: Result<Outcome>) -> Result<Outcome> {
        match r {
            Ok(o) => Ok(o),
            Err(Error::Resource { what, stats }) => Ok(Outcome::Exhausted(format!("{what} ({stats})"))),
            Err(Error::Unsupported(msg)) => Ok(Outcome::Unknown(msg)),
            Err(e) => Err(e),
        }
    }

    pub fn status(&self) -> Status {
        match self {
            Outcome::Holds => Status::Verified,
            Outcome::Fails(_) => Status::Refuted,
            Outcome::Unknown(_) => Status::Inconclusive,
            Outcome::Exhausted(_) => Status::ResourceExhausted,
        }
    }
}

/// Settings shared by every scenario in a run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunContext {
    /// Step budget for each Gröbner computation.
    pub budget: u64,
    pub seed: u64,
    pub order: TermOrder,
    /// Overrides the default bound of bounded searches.
    pub k_bound: Option<u32>,
    pub timing: bool,
}

impl Default for RunContext {
    fn default() -> Self {
        RunContext {
            budget: crate::mpoly::DEFAULT_STEP_BUDGET,
            seed: crate::unipoly::DEFAULT_SEED,
            order: TermOrder::GrevLex,
            k_bound: None,
            timing: false,
        }
    }
}

/// Collects parameters, witnesses and sub-check outcomes, then produces the
/// report.
pub struct Recorder {
    scenario: String,
    params: BTreeMap<String, Value>,
    witnesses: BTreeMap<String, Value>,
    checks: Vec<(String, Outcome)>,
    counters: Arc<GbCounters>,
    ctx: RunContext,
    started: std::time::Instant,
}

impl Recorder {
    pub fn new(scenario: &str, ctx: &RunContext) -> Self {
        Recorder {
            scenario: scenario.to_string(),
            params: BTreeMap::new(),
            witnesses: BTreeMap::new(),
            checks: Vec::new(),
            counters: Arc::default(),
            ctx: ctx.clone(),
            started: std::time::Instant::now(),
        }
    }

    pub fn ctx(&self) -> &RunContext {
        &self.ctx
    }

    /// Counters every ideal of this scenario should report to.
    pub fn counters(&self) -> Arc<GbCounters> {
        self.counters.clone()
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.params.insert(key.to_string(), to_value(value));
        self
    }

    pub fn witness(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.witnesses.insert(key.to_string(), to_value(value));
        self
    }

    /// Records a sub-check; errors other than resource or unsupported are
    /// returned.
    pub fn check(&mut self, name: &str, outcome: Result<Outcome>) -> Result<Status> {
        let o = Outcome::from_result(outcome)?;
        let s = o.status();
        self.checks.push((name.to_string(), o));
        Ok(s)
    }

    pub fn status(&self) -> Status {
        self.checks
            .iter()
            .fold(Status::Verified, |acc, (_, o)| acc.worst(o.status()))
    }

    pub fn finish(mut self) -> ScenarioReport {
        let status = if self.checks.is_empty() {
            Status::Inconclusive
        } else {
            self.status()
        };
        let mut checks = BTreeMap::new();
        let mut first_failure = None;
        for (name, o) in &self.checks {
            let v = match o {
                Outcome::Holds => Value::from("verified"),
                Outcome::Fails(c) => {
                    first_failure.get_or_insert_with(|| format!("{name}: {c}"));
                    serde_json::json!({"status": "refuted", "counterexample": c})
                }
                Outcome::Unknown(m) => serde_json::json!({"status": "inconclusive", "note": m}),
                Outcome::Exhausted(m) => serde_json::json!({"status": "resource-exhausted", "note": m}),
            };
            checks.insert(name.clone(), v);
        }
        self.witnesses.insert("checks".into(), Value::Object(checks.into_iter().collect()));
        if let Some(c) = first_failure {
            self.witnesses.insert("counterexample".into(), Value::from(c));
        }
        let GbTotals {
            bases,
            pairs_processed,
            reductions,
            max_basis_size,
        } = self.counters.totals();
        ScenarioReport {
            scenario: self.scenario,
            params: self.params,
            status,
            witnesses: self.witnesses,
            stats: ReportStats {
                budget: self.ctx.budget,
                gb_computations: bases,
                pairs_processed,
                reductions,
                max_basis_size,
            },
            order_used: self.ctx.order.to_string(),
            seed: self.ctx.seed,
            duration_ms: self
                .ctx
                .timing
                .then(|| self.started.elapsed().as_millis() as u64),
        }
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_order_and_codes() {
        assert_eq!(Status::Verified.worst(Status::Inconclusive), Status::Inconclusive);
        assert_eq!(Status::Refuted.worst(Status::ResourceExhausted), Status::Refuted);
        assert_eq!(Status::ResourceExhausted.exit_code(), 3);
        for s in [Status::Verified, Status::Inconclusive, Status::ResourceExhausted, Status::Refuted] {
            assert_eq!(s.to_string().parse::<Status>().unwrap(), s);
        }
    }

    #[test]
    fn recorder_builds_stable_reports() {
        let ctx = RunContext::default();
        let mut r = Recorder::new("demo", &ctx);
        r.param("n", 3).param("p", 5);
        r.check("a", Ok(Outcome::Holds)).unwrap();
        r.check("b", Err(Error::resource("out of steps"))).unwrap();
        assert!(r.check("c", Err(Error::domain("bad"))).is_err());
        let rep = r.finish();
        assert_eq!(rep.status, Status::ResourceExhausted);
        assert_eq!(rep.duration_ms, None);
        let text = rep.to_json();
        let keys: Vec<usize> = ["\"scenario\"", "\"params\"", "\"status\"", "\"witnesses\"", "\"stats\"", "\"order_used\"", "\"seed\"", "\"duration_ms\""]
            .iter()
            .map(|k| text.find(k).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(ScenarioReport::from_json(&text).unwrap(), rep);
    }

    #[test]
    fn refutations_carry_counterexamples() {
        let mut r = Recorder::new("demo", &RunContext::default());
        r.check("eq", Ok(Outcome::Fails("x*y".into()))).unwrap();
        let rep = r.finish();
        assert_eq!(rep.status, Status::Refuted);
        assert_eq!(rep.counterexample().unwrap(), "eq: x*y");
    }

    #[test]
    fn keys_sort_numbers_numerically() {
        let rep = |p: u64| {
            let mut r = Recorder::new("demo", &RunContext::default());
            r.param("p", p);
            r.finish()
        };
        assert!(rep(3).key() < rep(11).key());
        assert!(KeyValue::from(&serde_json::json!([1, 2])) < KeyValue::from(&serde_json::json!([1, 10])));
    }
}
