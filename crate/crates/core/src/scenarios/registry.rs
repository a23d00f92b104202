//! Named scenarios, their parameter sets, and concurrent execution with
//! deterministic output order.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{Field, PrimeField, RationalField};
use crate::error::{Error, Result};
use crate::scenarios::assmax::{assmax_check, ufd_remark_report};
use crate::scenarios::cohomology::{eta_kill_check, multigraded_check};
use crate::scenarios::families::{
    katzman_legacy_check, lowdim_factor_growth, minprimes_check, presentation_check, roots2_check, roots_check,
    threediag_check,
};
use crate::scenarios::freg::{freg_certificate, FregMode};
use crate::scenarios::ideals::{colon_identity_check, decomposition_check, genfrob_check, ColonVariant};
use crate::scenarios::report::{RunContext, ScenarioReport};
use crate::unipoly::{FiniteFieldFactorizer, SmallRationalFactorizer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioId {
    Threediag,
    Roots,
    Roots2,
    Colon,
    Decomposition,
    Genfrob,
    Multigraded,
    Presentation,
    Minprimes,
    Freg,
    Assmax,
    Lowdim,
    Katzman,
    UfdRemark,
    EtaKill,
}

impl ScenarioId {
    pub const ALL: [ScenarioId; 15] = [
        ScenarioId::Threediag,
        ScenarioId::Roots,
        ScenarioId::Roots2,
        ScenarioId::Colon,
        ScenarioId::Decomposition,
        ScenarioId::Genfrob,
        ScenarioId::Multigraded,
        ScenarioId::Presentation,
        ScenarioId::Minprimes,
        ScenarioId::Freg,
        ScenarioId::Assmax,
        ScenarioId::Lowdim,
        ScenarioId::Katzman,
        ScenarioId::UfdRemark,
        ScenarioId::EtaKill,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ScenarioId::Threediag => "threediag",
            ScenarioId::Roots => "roots",
            ScenarioId::Roots2 => "roots2",
            ScenarioId::Colon => "colon",
            ScenarioId::Decomposition => "decomposition",
            ScenarioId::Genfrob => "genfrob",
            ScenarioId::Multigraded => "multigraded",
            ScenarioId::Presentation => "presentation",
            ScenarioId::Minprimes => "minprimes",
            ScenarioId::Freg => "freg",
            ScenarioId::Assmax => "assmax",
            ScenarioId::Lowdim => "lowdim",
            ScenarioId::Katzman => "katzman",
            ScenarioId::UfdRemark => "ufd-remark",
            ScenarioId::EtaKill => "eta-kill",
        }
    }

    /// Whether the scenario also runs over ℚ (`p = 0`).
    pub fn allows_rationals(self) -> bool {
        matches!(
            self,
            ScenarioId::Colon
                | ScenarioId::Decomposition
                | ScenarioId::Genfrob
                | ScenarioId::Multigraded
                | ScenarioId::Presentation
        )
    }
}

impl fmt::Display for ScenarioId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScenarioId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ScenarioId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::domain(format!("unknown scenario {s:?}")))
    }
}

/// Parameters shared by every scenario; each one reads the fields it needs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaskParams {
    pub e: Vec<u32>,
    pub n: Vec<u32>,
    pub q: Option<u64>,
    pub m: Vec<u32>,
    pub variant: ColonVariant,
    pub mode: Option<FregMode>,
    pub d: usize,
    pub a: u32,
    /// Largest `n` with a shift check in `multigraded`.
    pub shift_max: u32,
}

impl Default for TaskParams {
    fn default() -> Self {
        TaskParams {
            e: vec![1, 2],
            n: vec![2, 3, 4],
            q: None,
            m: vec![1],
            variant: ColonVariant::Homogeneous,
            mode: None,
            d: 2,
            a: 0,
            shift_max: 4,
        }
    }
}

/// One scenario run. `p = 0` means ℚ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Task {
    Threediag { p: u64, e: Vec<u32> },
    Roots { p: u64, e: Vec<u32>, n_max: usize },
    Roots2 { p: u64, e: Vec<u32>, n_max: usize },
    Colon { p: u64, n: u32, m: u32, variant: ColonVariant },
    Decomposition { p: u64, n: u32 },
    Genfrob { p: u64, n: u32 },
    Multigraded { p: u64, n: Vec<u32>, shift_max: u32 },
    Presentation { p: u64, d: usize, a: u32, n_max: usize },
    Minprimes { p: u64, n_max: usize },
    Freg { p: u64, mode: FregMode },
    Assmax { p: u64, e: u32 },
    Lowdim { p: u64, e_max: u32 },
    Katzman { p: u64, e_max: u32 },
    UfdRemark { p: u64 },
    EtaKill { p: u64, e: u32 },
}

fn max_of(xs: &[u32], what: &str) -> Result<u32> {
    xs.iter()
        .copied()
        .max()
        .ok_or_else(|| Error::domain(format!("empty range for {what}")))
}

/// Splits a request into tasks: one per `p`, and per `n`, `m` or `e` where
/// a scenario handles a single value.
pub fn expand(id: ScenarioId, ps: &[u64], params: &TaskParams) -> Result<Vec<Task>> {
    if ps.is_empty() {
        return Err(Error::domain("empty range for p"));
    }
    let mut tasks = Vec::new();
    for &p in ps {
        if p == 0 && !id.allows_rationals() {
            return Err(Error::domain(format!("{id} needs a prime characteristic")));
        }
        match id {
            ScenarioId::Threediag => tasks.push(Task::Threediag { p, e: params.e.clone() }),
            ScenarioId::Roots => tasks.push(Task::Roots {
                p,
                e: params.e.clone(),
                n_max: max_of(&params.n, "n")? as usize,
            }),
            ScenarioId::Roots2 => tasks.push(Task::Roots2 {
                p,
                e: params.e.clone(),
                n_max: max_of(&params.n, "n")? as usize,
            }),
            ScenarioId::Colon => {
                for &n in &params.n {
                    for &m in &params.m {
                        tasks.push(Task::Colon {
                            p,
                            n,
                            m,
                            variant: params.variant,
                        });
                    }
                }
            }
            ScenarioId::Decomposition => tasks.extend(params.n.iter().map(|&n| Task::Decomposition { p, n })),
            ScenarioId::Genfrob => tasks.extend(params.n.iter().map(|&n| Task::Genfrob { p, n })),
            ScenarioId::Multigraded => tasks.push(Task::Multigraded {
                p,
                n: params.n.clone(),
                shift_max: params.shift_max,
            }),
            ScenarioId::Presentation => tasks.push(Task::Presentation {
                p,
                d: params.d,
                a: params.a,
                n_max: max_of(&params.n, "n")? as usize,
            }),
            ScenarioId::Minprimes => tasks.push(Task::Minprimes {
                p,
                n_max: max_of(&params.n, "n")? as usize,
            }),
            ScenarioId::Freg => {
                let modes = match params.mode {
                    Some(FregMode::Full8var { .. }) => vec![FregMode::Full8var { q: params.q }],
                    Some(m) => vec![m],
                    None if p < 5 => vec![FregMode::Full8var { q: params.q }],
                    None => vec![
                        FregMode::Reduced6var,
                        FregMode::BinomialPath,
                        FregMode::Full8var { q: params.q },
                    ],
                };
                tasks.extend(modes.into_iter().map(|mode| Task::Freg { p, mode }));
            }
            ScenarioId::Assmax => tasks.extend(params.e.iter().map(|&e| Task::Assmax { p, e })),
            ScenarioId::Lowdim => tasks.push(Task::Lowdim {
                p,
                e_max: max_of(&params.e, "e")?,
            }),
            ScenarioId::Katzman => tasks.push(Task::Katzman {
                p,
                e_max: max_of(&params.e, "e")?,
            }),
            ScenarioId::UfdRemark => tasks.push(Task::UfdRemark { p }),
            ScenarioId::EtaKill => tasks.extend(params.e.iter().map(|&e| Task::EtaKill { p, e })),
        }
    }
    Ok(tasks)
}

fn with_field<T>(
    p: u64,
    rational: impl FnOnce(&RationalField) -> Result<T>,
    prime: impl FnOnce(&PrimeField) -> Result<T>,
) -> Result<T> {
    if p == 0 {
        rational(&RationalField)
    } else {
        prime(&PrimeField::new(p)?)
    }
}

/// Picks the factorizer that matches the coefficient field.
trait GenfrobFactorizer: Field {
    fn genfrob(&self, n: u32, ctx: &RunContext) -> Result<ScenarioReport>;
}

impl GenfrobFactorizer for PrimeField {
    fn genfrob(&self, n: u32, ctx: &RunContext) -> Result<ScenarioReport> {
        genfrob_check(self, n, &FiniteFieldFactorizer { seed: ctx.seed }, ctx)
    }
}

impl GenfrobFactorizer for RationalField {
    fn genfrob(&self, n: u32, ctx: &RunContext) -> Result<ScenarioReport> {
        genfrob_check(self, n, &SmallRationalFactorizer, ctx)
    }
}

impl Task {
    pub fn id(&self) -> ScenarioId {
        match self {
            Task::Threediag { .. } => ScenarioId::Threediag,
            Task::Roots { .. } => ScenarioId::Roots,
            Task::Roots2 { .. } => ScenarioId::Roots2,
            Task::Colon { .. } => ScenarioId::Colon,
            Task::Decomposition { .. } => ScenarioId::Decomposition,
            Task::Genfrob { .. } => ScenarioId::Genfrob,
            Task::Multigraded { .. } => ScenarioId::Multigraded,
            Task::Presentation { .. } => ScenarioId::Presentation,
            Task::Minprimes { .. } => ScenarioId::Minprimes,
            Task::Freg { .. } => ScenarioId::Freg,
            Task::Assmax { .. } => ScenarioId::Assmax,
            Task::Lowdim { .. } => ScenarioId::Lowdim,
            Task::Katzman { .. } => ScenarioId::Katzman,
            Task::UfdRemark { .. } => ScenarioId::UfdRemark,
            Task::EtaKill { .. } => ScenarioId::EtaKill,
        }
    }

    pub fn run(&self, ctx: &RunContext) -> Result<ScenarioReport> {
        match self {
            Task::Threediag { p, e } => threediag_check(*p, e, ctx),
            Task::Roots { p, e, n_max } => roots_check(*p, e, *n_max, ctx),
            Task::Roots2 { p, e, n_max } => roots2_check(*p, e, *n_max, ctx),
            Task::Colon { p, n, m, variant } => with_field(
                *p,
                |f| colon_identity_check(f, *n, *m, *variant, ctx),
                |f| colon_identity_check(f, *n, *m, *variant, ctx),
            ),
            Task::Decomposition { p, n } => {
                with_field(*p, |f| decomposition_check(f, *n, ctx), |f| decomposition_check(f, *n, ctx))
            }
            Task::Genfrob { p, n } => with_field(*p, |f| f.genfrob(*n, ctx), |f| f.genfrob(*n, ctx)),
            Task::Multigraded { p, n, shift_max } => with_field(
                *p,
                |f| multigraded_check(f, n, *shift_max, ctx),
                |f| multigraded_check(f, n, *shift_max, ctx),
            ),
            Task::Presentation { p, d, a, n_max } => with_field(
                *p,
                |f| presentation_check(f, *d, *a, *n_max, ctx),
                |f| presentation_check(f, *d, *a, *n_max, ctx),
            ),
            Task::Minprimes { p, n_max } => minprimes_check(*p, *n_max, ctx),
            Task::Freg { p, mode } => freg_certificate(*p, *mode, ctx),
            Task::Assmax { p, e } => assmax_check(*p, *e, ctx),
            Task::Lowdim { p, e_max } => lowdim_factor_growth(*p, *e_max, ctx),
            Task::Katzman { p, e_max } => katzman_legacy_check(*p, *e_max, ctx),
            Task::UfdRemark { p } => ufd_remark_report(*p, ctx),
            Task::EtaKill { p, e } => eta_kill_check(*p, *e, ctx),
        }
    }
}

/// Runs every task on the worker pool. With a global budget, each task's
/// per-computation budget is capped at an equal share of it, so the split
/// does not depend on scheduling. Reports come back sorted by key; the
/// first error (in task order) is returned instead.
pub fn run_tasks(tasks: &[Task], ctx: &RunContext, global_budget: Option<u64>) -> Result<Vec<ScenarioReport>> {
    let mut ctx = ctx.clone();
    if let Some(g) = global_budget {
        if tasks.is_empty() {
            return Ok(Vec::new());
        }
        ctx.budget = ctx.budget.min((g / tasks.len() as u64).max(1));
    }
    let results: Vec<Result<ScenarioReport>> = tasks.par_iter().map(|t| t.run(&ctx)).collect();
    let mut reports = results.into_iter().collect::<Result<Vec<_>>>()?;
    reports.sort_by_key(|r| r.key());
    Ok(reports)
}

/// The desk-scale suite: every scenario at the sizes used for acceptance,
/// except the slowest eight-variable certificate.
pub fn suite_tasks() -> Vec<Task> {
    let mut t = Vec::new();
    for p in [2, 3, 5, 7] {
        t.push(Task::Threediag { p, e: vec![1, 2, 3] });
    }
    for p in [3, 5, 7] {
        t.push(Task::Roots { p, e: vec![1, 2], n_max: 20 });
    }
    t.push(Task::Roots { p: 2, e: vec![2, 3, 4], n_max: 20 });
    t.push(Task::Roots { p: 3, e: vec![3], n_max: 20 });
    for (p, e) in [(3, vec![1, 2, 3]), (5, vec![1, 2])] {
        t.push(Task::Roots2 { p, e, n_max: 19 });
    }
    for p in [0, 5] {
        for n in 2..=6 {
            for m in 1..=2 {
                t.push(Task::Colon {
                    p,
                    n,
                    m,
                    variant: ColonVariant::Homogeneous,
                });
            }
        }
    }
    for n in 2..=6 {
        t.push(Task::Colon {
            p: 0,
            n,
            m: 0,
            variant: ColonVariant::Inhomogeneous,
        });
    }
    for n in 2..=5 {
        t.push(Task::Decomposition { p: 5, n });
    }
    for n in 2..=3 {
        t.push(Task::Decomposition { p: 0, n });
    }
    for n in 2..=5 {
        t.push(Task::Genfrob { p: 5, n });
    }
    t.push(Task::Multigraded {
        p: 5,
        n: (2..=6).collect(),
        shift_max: 4,
    });
    for p in [0, 5] {
        for (d, a) in [(2, 0), (2, 1), (4, 0)] {
            t.push(Task::Presentation { p, d, a, n_max: 12 });
        }
    }
    for p in [2, 3, 5] {
        t.push(Task::Minprimes { p, n_max: 8 });
    }
    for p in [5, 7] {
        t.push(Task::Freg { p, mode: FregMode::Reduced6var });
        t.push(Task::Freg { p, mode: FregMode::BinomialPath });
    }
    t.push(Task::Freg {
        p: 2,
        mode: FregMode::Full8var { q: None },
    });
    for (p, e) in [(2, 1), (2, 2), (3, 1), (5, 1)] {
        t.push(Task::Assmax { p, e });
    }
    t.push(Task::Lowdim { p: 3, e_max: 3 });
    t.push(Task::Lowdim { p: 5, e_max: 2 });
    for p in [2, 3] {
        t.push(Task::Katzman { p, e_max: 4 });
    }
    for p in [3, 5, 7, 11, 13] {
        t.push(Task::UfdRemark { p });
    }
    for (p, e) in [(2, 1), (3, 1), (2, 2)] {
        t.push(Task::EtaKill { p, e });
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenarios::report::Status;

    #[test]
    fn ids_round_trip() {
        for id in ScenarioId::ALL {
            assert_eq!(id.name().parse::<ScenarioId>().unwrap(), id);
        }
        assert!("nope".parse::<ScenarioId>().is_err());
    }

    #[test]
    fn expansion_rules() {
        let params = TaskParams {
            n: vec![2, 3],
            m: vec![1, 2],
            ..TaskParams::default()
        };
        assert_eq!(expand(ScenarioId::Colon, &[5], &params).unwrap().len(), 4);
        assert!(expand(ScenarioId::Freg, &[0], &params).is_err());
        let freg = expand(ScenarioId::Freg, &[3, 5], &params).unwrap();
        assert_eq!(freg.len(), 4);
        assert!(expand(ScenarioId::Roots, &[], &params).is_err());
    }

    #[test]
    fn ordered_and_budgeted_runs() {
        let tasks = vec![
            Task::UfdRemark { p: 7 },
            Task::Colon {
                p: 5,
                n: 3,
                m: 1,
                variant: ColonVariant::Homogeneous,
            },
            Task::UfdRemark { p: 5 },
        ];
        let ctx = RunContext::default();
        let reports = run_tasks(&tasks, &ctx, None).unwrap();
        let names: Vec<_> = reports.iter().map(|r| r.scenario.as_str()).collect();
        assert_eq!(names, ["colon", "ufd-remark", "ufd-remark"]);
        assert_eq!(reports[1].params["p"], 5);
        assert!(reports.iter().all(|r| r.status == Status::Verified));
        let starved = run_tasks(&tasks, &ctx, Some(3)).unwrap();
        assert_eq!(starved[0].stats.budget, 1);
        assert_eq!(starved[0].status, Status::ResourceExhausted);
    }
}
