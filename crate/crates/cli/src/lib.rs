//! Command-line front end: determinant tables, factor growth tables, and
//! scenario verification with JSON reports.
//!
//! Exit codes: 0 all verified, 2 something refuted, 3 inconclusive or out
//! of budget, 1 usage or input error.

mod range;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lcprimes::arith::{Field, PrimeField, RationalField};
use lcprimes::detfam::{
    build_matrix, closed_form_check, det_direct_capped, det_family, family_unipoly, gf_truncation_check, Family,
    DIRECT_CAP_MULTIVARIATE, DIRECT_CAP_UNIVARIATE,
};
use lcprimes::mpoly::{TermOrder, DEFAULT_STEP_BUDGET};
use lcprimes::scenarios::{
    expand, parse_reports, run_tasks, suite_tasks, Aggregate, ColonVariant, FregMode, RunContext, ScenarioId,
    ScenarioReport, Status, TaskParams,
};
use lcprimes::unipoly::{
    cumulative_factor_set, Factorization, Factorizer, FiniteFieldFactorizer, SmallRationalFactorizer, DEFAULT_SEED,
};

pub use range::{parse_characteristics, parse_range, parse_range_u32, MAX_RANGE_LEN};

/// Largest family index accepted by `factors`.
pub const MAX_FACTOR_INDEX: u64 = 1 << 16;

#[derive(Parser, Debug)]
#[command(name = "lcprimes", version, about = "Exact checks on multidiagonal determinant families and the ideals built from them")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Family determinants, cross-checked against direct elimination and
    /// the generating function.
    Dets(DetsArgs),
    /// Factorizations of family members and the cumulative count of
    /// distinct irreducible factors.
    Factors(FactorsArgs),
    /// Run one scenario (or `all`, the fixed suite) and emit reports.
    Verify(VerifyArgs),
    /// Merge report files and directories into one aggregate.
    Report(ReportArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Args, Debug)]
struct Output {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write here instead of standard output. For `verify`, an existing
    /// directory receives one file per report.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DetsArgs {
    #[arg(long, default_value = "P", value_parser = parse_family)]
    family: Family,
    #[arg(long, default_value = "0..10")]
    n: String,
    /// Characteristic; 0 is ℚ.
    #[arg(long, default_value_t = 0)]
    p: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct FactorsArgs {
    #[arg(long, default_value = "P", value_parser = parse_family)]
    family: Family,
    /// Characteristic; 0 is ℚ (needs --n).
    #[arg(long)]
    p: u64,
    /// Frobenius exponents; row e factors the member of index p^e − 2.
    #[arg(long, default_value = "1..3")]
    e: String,
    /// Explicit indices, instead of --e.
    #[arg(long)]
    n: Option<String>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Scenario id, or `all` for the fixed suite.
    #[arg(value_parser = parse_scenario)]
    id: Target,
    /// Characteristics: values or inclusive spans (spans keep primes only);
    /// 0 is ℚ.
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    e: Option<String>,
    #[arg(long)]
    n: Option<String>,
    /// Frobenius power for the eight-variable certificate.
    #[arg(long)]
    q: Option<u64>,
    /// Exponent of s in the homogeneous colon identity.
    #[arg(long)]
    m: Option<String>,
    #[arg(long, value_parser = parse_variant)]
    variant: Option<ColonVariant>,
    #[arg(long, value_parser = parse_mode)]
    mode: Option<FregMode>,
    /// Band width of the presentation matrices.
    #[arg(long)]
    d: Option<usize>,
    /// Offset of the presentation matrices.
    #[arg(long)]
    a: Option<u32>,
    #[arg(long)]
    shift_max: Option<u32>,
    #[arg(long, default_value = "grevlex", value_parser = parse_order)]
    order: TermOrder,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Bound for searches of annihilating powers.
    #[arg(long)]
    kbound: Option<u32>,
    /// Step budget per Gröbner computation.
    #[arg(long, default_value_t = DEFAULT_STEP_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    /// Total budget shared evenly by all tasks of the run.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    global_budget: Option<u64>,
    /// Record wall-clock durations (makes output run-dependent).
    #[arg(long)]
    timing: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct ReportArgs {
    /// Report files or directories of them.
    #[arg(required = true)]
    paths: Vec<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, Debug)]
enum Target {
    All,
    One(ScenarioId),
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: lcprimes::Error| e.to_string())
}

fn parse_scenario(s: &str) -> Result<Target, String> {
    if s == "all" {
        return Ok(Target::All);
    }
    s.parse().map(Target::One).map_err(|_| {
        let ids: Vec<&str> = ScenarioId::ALL.iter().map(|i| i.name()).collect();
        format!("unknown scenario {s:?}; expected all or one of {}", ids.join(", "))
    })
}

fn parse_variant(s: &str) -> Result<ColonVariant, String> {
    s.parse().map_err(|e: lcprimes::Error| e.to_string())
}

fn parse_mode(s: &str) -> Result<FregMode, String> {
    s.parse().map_err(|e: lcprimes::Error| e.to_string())
}

fn parse_order(s: &str) -> Result<TermOrder, String> {
    match s.parse() {
        Ok(TermOrder::Weighted(_)) | Err(_) => Err(format!("expected grevlex, lex or block:<split>, got {s:?}")),
        Ok(o) => Ok(o),
    }
}

/// Characteristic used by `verify <id>` when `--p` is absent.
pub fn default_characteristic(id: ScenarioId) -> u64 {
    match id {
        ScenarioId::EtaKill => 2,
        ScenarioId::Threediag
        | ScenarioId::Roots
        | ScenarioId::Roots2
        | ScenarioId::Minprimes
        | ScenarioId::Lowdim
        | ScenarioId::Katzman => 3,
        ScenarioId::UfdRemark => 7,
        _ => 5,
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    1
                }
            };
        }
    };
    let result = match cli.command {
        Command::Dets(a) => dets(&a, out),
        Command::Factors(a) => factors(&a, out),
        Command::Verify(a) => verify(&a, out, err),
        Command::Report(a) => report(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

type CliResult<T> = Result<T, String>;

fn emit(output: &Output, out: &mut dyn Write, text: &str) -> CliResult<()> {
    match &output.out {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    }
}

fn field_label(p: u64) -> String {
    if p == 0 {
        "QQ".into()
    } else {
        format!("GF({p})")
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

// ---- dets ----

fn dets(args: &DetsArgs, out: &mut dyn Write) -> CliResult<i32> {
    let ns = parse_range(&args.n)?;
    let ns: Vec<usize> = ns
        .into_iter()
        .map(|n| usize::try_from(n).ok().filter(|&n| n <= MAX_FACTOR_INDEX as usize))
        .collect::<Option<_>>()
        .ok_or("index too large")?;
    let (body, status) = if args.p == 0 {
        dets_over(&RationalField, args, &ns)?
    } else {
        dets_over(&PrimeField::new(args.p).map_err(|e| e.to_string())?, args, &ns)?
    };
    emit(&args.output, out, &body)?;
    Ok(status.exit_code())
}

fn dets_over<F: Field>(field: &F, args: &DetsArgs, ns: &[usize]) -> CliResult<(String, Status)> {
    let family = args.family;
    let spec = family.spec(field);
    let cap = if family.is_univariate() {
        DIRECT_CAP_UNIVARIATE
    } else {
        DIRECT_CAP_MULTIVARIATE
    };
    let mut status = Status::Verified;
    let mut rows = Vec::new();
    for &n in ns {
        let det = det_family(family, field, n);
        let direct = if n > cap {
            "skipped"
        } else {
            let d = det_direct_capped(&build_matrix(&spec, n), cap).map_err(|e| e.to_string())?;
            if d == det {
                "agree"
            } else {
                status = Status::Refuted;
                "differs"
            }
        };
        if family.is_univariate() {
            let dense = family_unipoly(family, field, n).map_err(|e| e.to_string())?;
            if dense.to_string() != det.to_string() {
                status = Status::Refuted;
            }
        }
        rows.push((n, det.to_string(), direct));
    }
    let top = *ns.last().expect("nonempty range");
    let mut checks = vec![("gf_truncation".to_string(), gf_truncation_check(family, field, top))];
    if family == Family::Generic {
        checks.push(("closed_form".into(), ns.iter().all(|&n| closed_form_check(n))));
    }
    if checks.iter().any(|(_, ok)| !ok) {
        status = Status::Refuted;
    }
    let text = match args.output.format.unwrap_or(Format::Tsv) {
        Format::Tsv => {
            let mut s = String::from("n\tdet\tdirect\n");
            for (n, det, direct) in &rows {
                s.push_str(&format!("{n}\t{det}\t{direct}\n"));
            }
            for (name, ok) in &checks {
                s.push_str(&format!("# {name}\t{}\n", if *ok { "verified" } else { "refuted" }));
            }
            s
        }
        Format::Json => pretty(&json!({
            "family": family.to_string(),
            "field": field_label(args.p),
            "rows": rows.iter().map(|(n, det, direct)| json!({"n": n, "det": det, "direct": direct})).collect::<Vec<_>>(),
            "checks": checks.iter().map(|(k, ok)| (k.clone(), Value::from(if *ok { "verified" } else { "refuted" }))).collect::<serde_json::Map<_, _>>(),
            "status": status.to_string(),
        })),
    };
    Ok((text, status))
}

// ---- factors ----

fn factors(args: &FactorsArgs, out: &mut dyn Write) -> CliResult<i32> {
    if !args.family.is_univariate() {
        return Err(format!("family {} is not univariate", args.family));
    }
    let rows: Vec<(Option<u64>, usize)> = match &args.n {
        Some(n) => parse_range(n)?.into_iter().map(|i| (None, i as usize)).collect(),
        None => {
            if args.p == 0 {
                return Err("over QQ give the indices with --n".into());
            }
            parse_range(&args.e)?
                .into_iter()
                .map(|e| {
                    u32::try_from(e)
                        .ok()
                        .and_then(|e| args.p.checked_pow(e))
                        .filter(|&q| q >= 2)
                        .map(|q| (Some(e), (q - 2) as usize))
                        .ok_or_else(|| format!("p^e out of range for e = {e}"))
                })
                .collect::<CliResult<_>>()?
        }
    };
    if let Some(&(_, i)) = rows.iter().find(|(_, i)| *i as u64 > MAX_FACTOR_INDEX) {
        return Err(format!("index {i} exceeds {MAX_FACTOR_INDEX}"));
    }
    let text = if args.p == 0 {
        factor_table(&RationalField, &SmallRationalFactorizer, args, &rows)?
    } else {
        let field = PrimeField::new(args.p).map_err(|e| e.to_string())?;
        factor_table(&field, &FiniteFieldFactorizer { seed: args.seed }, args, &rows)?
    };
    emit(&args.output, out, &text)?;
    Ok(0)
}

fn factor_list<F: Field>(f: &Factorization<F>) -> Vec<(String, u32)> {
    f.factors.iter().map(|(g, e)| (g.to_string(), *e)).collect()
}

fn factor_table<F: Field, Z: Factorizer<F>>(
    field: &F,
    factorizer: &Z,
    args: &FactorsArgs,
    rows: &[(Option<u64>, usize)],
) -> CliResult<String> {
    let indices: Vec<usize> = rows.iter().map(|r| r.1).collect();
    let table = cumulative_factor_set(|n| family_unipoly(args.family, field, n), &indices, factorizer)
        .map_err(|e| e.to_string())?;
    let increasing = table.strictly_increasing();
    Ok(match args.output.format.unwrap_or(Format::Tsv) {
        Format::Tsv => {
            let mut s = String::from("e\tindex\tfactors\tnew\tcumulative\n");
            for ((e, _), row) in rows.iter().zip(&table.rows) {
                let fs: Vec<String> = factor_list(&row.factorization)
                    .into_iter()
                    .map(|(g, m)| if m == 1 { format!("({g})") } else { format!("({g})^{m}") })
                    .collect();
                let e = e.map_or("-".to_string(), |e| e.to_string());
                s.push_str(&format!("{e}\t{}\t{}\t{}\t{}\n", row.index, fs.join(" "), row.new, row.cumulative));
            }
            s.push_str(&format!("# strictly_increasing\t{increasing}\n"));
            s
        }
        Format::Json => pretty(&json!({
            "family": args.family.to_string(),
            "field": field_label(args.p),
            "rows": rows.iter().zip(&table.rows).map(|((e, _), row)| json!({
                "e": e,
                "index": row.index,
                "factors": factor_list(&row.factorization).into_iter().map(|(g, m)| json!({"factor": g, "multiplicity": m})).collect::<Vec<_>>(),
                "new": row.new,
                "cumulative": row.cumulative,
            })).collect::<Vec<_>>(),
            "strictly_increasing": increasing,
        })),
    })
}

// ---- verify and report ----

fn overall(reports: &[ScenarioReport]) -> Status {
    reports
        .iter()
        .map(|r| r.status)
        .reduce(Status::worst)
        .unwrap_or(Status::Inconclusive)
}

fn report_tsv(reports: &[ScenarioReport]) -> String {
    let mut s = String::from("scenario\tparams\tstatus\tcounterexample\n");
    for r in reports {
        let params = serde_json::to_string(&r.params).expect("params serialize");
        let cex = r.counterexample().and_then(Value::as_str).unwrap_or("-");
        s.push_str(&format!("{}\t{params}\t{}\t{cex}\n", r.scenario, r.status));
    }
    s
}

/// File name for a report inside a run directory, derived from its key.
pub fn report_file_name(r: &ScenarioReport) -> String {
    let mut name = r.scenario.clone();
    for (k, v) in &r.params {
        let v = match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        name.push_str(&format!("_{k}-{v}"));
    }
    let name: String = name
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.') { c } else { '_' })
        .collect();
    format!("{name}.json")
}

fn verify(args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    let ctx = RunContext {
        budget: args.budget,
        seed: args.seed,
        order: args.order.clone(),
        k_bound: args.kbound,
        timing: args.timing,
    };
    let tasks = match args.id {
        Target::All => suite_tasks(),
        Target::One(id) => {
            let ps = match &args.p {
                Some(p) => parse_characteristics(p)?,
                None => vec![default_characteristic(id)],
            };
            let mut params = TaskParams::default();
            if let Some(e) = &args.e {
                params.e = parse_range_u32(e)?;
            }
            if let Some(n) = &args.n {
                params.n = parse_range_u32(n)?;
            }
            if let Some(m) = &args.m {
                params.m = parse_range_u32(m)?;
            }
            params.q = args.q;
            params.variant = args.variant.unwrap_or(params.variant);
            params.mode = args.mode;
            params.d = args.d.unwrap_or(params.d);
            params.a = args.a.unwrap_or(params.a);
            params.shift_max = args.shift_max.unwrap_or(params.shift_max);
            expand(id, &ps, &params).map_err(|e| e.to_string())?
        }
    };
    let reports = run_tasks(&tasks, &ctx, args.global_budget).map_err(|e| e.to_string())?;
    let status = overall(&reports);
    match &args.output.out {
        Some(dir) if dir.is_dir() => {
            for r in &reports {
                let path = dir.join(report_file_name(r));
                fs::write(&path, r.to_json() + "\n").map_err(|e| format!("{}: {e}", path.display()))?;
            }
            let _ = writeln!(err, "wrote {} reports to {}", reports.len(), dir.display());
        }
        _ => {
            let text = match args.output.format.unwrap_or(Format::Json) {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&reports).expect("reports serialize");
                    s.push('\n');
                    s
                }
                Format::Tsv => report_tsv(&reports),
            };
            emit(&args.output, out, &text)?;
        }
    }
    Ok(status.exit_code())
}

fn report_files(path: &Path) -> CliResult<Vec<PathBuf>> {
    if !path.is_dir() {
        return Ok(vec![path.to_path_buf()]);
    }
    let mut files: Vec<PathBuf> = fs::read_dir(path)
        .map_err(|e| format!("{}: {e}", path.display()))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(files)
}

fn report(args: &ReportArgs, out: &mut dyn Write) -> CliResult<i32> {
    let mut reports = Vec::new();
    for path in &args.paths {
        for file in report_files(path)? {
            let text = fs::read_to_string(&file).map_err(|e| format!("{}: {e}", file.display()))?;
            reports.extend(parse_reports(&text).map_err(|e| format!("{}: {e}", file.display()))?);
        }
    }
    let agg = Aggregate::from_reports(reports);
    let text = match args.output.format.unwrap_or(Format::Json) {
        Format::Json => agg.to_json() + "\n",
        Format::Tsv => report_tsv(&agg.reports),
    };
    emit(&args.output, out, &text)?;
    Ok(agg.status.exit_code())
}
