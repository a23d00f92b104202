use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn lcprimes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lcprimes"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn check_golden(args: &[&str], name: &str) {
    let out = lcprimes(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden(name), "{args:?}");
}

#[test]
fn golden_tables() {
    check_golden(&["dets", "--family", "F", "--n", "0..3"], "dets_f.tsv");
    check_golden(&["dets", "--family", "generic", "--n", "0..4", "--format", "json"], "dets_generic.json");
    check_golden(&["factors", "--family", "P", "--p", "3", "--e", "1..3"], "factors_p3.tsv");
    check_golden(&["factors", "--family", "F", "--p", "5", "--e", "1..2", "--format", "json"], "factors_f5.json");
}

#[test]
fn golden_reports() {
    check_golden(&["verify", "colon", "--n", "2..3", "--p", "5"], "verify_colon.json");
    check_golden(&["verify", "ufd-remark", "--p", "3..13", "--format", "tsv"], "verify_ufd.tsv");
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/verify_colon.json");
    check_golden(&["report", dir.to_str().unwrap()], "report_colon.json");
}

#[test]
fn documented_examples_exit_zero() {
    for args in [
        &["verify", "threediag", "--p", "3", "--e", "1..3"][..],
        &["verify", "colon", "--n", "2..6", "--p", "5"],
        &["dets", "--family", "F", "--n", "0..3"],
    ] {
        let out = lcprimes(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
    }
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["verify", "genfrob", "--n", "2..4", "--p", "5", "--seed", "17"];
    let a = lcprimes(&args);
    let b = lcprimes(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(lcprimes(&["verify", "colon", "--n", "4", "--budget", "1"]).status.code(), Some(3));
    assert_eq!(
        lcprimes(&["verify", "eta-kill", "--p", "3", "--e", "1", "--kbound", "0"]).status.code(),
        Some(3)
    );
    assert_eq!(lcprimes(&["verify", "unknown-id"]).status.code(), Some(1));
    assert_eq!(lcprimes(&["verify", "colon", "--n", "3..x"]).status.code(), Some(1));
    assert_eq!(lcprimes(&["verify", "lowdim", "--p", "2"]).status.code(), Some(1));
    assert_eq!(lcprimes(&["verify", "freg", "--p", "3", "--mode", "reduced6var"]).status.code(), Some(1));
}

fn run_dir(tmp: &Path, name: &str, args: &[&str]) -> PathBuf {
    let dir = tmp.join(name);
    fs::create_dir(&dir).unwrap();
    let mut all = args.to_vec();
    all.extend(["--out", dir.to_str().unwrap()]);
    let out = lcprimes(&all);
    assert!(matches!(out.status.code(), Some(0 | 3)), "{}", String::from_utf8_lossy(&out.stderr));
    dir
}

fn aggregate(paths: &[&Path]) -> (Option<i32>, String) {
    let mut args = vec!["report"];
    args.extend(paths.iter().map(|p| p.to_str().unwrap()));
    let out = lcprimes(&args);
    (out.status.code(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn report_merging_is_order_independent() {
    let tmp = tempfile::tempdir().unwrap();
    let a = run_dir(tmp.path(), "a", &["verify", "colon", "--n", "2..3", "--p", "5"]);
    let b = run_dir(tmp.path(), "b", &["verify", "ufd-remark", "--p", "3..7"]);
    let c = run_dir(tmp.path(), "c", &["verify", "colon", "--n", "3..4", "--p", "5", "--budget", "1"]);
    assert_eq!(fs::read_dir(&a).unwrap().count(), 2);

    let (code, abc) = aggregate(&[&a, &b, &c]);
    assert_eq!(code, Some(3));
    assert_eq!(aggregate(&[&c, &a, &b]).1, abc);

    // (a ∪ b) ∪ c against a ∪ (b ∪ c), through saved aggregates
    let ab = tmp.path().join("ab.json");
    let bc = tmp.path().join("bc.json");
    fs::write(&ab, aggregate(&[&a, &b]).1).unwrap();
    fs::write(&bc, aggregate(&[&b, &c]).1).unwrap();
    assert_eq!(aggregate(&[&ab, &c]).1, abc);
    assert_eq!(aggregate(&[&a, &bc]).1, abc);
}

#[test]
fn refuted_reports_exit_two_with_counterexample() {
    let tmp = tempfile::tempdir().unwrap();
    let out = lcprimes(&["verify", "ufd-remark", "--p", "5"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut reports: serde_json::Value = serde_json::from_str(&text).unwrap();
    reports[0]["status"] = "refuted".into();
    reports[0]["witnesses"]["counterexample"] = "criterion: forced".into();
    let path = tmp.path().join("forced.json");
    fs::write(&path, serde_json::to_string(&reports).unwrap()).unwrap();
    let out = lcprimes(&["report", path.to_str().unwrap(), "--format", "tsv"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stdout).unwrap().contains("criterion: forced"));
    fs::write(&path, "{not json").unwrap();
    assert_eq!(lcprimes(&["report", path.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn out_file_receives_output() {
    let tmp = tempfile::tempdir().unwrap();
    let path = tmp.path().join("f.tsv");
    let out = lcprimes(&["dets", "--family", "F", "--n", "0..3", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(fs::read_to_string(path).unwrap(), golden("dets_f.tsv"));
}
