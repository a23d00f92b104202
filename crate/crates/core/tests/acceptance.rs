//! Desk-scale acceptance run: one line per criterion, then a single
//! assertion so every line is printed even when one fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use lcprimes::arith::{is_prime, Field, PrimeField, RationalField};
use lcprimes::detfam::{
    build_matrix, closed_form_check, det_direct, det_family, family_unipoly, frobenius_det_identity,
    gf_truncation_check, katzman_closed_form_check, Family,
};
use lcprimes::scenarios::*;
use lcprimes::unipoly::{cumulative_factor_set, FiniteFieldFactorizer, SmallRationalFactorizer, UniPoly};

fn verified(r: lcprimes::Result<ScenarioReport>) {
    let r = r.expect("scenario runs");
    assert_eq!(r.status, Status::Verified, "{}", r.to_json());
}

fn ctx() -> RunContext {
    RunContext::default()
}

fn c1() {
    let q = RationalField;
    for family in [Family::P, Family::F, Family::Katzman, Family::Q, Family::Generic] {
        let cap = if family.is_univariate() { 40 } else { 12 };
        let spec = family.spec(&q);
        for n in 0..=cap {
            let direct = det_direct(&build_matrix(&spec, n)).unwrap();
            assert_eq!(det_family(family, &q, n), direct, "{family} n = {n}");
        }
    }
    assert!((0..=100).all(closed_form_check));
    for family in [Family::P, Family::F, Family::Katzman] {
        assert!(gf_truncation_check(family, &q, 200), "{family}");
    }
}

fn c2() {
    for p in [2, 3, 5, 7] {
        for e in 1..=3 {
            assert!(frobenius_det_identity(p, e, Family::Generic).unwrap(), "generic p = {p}, e = {e}");
        }
    }
    for p in [2, 3, 5, 7, 11] {
        for e in 1..=4 {
            assert!(frobenius_det_identity(p, e, Family::Q).unwrap(), "Q p = {p}, e = {e}");
        }
    }
    verified(threediag_check(3, &[1, 2, 3], &ctx()));
}

fn c3() {
    for p in [3, 5, 7] {
        verified(roots_check(p, &[1], 20, &ctx()));
    }
    verified(roots_check(3, &[2, 3], 20, &ctx()));
    verified(roots_check(5, &[2], 20, &ctx()));
    verified(roots_check(7, &[2], 20, &ctx()));
    verified(roots_check(2, &[2, 3, 4], 20, &ctx()));
    // P_n(2) = n + 1 by the recurrence on integers
    let q = RationalField;
    let (mut a, mut b) = (1i64, 2i64);
    for n in 1..=50usize {
        let pn = family_unipoly(Family::P, &q, n).unwrap();
        assert_eq!(pn.eval(&q.from_i64(2)), q.from_i64(b), "n = {n}");
        assert_eq!(b, n as i64 + 1);
        (a, b) = (b, 2 * b - a);
    }
}

fn growth(family: Family, p: u64, e_max: u32) -> Vec<usize> {
    let field = PrimeField::new(p).unwrap();
    let indices: Vec<usize> = (1..=e_max).map(|e| p.pow(e) as usize - 2).collect();
    let fz = FiniteFieldFactorizer { seed: ctx().seed };
    cumulative_factor_set(|n| family_unipoly(family, &field, n), &indices, &fz)
        .unwrap()
        .counts()
}

fn c4() {
    for (family, p, e_max) in [
        (Family::P, 2, 5),
        (Family::P, 3, 4),
        (Family::P, 5, 3),
        (Family::F, 3, 3),
        (Family::F, 5, 2),
    ] {
        let counts = growth(family, p, e_max);
        assert!(counts.windows(2).all(|w| w[0] < w[1]), "{family} over GF({p}): {counts:?}");
    }
    verified(lowdim_factor_growth(3, 3, &ctx()));
}

fn c5() {
    let f5 = PrimeField::new(5).unwrap();
    for n in 2..=6 {
        for m in 1..=2 {
            verified(colon_identity_check(&f5, n, m, ColonVariant::Homogeneous, &ctx()));
            verified(colon_identity_check(&RationalField, n, m, ColonVariant::Homogeneous, &ctx()));
        }
        verified(colon_identity_check(&RationalField, n, 0, ColonVariant::Inhomogeneous, &ctx()));
        verified(colon_identity_check(&f5, n, 0, ColonVariant::Inhomogeneous, &ctx()));
    }
    for n in 7..=8 {
        verified(colon_identity_check(&f5, n, 1, ColonVariant::Homogeneous, &ctx()));
        verified(colon_identity_check(&RationalField, n, 1, ColonVariant::Homogeneous, &ctx()));
    }
}

fn c6() {
    let f5 = PrimeField::new(5).unwrap();
    for n in 2..=5 {
        verified(decomposition_check(&f5, n, &ctx()));
    }
    for n in 2..=3 {
        verified(decomposition_check(&RationalField, n, &ctx()));
    }
}

fn c7() {
    let f5 = PrimeField::new(5).unwrap();
    for n in 2..=5 {
        verified(genfrob_check(&f5, n, &FiniteFieldFactorizer { seed: 1 }, &ctx()));
    }
    for n in 2..=4 {
        verified(genfrob_check(&RationalField, n, &SmallRationalFactorizer, &ctx()));
    }
}

fn c8() {
    let f5 = PrimeField::new(5).unwrap();
    for (d, a) in [(2, 0), (2, 1), (4, 0)] {
        verified(presentation_check(&f5, d, a, 12, &ctx()));
        verified(presentation_check(&RationalField, d, a, 12, &ctx()));
    }
}

fn c9() {
    for p in [5, 7] {
        verified(freg_certificate(p, FregMode::Reduced6var, &ctx()));
        let r = freg_certificate(p, FregMode::BinomialPath, &ctx()).unwrap();
        assert_eq!(r.status, Status::Verified);
        assert_eq!(r.witnesses["checks"]["central_binomial_unit"], "verified");
    }
    for (p, q) in [(2, 8), (3, 9)] {
        let r = freg_certificate(p, FregMode::Full8var { q: Some(q) }, &ctx()).unwrap();
        assert_eq!(r.status, Status::Verified, "{}", r.to_json());
        assert_eq!(r.stats.budget, 1_000_000);
    }
}

fn c10() {
    for (p, e) in [(2, 1), (2, 2), (3, 1), (5, 1)] {
        let r = assmax_check(p, e, &ctx()).unwrap();
        assert_eq!(r.status, Status::Verified, "{}", r.to_json());
        let checks = &r.witnesses["checks"];
        for name in ["contraction", "u_member", "v_member", "w_power_member"] {
            assert_eq!(checks[name], "verified", "p = {p}, e = {e}: {name}");
        }
    }
}

fn c11() {
    let f5 = PrimeField::new(5).unwrap();
    let ns: Vec<u32> = (2..=6).collect();
    verified(multigraded_check(&f5, &ns, 4, &ctx()));
    verified(multigraded_check(&RationalField, &ns, 4, &ctx()));
}

fn c12() {
    for (p, e) in [(2, 1), (3, 1), (2, 2)] {
        let r = eta_kill_check(p, e, &ctx()).unwrap();
        assert_eq!(r.status, Status::Verified, "{}", r.to_json());
        assert!(r.witnesses["s_power_k"].is_u64() && r.witnesses["t_power_k"].is_u64());
    }
    for p in [2, 3] {
        for e in 1..=4 {
            assert!(frobenius_det_identity(p, e, Family::Q).unwrap());
        }
    }
}

fn c13() {
    assert!((0..=40).all(katzman_closed_form_check));
    // independent: (t − 1)·det M_n against (−1)^n (t^(n+1) − 1) over ℚ
    let q = RationalField;
    let t_minus_1 = UniPoly::from_i64s(q, &[-1, 1]);
    for n in 0..=40 {
        let mut rhs = vec![0i64; n + 2];
        rhs[0] = -1;
        rhs[n + 1] = 1;
        if n % 2 == 1 {
            rhs.iter_mut().for_each(|c| *c = -*c);
        }
        let lhs = &family_unipoly(Family::Katzman, &q, n).unwrap() * &t_minus_1;
        assert_eq!(lhs, UniPoly::from_i64s(q, &rhs), "n = {n}");
    }
    for p in [2, 3] {
        verified(katzman_legacy_check(p, 4, &ctx()));
    }
}

fn c14() {
    for p in (3..100).filter(|&p| is_prime(p)) {
        assert!(ufd_remark_check(p).unwrap(), "p = {p}");
    }
}

fn c15() {
    let tasks = suite_tasks();
    let run = || -> Vec<String> {
        run_tasks(&tasks, &ctx(), None)
            .unwrap()
            .iter()
            .map(ScenarioReport::to_json)
            .collect()
    };
    let a = run();
    let b = run();
    assert_eq!(a.len(), tasks.len());
    assert!(a == b, "two runs of the suite differ");
    let shifted = RunContext { seed: 99, ..ctx() };
    let c: Vec<String> = run_tasks(&tasks, &shifted, None)
        .unwrap()
        .iter()
        .map(ScenarioReport::to_json)
        .collect();
    let d: Vec<String> = run_tasks(&tasks, &shifted, None)
        .unwrap()
        .iter()
        .map(ScenarioReport::to_json)
        .collect();
    assert!(c == d);
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn(), u64); 15] = [
        ("determinant oracles agree", c1, 10),
        ("Frobenius power identity for the three-diagonal determinant", c2, 30),
        ("root formulas and distinct root counts", c3, 60),
        ("growth of distinct irreducible factors", c4, 120),
        ("colon identities and membership", c5, 120),
        ("decomposition checks", c6, 120),
        ("Frobenius-power decomposition and contraction", c7, 120),
        ("presentation matrices", c8, 30),
        ("F-regularity certificates", c9, 600),
        ("associated maximal ideals", c10, 600),
        ("annihilators and multigraded shifts", c11, 300),
        ("Frobenius classes killed by s^q and t^q", c12, 300),
        ("Katzman closed form and growth", c13, 30),
        ("splitting criterion for odd p < 100", c14, 5),
        ("determinism of the suite", c15, 600),
    ];
    let mut failed = Vec::new();
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let ok = catch_unwind(AssertUnwindSafe(f)).is_ok();
        let took = start.elapsed();
        let in_time = took <= Duration::from_secs(*limit);
        let verdict = if ok && in_time { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2}: {verdict}  {:>8.2}s (limit {limit}s)  {name}",
            i + 1,
            took.as_secs_f64()
        );
        if !(ok && in_time) {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
