//! Replays the fuzz corpus seeds through the same round-trip properties the
//! fuzz targets assert.

use std::fs;
use std::path::PathBuf;

use lcprimes::arith::{PrimeField, RationalField};
use lcprimes::mpoly::{format_ideal, parse_ideal, PolyRing, TermOrder};
use lcprimes::scenarios::{parse_reports, Aggregate};
use lcprimes::unipoly::parse_unipoly;

fn seeds(target: &str) -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut paths: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .collect();
    paths.sort();
    assert!(!paths.is_empty(), "no seeds for {target}");
    paths.iter().map(|p| fs::read_to_string(p).unwrap()).collect()
}

#[test]
fn unipoly_seeds_round_trip() {
    for s in seeds("parse_unipoly") {
        let f = parse_unipoly(&RationalField, "t", &s).unwrap();
        assert_eq!(parse_unipoly(&RationalField, "t", &f.to_string()).unwrap(), f);
        let f7 = PrimeField::new(7).unwrap();
        let g = parse_unipoly(&f7, "t", &s).unwrap();
        assert_eq!(parse_unipoly(&f7, "t", &g.to_string()).unwrap(), g);
    }
}

#[test]
fn mpoly_seeds_round_trip() {
    let ring = PolyRing::new(RationalField, &["s", "t", "x", "y"], TermOrder::GrevLex).unwrap();
    let mut parsed = 0;
    for s in seeds("parse_mpoly") {
        if let Ok(f) = ring.parse(&s) {
            assert_eq!(ring.parse(&f.to_string()).unwrap(), f);
            parsed += 1;
        }
    }
    assert!(parsed >= 3);
}

#[test]
fn ideal_seeds_round_trip() {
    let field = PrimeField::new(5).unwrap();
    for s in seeds("parse_ideal") {
        let ideal = parse_ideal(&field, &s).unwrap();
        assert_eq!(parse_ideal(&field, &format_ideal(&ideal)).unwrap().gens(), ideal.gens());
    }
}

#[test]
fn report_seeds_round_trip() {
    for s in seeds("parse_report") {
        let agg = Aggregate::from_reports(parse_reports(&s).unwrap());
        assert_eq!(Aggregate::from_reports(parse_reports(&agg.to_json()).unwrap()), agg);
    }
}
