#![no_main]
use lcprimes::arith::{Integer, RationalField};
use lcprimes::mpoly::{PolyRing, TermOrder};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let _ = s.parse::<TermOrder>();
    let _ = s.parse::<Integer>();
    let ring = PolyRing::new(RationalField, &["s", "t", "x", "y"], TermOrder::GrevLex).unwrap();
    if let Ok(f) = ring.parse(s) {
        assert_eq!(ring.parse(&f.to_string()).unwrap(), f);
    }
});
