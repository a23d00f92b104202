#![no_main]
use lcprimes::arith::{PrimeField, RationalField};
use lcprimes::unipoly::parse_unipoly;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(f) = parse_unipoly(&RationalField, "t", s) {
        let again = parse_unipoly(&RationalField, "t", &f.to_string()).expect("printed form parses");
        assert_eq!(again, f);
    }
    let f7 = PrimeField::new(7).unwrap();
    if let Ok(f) = parse_unipoly(&f7, "t", s) {
        assert_eq!(parse_unipoly(&f7, "t", &f.to_string()).unwrap(), f);
    }
});
