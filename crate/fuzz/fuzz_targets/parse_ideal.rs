#![no_main]
use lcprimes::arith::PrimeField;
use lcprimes::mpoly::{format_ideal, parse_ideal};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let field = PrimeField::new(5).unwrap();
    if let Ok(ideal) = parse_ideal(&field, s) {
        let again = parse_ideal(&field, &format_ideal(&ideal)).expect("printed form parses");
        assert_eq!(again.gens(), ideal.gens());
    }
});
