#![no_main]
use lcprimes::scenarios::{parse_reports, Aggregate};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(reports) = parse_reports(s) {
        let agg = Aggregate::from_reports(reports);
        let again = Aggregate::from_reports(parse_reports(&agg.to_json()).expect("aggregate parses"));
        assert_eq!(again, agg);
    }
});
