#![no_main]
use lcprimes::detfam::Family;
use lcprimes::scenarios::{ColonVariant, FregMode, ScenarioId, Status};
use lcprimes_cli::{parse_characteristics, parse_range};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(v) = parse_range(s) {
        assert!(!v.is_empty() && v.windows(2).all(|w| w[0] < w[1]));
    }
    let _ = parse_characteristics(s);
    let _ = s.parse::<ScenarioId>();
    let _ = s.parse::<Family>();
    let _ = s.parse::<FregMode>();
    let _ = s.parse::<ColonVariant>();
    let _ = s.parse::<Status>();
});
