#![no_main]

use lattice_opoly::classify::classify;
use lattice_opoly::PearsonPair;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if data.len() > 512 {
        return;
    }
    if let Ok(pair) = PearsonPair::from_json(data) {
        assert_eq!(PearsonPair::from_json(&pair.to_json()).expect("serialized pair parses"), pair);
        let _ = classify(&pair);
    }
});
