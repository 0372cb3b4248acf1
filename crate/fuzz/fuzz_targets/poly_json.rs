#![no_main]

use lattice_opoly::Poly;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(poly) = Poly::from_json(data) {
        let text = serde_json::to_string(&poly).expect("poly serializes");
        assert_eq!(Poly::from_json(&text).expect("serialized poly parses"), poly);
    }
});
