#![no_main]

use lattice_opoly::GaussianRational;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(value) = GaussianRational::parse(data) {
        let text = value.to_string();
        assert_eq!(GaussianRational::parse(&text).expect("display output parses"), value);
    }
});
