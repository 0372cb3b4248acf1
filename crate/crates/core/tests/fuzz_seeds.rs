use std::path::{Path, PathBuf};

use lattice_opoly::classify::classify;
use lattice_opoly::{GaussianRational, PearsonPair, Poly};

fn seeds(target: &str) -> Vec<(PathBuf, String)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut entries: Vec<_> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| entry.unwrap().path())
        .collect();
    entries.sort();
    assert!(!entries.is_empty(), "no seeds in {}", dir.display());
    entries
        .into_iter()
        .filter_map(|path| {
            let bytes = std::fs::read(&path).unwrap();
            String::from_utf8(bytes).ok().map(|text| (path, text))
        })
        .collect()
}

#[test]
fn gaussian_rational_seeds_round_trip() {
    let mut parsed = 0;
    for (path, text) in seeds("gaussian_rational_parse") {
        if let Ok(value) = GaussianRational::parse(&text) {
            assert_eq!(GaussianRational::parse(&value.to_string()).unwrap(), value, "{}", path.display());
            parsed += 1;
        }
    }
    assert!(parsed > 0);
}

#[test]
fn poly_seeds_round_trip() {
    let mut parsed = 0;
    for (path, text) in seeds("poly_json") {
        if let Ok(poly) = Poly::from_json(&text) {
            let again = Poly::from_json(&serde_json::to_string(&poly).unwrap()).unwrap();
            assert_eq!(again, poly, "{}", path.display());
            parsed += 1;
        }
    }
    assert!(parsed > 0);
}

#[test]
fn pair_seeds_round_trip_and_classify() {
    let mut parsed = 0;
    for (path, text) in seeds("pair_json") {
        if let Ok(pair) = PearsonPair::from_json(&text) {
            assert_eq!(PearsonPair::from_json(&pair.to_json()).unwrap(), pair, "{}", path.display());
            let _ = classify(&pair);
            parsed += 1;
        }
    }
    assert!(parsed > 0);
}
