use lattice_opoly::moments::{hankel_minors, moments_at, pearson_residual_at};
use lattice_opoly::oracle::solve_pairing_system_at;
use lattice_opoly::recurrence::{recurrence_coeffs, StructureConstants};
use lattice_opoly::{GaussianRational, PearsonPair, Poly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::Outcome;

const SLOPES: [(i64, i64, i64); 5] = [(1, 1, 0), (2, 1, 0), (1, 2, 0), (2, 3, 0), (0, 1, 1)];

fn small_rational(rng: &mut ChaCha8Rng) -> GaussianRational {
    GaussianRational::from_ratio(rng.gen_range(-6..=6), rng.gen_range(1..=6))
}

/// Pairs with small rational coefficients whose moment recursion never stalls below `depth`.
fn random_pair(rng: &mut ChaCha8Rng, depth: usize) -> PearsonPair {
    loop {
        let phi = Poly::from_coeffs((0..3).map(|_| small_rational(rng)).collect());
        let psi = Poly::from_coeffs((0..2).map(|_| small_rational(rng)).collect());
        let (re, den, im) = SLOPES[rng.gen_range(0..SLOPES.len())];
        let slope =
            &GaussianRational::from_ratio(re, den) + &(&GaussianRational::from_int(im) * &GaussianRational::i());
        let Ok(pair) = PearsonPair::centered(phi, psi, slope) else { continue };
        let constants = StructureConstants::from_pair(&pair).expect("centered pair");
        if !pair.phi().is_zero() && (0..depth as i64).all(|n| !constants.d_n(n).is_zero()) {
            return pair;
        }
    }
}

const MOMENT_ORACLE: &str = "moment_oracle";
const HANKEL_ORACLE: &str = "hankel_oracle";
const PEARSON_RESIDUAL: &str = "pearson_residual";

#[derive(Default)]
struct Tally {
    failures: Vec<(String, &'static str)>,
    skipped: Vec<String>,
}

impl Tally {
    fn verdict(&self, check: &str) -> &'static str {
        if self.failures.iter().any(|(_, c)| *c == check) {
            "fail"
        } else {
            "pass"
        }
    }
}

fn check(label: &str, pair: &PearsonPair, count: usize, tally: &mut Tally) -> Result<(), String> {
    let depth = 2 * count;
    let ms = moments_at(pair, depth).map_err(|e| e.to_string())?;
    if let Some(index) = ms.stalled_at {
        tally.skipped.push(format!("{label}: moments stall at {index}"));
        return Ok(());
    }
    let oracle = solve_pairing_system_at(pair, depth).map_err(|e| e.to_string())?;
    if oracle.mu != ms.mu {
        tally.failures.push((label.to_string(), MOMENT_ORACLE));
    }
    let minors = hankel_minors(&ms, count).map_err(|e| e.to_string())?;
    let rc = recurrence_coeffs(pair, count).map_err(|e| e.to_string())?;
    let first_zero = minors.iter().position(GaussianRational::is_zero);
    let expected = rc.report.first_failure().filter(|&k| k <= count);
    let delta = |j: usize| if j == 0 { GaussianRational::one() } else { minors[j - 1].clone() };
    let ratios_agree = rc.b.iter().enumerate().all(|(i, b)| {
        let k = i + 1;
        let previous = delta(k);
        &(&minors[k] * &delta(k - 1)) / &(&previous * &previous) == *b
    });
    if first_zero != expected || !ratios_agree {
        tally.failures.push((label.to_string(), HANKEL_ORACLE));
    }
    for k in 0..depth {
        let residual =
            pearson_residual_at(pair, &ms, &Poly::monomial(GaussianRational::one(), k)).map_err(|e| e.to_string())?;
        if !residual.is_zero() {
            tally.failures.push((format!("{label} at degree {k}"), PEARSON_RESIDUAL));
            break;
        }
    }
    Ok(())
}

pub fn run(mut pairs: Vec<(String, PearsonPair)>, random: usize, seed: u64, count: usize) -> Result<Outcome, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    pairs.extend((0..random).map(|k| (format!("random #{k}"), random_pair(&mut rng, 2 * count + 1))));
    let mut tally = Tally::default();
    for (label, pair) in &pairs {
        check(label, pair, count, &mut tally)?;
    }
    let value = json!({
        "failures": tally.failures.iter().map(|(label, check)| format!("{check}: {label}")).collect::<Vec<_>>(),
        HANKEL_ORACLE: tally.verdict(HANKEL_ORACLE),
        MOMENT_ORACLE: tally.verdict(MOMENT_ORACLE),
        "n": count,
        "pairs": pairs.len(),
        PEARSON_RESIDUAL: tally.verdict(PEARSON_RESIDUAL),
        "skipped": tally.skipped,
    });
    let mut body = serde_json::to_string_pretty(&value).expect("serializable report");
    body.push('\n');
    Ok(Outcome { body, finding: !tally.failures.is_empty() })
}
