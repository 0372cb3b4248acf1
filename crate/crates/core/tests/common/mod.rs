#![allow(dead_code)]

use lattice_opoly::pearson::{Form, PearsonPair};
use lattice_opoly::recurrence::StructureConstants;
use lattice_opoly::scalar::rational;
use lattice_opoly::{GaussianRational, LinearLattice, Poly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Gq = GaussianRational;

/// Moments are required through this index for every corpus pair.
pub const CORPUS_DEPTH: usize = 40;

pub fn q(num: i64, den: i64) -> Gq {
    Gq::from_ratio(num, den)
}

pub fn int(n: i64) -> Gq {
    Gq::from_int(n)
}

pub fn gaussian(re: (i64, i64), im: (i64, i64)) -> Gq {
    Gq::new(rational(re.0, re.1), rational(im.0, im.1))
}

pub fn poly(coeffs: &[Gq]) -> Poly {
    Poly::from_coeffs(coeffs.to_vec())
}

pub fn slopes() -> Vec<Gq> {
    vec![int(1), int(2), q(1, 2), q(2, 3), Gq::i(), gaussian((1, 1), (1, 1))]
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `num/den` with `num ∈ [−6, 6]`, `den ∈ [1, 6]`.
pub fn small_rational(rng: &mut ChaCha8Rng) -> Gq {
    q(rng.gen_range(-6..=6), rng.gen_range(1..=6))
}

pub fn nonzero_rational(rng: &mut ChaCha8Rng) -> Gq {
    loop {
        let v = small_rational(rng);
        if !v.is_zero() {
            return v;
        }
    }
}

/// Real with probability 3/4, otherwise with a small imaginary part.
pub fn small_gaussian(rng: &mut ChaCha8Rng) -> Gq {
    let re = small_rational(rng);
    if rng.gen_ratio(3, 4) {
        re
    } else {
        &re + &(&small_rational(rng) * &Gq::i())
    }
}

pub fn random_poly(rng: &mut ChaCha8Rng, degree: usize) -> Poly {
    Poly::from_coeffs((0..=degree).map(|_| small_gaussian(rng)).collect())
}

pub fn random_moments(rng: &mut ChaCha8Rng, count: usize) -> Vec<Gq> {
    let mut mu = vec![int(1)];
    mu.extend((1..count).map(|_| small_gaussian(rng)));
    mu
}

pub fn random_slope(rng: &mut ChaCha8Rng) -> Gq {
    let all = slopes();
    all[rng.gen_range(0..all.len())].clone()
}

fn constants_of(a: &Gq, b: &Gq, c: &Gq, d: &Gq, e: &Gq) -> StructureConstants {
    StructureConstants { a: a.clone(), b: b.clone(), c: c.clone(), d: d.clone(), e: e.clone() }
}

/// `d_n ≠ 0` for `0 ≤ n < depth`, so that moments exist through `μ_depth`.
pub fn is_admissible(constants: &StructureConstants, depth: usize) -> bool {
    (0..depth as i64).all(|n| !constants.d_n(n).is_zero())
}

fn centered(constants: &StructureConstants, slope: Gq) -> Option<PearsonPair> {
    PearsonPair::centered(constants.phi(), constants.psi(), slope).ok()
}

pub fn random_centered_pair(rng: &mut ChaCha8Rng) -> PearsonPair {
    loop {
        let constants = constants_of(
            &small_rational(rng),
            &small_rational(rng),
            &small_rational(rng),
            &small_rational(rng),
            &small_rational(rng),
        );
        if constants.phi().is_zero() || !is_admissible(&constants, CORPUS_DEPTH) {
            continue;
        }
        if let Some(pair) = centered(&constants, random_slope(rng)) {
            return pair;
        }
    }
}

/// A pair whose `φ^{[level]}(−e_level/d_{2·level})` vanishes on its own lattice, built by
/// solving for the constant term of `φ`.
pub fn phi_shift_zero_pair(rng: &mut ChaCha8Rng, level: usize) -> PearsonPair {
    let n = level as i64;
    loop {
        let (a, b, d, e) = (small_rational(rng), small_rational(rng), nonzero_rational(rng), small_rational(rng));
        let slope = random_slope(rng);
        let probe = constants_of(&a, &b, &int(0), &d, &e);
        let d_even = probe.d_n(2 * n);
        if d_even.is_zero() || !is_admissible(&probe, CORPUS_DEPTH) {
            continue;
        }
        let x = -&(&probe.e_n(n) / &d_even);
        let shift = &(&q(n, 4) * &probe.d_n(n)) * &(&slope * &slope);
        let c = -&(&(&(&a * &(&x * &x)) + &(&b * &x)) + &shift);
        let constants = constants_of(&a, &b, &c, &d, &e);
        if let Some(pair) = centered(&constants, slope) {
            return pair;
        }
    }
}

/// Random admissible rational pairs followed by pairs with a planted failure at levels `1..=10`.
pub fn corpus(seed: u64, random: usize, planted: usize) -> Vec<PearsonPair> {
    let mut rng = rng(seed);
    let mut pairs: Vec<PearsonPair> = (0..random).map(|_| random_centered_pair(&mut rng)).collect();
    pairs.extend((0..planted).map(|k| phi_shift_zero_pair(&mut rng, 1 + k % 10)));
    pairs
}

/// Para-Krawtchouk on slope 2: `φ = x² − (N−1+γ)x + (N−1)(N−1+γ)/2`,
/// `ψ = −(N−1)x + (N−1)(N−1+γ)/2`.
pub fn para_krawtchouk(n: i64, gamma: &Gq) -> PearsonPair {
    let m = int(n - 1);
    let shift = &m + gamma;
    let constant = &(&m * &shift) / &int(2);
    let phi = poly(&[constant.clone(), -&shift, int(1)]);
    let psi = poly(&[constant, -&m]);
    PearsonPair::centered(phi, psi, int(2)).unwrap()
}

pub fn para_krawtchouk_gammas() -> Vec<Gq> {
    vec![int(0), int(1), q(1, 2), int(3), int(-2)]
}

fn forward(phi: Poly, psi: Poly) -> PearsonPair {
    PearsonPair::new(phi, psi, Form::Forward, LinearLattice::unit()).unwrap()
}

/// `φ = 1`, `ψ = −x + e`.
pub fn gms_charlier(e: &Gq) -> PearsonPair {
    forward(Poly::one(), poly(&[e.clone(), int(-1)]))
}

/// `φ = x`, `ψ = −x + e`.
pub fn gms_meixner(e: &Gq) -> PearsonPair {
    forward(Poly::var(), poly(&[e.clone(), int(-1)]))
}

/// `φ = x`, `ψ = 2x + e`.
pub fn gms_krawtchouk(e: &Gq) -> PearsonPair {
    forward(Poly::var(), poly(&[e.clone(), int(2)]))
}

/// `φ = x² + x + 1`, `ψ = −2Nx + e`.
pub fn gms_hahn(n: i64, e: &Gq) -> PearsonPair {
    forward(Poly::from_ints(&[1, 1, 1]), poly(&[e.clone(), int(-2 * n)]))
}

/// Canonical Charlier pair `Φ = 1 − 2εx`, `Ψ = 4εx + 2`.
pub fn charlier_canonical(epsilon: &Gq) -> PearsonPair {
    let two_eps = &int(2) * epsilon;
    PearsonPair::centered(poly(&[int(1), -&two_eps]), poly(&[int(2), &int(2) * &two_eps]), int(1)).unwrap()
}

/// `b_k = Δ_k·Δ_{k−2}/Δ_{k−1}²` with `Δ_{−1} = 1`, from `deltas[j] = Δ_j`.
pub fn hankel_ratio(deltas: &[Gq], k: usize) -> Option<Gq> {
    let delta = |j: i64| if j < 0 { int(1) } else { deltas[j as usize].clone() };
    let k = k as i64;
    let prev = delta(k - 1);
    if prev.is_zero() {
        return None;
    }
    Some(&(&delta(k) * &delta(k - 2)) / &(&prev * &prev))
}

/// Hermite `b_n` on the unit lattice: `−(n/α)(1 + (n−1)α/4)`.
pub fn hermite_b(alpha: &Gq, n: usize) -> Gq {
    let n_g = int(n as i64);
    let inner = &int(1) + &(&(&int(n as i64 - 1) * alpha) / &int(4));
    -&(&(&n_g / alpha) * &inner)
}

/// Laguerre `b_n` on the unit lattice: `−(n/(4α²))((n−1)(α² − 4) − 4β)`.
pub fn laguerre_b(alpha: &Gq, beta: &Gq, n: usize) -> Gq {
    let n_g = int(n as i64);
    let alpha_sq = alpha * alpha;
    let inner = &(&int(n as i64 - 1) * &(&alpha_sq - &int(4))) - &(&int(4) * beta);
    -&(&(&n_g / &(&int(4) * &alpha_sq)) * &inner)
}
