//! Atomic representations `u = Σ ρ_k δ_{ξ + k}` of centered functionals on the unit lattice.
//!
//! A string is anchored where `2Φ(ξ) = Ψ(ξ)` and grows by
//! `(2Φ − Ψ)(ξ + n + 1)·ρ_{n+1} = (2Φ + Ψ)(ξ + n)·ρ_n`.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::pearson::PearsonPair;
use crate::poly::Poly;
use crate::scalar::{rational_to_f64, GaussianRational};

/// Default number of steps before a string is truncated.
pub const DEFAULT_MAX_STEPS: usize = 128;

/// Tolerance used to validate approximate anchors.
pub const INEXACT_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Anchors {
    /// Exact roots of `2Φ − Ψ`.
    pub exact: Vec<GaussianRational>,
    /// Double-precision roots `(re, im)` when the discriminant is not a Gaussian-rational square.
    pub approximate: Vec<(f64, f64)>,
    /// Set when `approximate` is populated.
    pub inexact_branch: bool,
}

fn anchoring_poly(phi: &Poly, psi: &Poly) -> Poly {
    phi.scale(&GaussianRational::from_int(2)).sub(psi)
}

fn stepping_poly(phi: &Poly, psi: &Poly) -> Poly {
    phi.scale(&GaussianRational::from_int(2)).add(psi)
}

fn complex_sqrt(re: f64, im: f64) -> (f64, f64) {
    let z = num_complex::Complex64::new(re, im).sqrt();
    (z.re, z.im)
}

/// Roots of `2Φ − Ψ`.
pub fn anchor_points(phi: &Poly, psi: &Poly) -> Result<Anchors, Error> {
    let poly = anchoring_poly(phi, psi);
    let mut anchors = Anchors { exact: Vec::new(), approximate: Vec::new(), inexact_branch: false };
    match poly.degree() {
        None => return Err(Error::AnchoringDegenerate),
        Some(0) => {}
        Some(1) => anchors.exact.push(-&(&poly.coeff(0) / &poly.coeff(1))),
        Some(_) => {
            let (a, b, c) = (poly.coeff(2), poly.coeff(1), poly.coeff(0));
            let disc = &(&b * &b) - &(&GaussianRational::from_int(4) * &(&a * &c));
            let two_a = &GaussianRational::from_int(2) * &a;
            match disc.sqrt_exact() {
                Some(root) => {
                    anchors.exact.push(&(&-&b + &root) / &two_a);
                    if !root.is_zero() {
                        anchors.exact.push(&(&-&b - &root) / &two_a);
                    }
                }
                None => {
                    let (dr, di) = disc.to_f64_pair();
                    let (sr, si) = complex_sqrt(dr, di);
                    let (br, bi) = b.to_f64_pair();
                    let (ar, ai) = two_a.to_f64_pair();
                    let denom = ar * ar + ai * ai;
                    for sign in [1.0, -1.0] {
                        let (nr, ni) = (-br + sign * sr, -bi + sign * si);
                        anchors.approximate.push(((nr * ar + ni * ai) / denom, (ni * ar - nr * ai) / denom));
                    }
                    anchors.inexact_branch = true;
                }
            }
        }
    }
    Ok(anchors)
}

/// How a string ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "index", rename_all = "lowercase")]
pub enum StringLength {
    /// `(2Φ + Ψ)(ξ + M) = 0`; weights `ρ_0..ρ_M`.
    Finite(usize),
    /// Weights `ρ_0..ρ_N` of a string that continues past `N`.
    Truncated(usize),
}

/// Atoms at `base + step·k` with weights `ρ_k`; `step` is `+1` or `−1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomString {
    pub base: GaussianRational,
    pub step: i8,
    pub weights: Vec<GaussianRational>,
    pub length: StringLength,
}

impl AtomString {
    pub fn position(&self, k: usize) -> GaussianRational {
        &self.base + &GaussianRational::from_int(self.step as i64 * k as i64)
    }

    pub fn positions(&self) -> impl Iterator<Item = GaussianRational> + '_ {
        (0..self.weights.len()).map(|k| self.position(k))
    }

    /// Multiplies every weight by `factor`.
    pub fn scaled(&self, factor: &GaussianRational) -> Self {
        AtomString { weights: self.weights.iter().map(|w| w * factor).collect(), ..self.clone() }
    }

    pub fn total_weight(&self) -> GaussianRational {
        self.weights.iter().fold(GaussianRational::zero(), |acc, w| &acc + w)
    }

    /// `λ` when `ρ_{k+1}/ρ_k = λ/(k + 1)` along the whole stored string.
    pub fn poisson_rate(&self) -> Option<GaussianRational> {
        if self.weights.len() < 2 || self.weights[0].is_zero() {
            return None;
        }
        let rate = &self.weights[1] / &self.weights[0];
        let consistent = self
            .weights
            .windows(2)
            .enumerate()
            .all(|(k, w)| &w[1] * &GaussianRational::from_int(k as i64 + 1) == &w[0] * &rate);
        consistent.then_some(rate)
    }

    /// Points `x_k ± ½` where the pairing of this string is evaluated.
    fn half_shifted_support(&self) -> Vec<GaussianRational> {
        let half = GaussianRational::from_ratio(1, 2);
        let mut out: Vec<GaussianRational> = self.positions().flat_map(|x| [&x - &half, &x + &half]).collect();
        out.sort_by(|a, b| a.re().cmp(b.re()).then(a.im().cmp(b.im())));
        out.dedup();
        out
    }
}

/// Iterates the step relation from `ρ_0 = 1` at an anchor `ξ`.
pub fn string_weights(phi: &Poly, psi: &Poly, base: &GaussianRational, max_steps: usize) -> Result<AtomString, Error> {
    let left = anchoring_poly(phi, psi);
    let right = stepping_poly(phi, psi);
    if left.is_zero() {
        return Err(Error::AnchoringDegenerate);
    }
    if !left.eval(base).is_zero() {
        return Err(Error::Invalid(format!("{base} is not an anchor point")));
    }
    let mut weights = vec![GaussianRational::one()];
    for n in 0..=max_steps {
        let x = base + &GaussianRational::from_int(n as i64);
        let r = right.eval(&x);
        if r.is_zero() {
            return Ok(AtomString { base: base.clone(), step: 1, weights, length: StringLength::Finite(n) });
        }
        if n == max_steps {
            break;
        }
        let l = left.eval(&(&x + &GaussianRational::one()));
        if l.is_zero() {
            return Err(Error::StepDegenerate(n + 1));
        }
        let next = &(&r * &weights[n]) / &l;
        weights.push(next);
    }
    Ok(AtomString { base: base.clone(), step: 1, weights, length: StringLength::Truncated(max_steps) })
}

/// One or two strings with pairwise disjoint half-shifted supports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomicRepresentation {
    pub strings: Vec<AtomString>,
}

impl AtomicRepresentation {
    pub fn new(strings: Vec<AtomString>) -> Result<Self, Error> {
        if strings.is_empty() || strings.len() > 2 {
            return Err(Error::Invalid(format!("expected one or two strings, got {}", strings.len())));
        }
        if strings.iter().any(|s| s.weights.first().is_none_or(|w| w.is_zero()) || !matches!(s.step, 1 | -1)) {
            return Err(Error::Invalid("strings need a nonzero first weight and step ±1".into()));
        }
        if strings.len() == 2 {
            let first = strings[0].half_shifted_support();
            if strings[1].half_shifted_support().iter().any(|p| first.contains(p)) {
                return Err(Error::StringsCollide);
            }
        }
        Ok(AtomicRepresentation { strings })
    }

    pub fn single(string: AtomString) -> Self {
        AtomicRepresentation { strings: vec![string] }
    }

    pub fn is_finite(&self) -> bool {
        self.strings.iter().all(|s| matches!(s.length, StringLength::Finite(_)))
    }

    pub fn atom_count(&self) -> usize {
        self.strings.iter().map(|s| s.weights.len()).sum()
    }

    pub fn total_weight(&self) -> GaussianRational {
        self.strings.iter().fold(GaussianRational::zero(), |acc, s| &acc + &s.total_weight())
    }

    /// Normalization making `μ_0 = 1`: exact for finite representations, `×exp(−λ)` for a
    /// single Poisson-type string.
    pub fn normalization(&self) -> Option<String> {
        if self.is_finite() {
            let total = self.total_weight();
            return total.inv().ok().map(|inv| format!("×{inv}"));
        }
        match self.strings.as_slice() {
            [s] => {
                let rate = s.poisson_rate()?;
                let inv = s.weights[0].inv().ok()?;
                let text = rate.to_string();
                let exponent =
                    if text.contains(['-', '+', 'i']) { format!("−({text})") } else { format!("−{text}") };
                Some(if inv.is_one() { format!("×exp({exponent})") } else { format!("×{inv}·exp({exponent})") })
            }
            _ => None,
        }
    }
}

/// Maps atoms `δ_{x}` to `δ_{−x}`.
pub fn reflect(rep: &AtomicRepresentation) -> AtomicRepresentation {
    let strings = rep.strings.iter().map(|s| AtomString { base: -&s.base, step: -s.step, ..s.clone() }).collect();
    AtomicRepresentation { strings }
}

/// Rescales `ρ_n` by `(−a)^n` along each string.
pub fn gauge(rep: &AtomicRepresentation, a: &GaussianRational) -> AtomicRepresentation {
    let ratio = -a;
    let strings = rep
        .strings
        .iter()
        .map(|s| {
            let mut factor = GaussianRational::one();
            let weights = s
                .weights
                .iter()
                .map(|w| {
                    let v = w * &factor;
                    factor = &factor * &ratio;
                    v
                })
                .collect();
            AtomString { weights, ..s.clone() }
        })
        .collect();
    AtomicRepresentation { strings }
}

/// `⟨u, Φ·D_X p + Ψ·S_X p⟩` on the unit lattice, evaluated on the atoms:
/// `Σ_k ρ_k·½[(2Φ − Ψ)(x_k)·p(x_k − ½) − (2Φ + Ψ)(x_k)·p(x_k + ½)]`, which for an upward
/// string regroups as `Σ_n c_n·p(ξ + n + ½)` with
/// `c_{−1} = ½(2Φ − Ψ)(ξ)ρ_0` and `c_n = ½((2Φ − Ψ)(ξ+n+1)ρ_{n+1} − (2Φ + Ψ)(ξ+n)ρ_n)`.
pub fn residual_check(rep: &AtomicRepresentation, pair: &PearsonPair, p: &Poly) -> Result<GaussianRational, Error> {
    pair.require_centered()?;
    if !pair.slope().is_one() {
        return Err(Error::UnitStepSlope);
    }
    let rep = AtomicRepresentation::new(rep.strings.clone())?;
    let left = anchoring_poly(pair.phi(), pair.psi());
    let right = stepping_poly(pair.phi(), pair.psi());
    let half = GaussianRational::from_ratio(1, 2);
    let mut total = GaussianRational::zero();
    for s in &rep.strings {
        if s.step == 1 {
            let rho = |k: usize| s.weights.get(k).cloned().unwrap_or_else(GaussianRational::zero);
            total += &(&(&(&half * &left.eval(&s.base)) * &rho(0)) * &p.eval(&(&s.base - &half)));
            for n in 0..s.weights.len() {
                let x = s.position(n);
                let x_next = &x + &GaussianRational::one();
                let c = &half * &(&(&left.eval(&x_next) * &rho(n + 1)) - &(&right.eval(&x) * &rho(n)));
                total += &(&c * &p.eval(&(&x + &half)));
            }
        } else {
            for (k, x) in s.positions().enumerate() {
                let lower = &(&left.eval(&x) * &p.eval(&(&x - &half))) - &(&right.eval(&x) * &p.eval(&(&x + &half)));
                total += &(&(&half * &s.weights[k]) * &lower);
            }
        }
    }
    Ok(total)
}

/// Moments `Σ ρ_k x_k^n` of a representation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AtomMoments {
    Exact {
        mu: Vec<GaussianRational>,
    },
    /// Partial sums in double precision with a bound on the omitted tail of each moment.
    Approximate {
        mu: Vec<(f64, f64)>,
        tail_bound: Vec<f64>,
    },
}

fn abs_f64(z: &GaussianRational) -> f64 {
    let (re, im) = z.to_f64_pair();
    re.hypot(im)
}

/// Unnormalized moments `μ_0..μ_count`. Truncated strings need weights whose ratio
/// `|ρ_{k+1}/ρ_k|` is non-increasing over the stored tail and below one at its end.
pub fn moments_of(rep: &AtomicRepresentation, count: usize) -> Result<AtomMoments, Error> {
    let exact: Vec<GaussianRational> = (0..=count)
        .map(|n| {
            rep.strings.iter().fold(GaussianRational::zero(), |acc, s| {
                s.positions().zip(&s.weights).fold(acc, |acc, (x, w)| &acc + &(w * &x.pow(n as u32)))
            })
        })
        .collect();
    if rep.is_finite() {
        return Ok(AtomMoments::Exact { mu: exact });
    }
    let mut tail_bound = vec![0.0; count + 1];
    for s in rep.strings.iter().filter(|s| matches!(s.length, StringLength::Truncated(_))) {
        let len = s.weights.len();
        if len < 3 {
            return Err(Error::MomentsUndefined);
        }
        let window = 8.min(len - 1);
        let ratios: Vec<f64> =
            (len - 1 - window..len - 1).map(|k| abs_f64(&s.weights[k + 1]) / abs_f64(&s.weights[k])).collect();
        let q = *ratios.last().unwrap();
        if q.is_nan() || q >= 1.0 || ratios.windows(2).any(|w| w[1] > w[0]) {
            return Err(Error::MomentsUndefined);
        }
        let last_weight = abs_f64(&s.weights[len - 1]);
        let last_pos = abs_f64(&s.position(len - 1));
        for (n, bound) in tail_bound.iter_mut().enumerate() {
            let growth = if last_pos == 0.0 { 1.0 } else { (1.0 + 1.0 / last_pos).powi(n as i32) };
            let qn = q * growth;
            if qn.is_nan() || qn >= 1.0 {
                return Err(Error::MomentsUndefined);
            }
            *bound += last_weight * last_pos.powi(n as i32) * qn / (1.0 - qn);
        }
    }
    let mu = exact.iter().map(|m| (rational_to_f64(m.re()), rational_to_f64(m.im()))).collect();
    Ok(AtomMoments::Approximate { mu, tail_bound })
}

/// Combines two strings as `s₁ + r·s₂` with `r` chosen so that the normalized moment at
/// `index` equals `target`.
pub fn mix_to_match_moment(
    first: &AtomString,
    second: &AtomString,
    index: usize,
    target: &GaussianRational,
) -> Result<AtomicRepresentation, Error> {
    let unit = |s: &AtomString| AtomicRepresentation::single(s.clone());
    let (AtomMoments::Exact { mu: m1 }, AtomMoments::Exact { mu: m2 }) =
        (moments_of(&unit(first), index)?, moments_of(&unit(second), index)?)
    else {
        return Err(Error::Invalid("mixing requires finite strings".into()));
    };
    let numerator = &(target * &m1[0]) - &m1[index];
    let denominator = &m2[index] - &(target * &m2[0]);
    let ratio = numerator.checked_div(&denominator)?;
    AtomicRepresentation::new(vec![first.clone(), second.scaled(&ratio)])
}
