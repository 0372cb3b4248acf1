//! Regularity, three-term recurrence coefficients, positivity and the affine transformation law.
//!
//! With `φ = ax² + bx + c`, `ψ = dx + e`, `d_n = an + d`, `e_n = bn + e` and
//! `φ^{[n]}(x) = φ(x) + ¼·n·d_n·t`, the recurrence coefficients are
//!
//! ```text
//! a_n = n·e_{n−1}/d_{2n−2} − (n+1)·e_n/d_{2n}
//! b_n = −(n·d_{n−2}/(d_{2n−3}·d_{2n−1}))·φ^{[n−1]}(−e_{n−1}/d_{2n−2})
//! ```
//!
//! Both are handled as rational functions of the index `n`, reduced by the gcd of numerator and
//! denominator before evaluation, so that cancelling factors do not produce spurious poles.

use serde::{Deserialize, Serialize};

use crate::classify::CanonicalClass;
use crate::error::Error;
use crate::pearson::PearsonPair;
use crate::poly::{ParamPoly, Poly, Ring};
use crate::scalar::{rational_to_f64, GaussianRational, Rational};

/// Coefficients of `φ = ax² + bx + c` and `ψ = dx + e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureConstants {
    pub a: GaussianRational,
    pub b: GaussianRational,
    pub c: GaussianRational,
    pub d: GaussianRational,
    pub e: GaussianRational,
}

impl StructureConstants {
    pub fn from_pair(pair: &PearsonPair) -> Result<Self, Error> {
        pair.require_centered()?;
        Ok(StructureConstants {
            a: pair.phi().coeff(2),
            b: pair.phi().coeff(1),
            c: pair.phi().coeff(0),
            d: pair.psi().coeff(1),
            e: pair.psi().coeff(0),
        })
    }

    pub fn phi(&self) -> Poly {
        Poly::from_coeffs(vec![self.c.clone(), self.b.clone(), self.a.clone()])
    }

    pub fn psi(&self) -> Poly {
        Poly::from_coeffs(vec![self.e.clone(), self.d.clone()])
    }

    /// `d_n = an + d`.
    pub fn d_n(&self, n: i64) -> GaussianRational {
        &(&self.a * &GaussianRational::from_int(n)) + &self.d
    }

    /// `e_n = bn + e`.
    pub fn e_n(&self, n: i64) -> GaussianRational {
        &(&self.b * &GaussianRational::from_int(n)) + &self.e
    }

    /// `φ^{[n]}(x) = φ(x) + ¼·n·d_n·t`.
    pub fn shifted_phi(&self, n: i64, t: &GaussianRational) -> Poly {
        let shift = &(&GaussianRational::from_ratio(n, 4) * &self.d_n(n)) * t;
        self.phi().add(&Poly::constant(shift))
    }

    /// `d_{scale·n + offset}` as a polynomial in `n`.
    fn d_in_n(&self, scale: i64, offset: i64) -> Poly {
        Poly::from_coeffs(vec![self.d_n(offset), &self.a * &GaussianRational::from_int(scale)])
    }

    /// `e_{scale·n + offset}` as a polynomial in `n`.
    fn e_in_n(&self, scale: i64, offset: i64) -> Poly {
        Poly::from_coeffs(vec![self.e_n(offset), &self.b * &GaussianRational::from_int(scale)])
    }

    /// True iff every coefficient is real.
    pub fn is_real(&self) -> bool {
        [&self.a, &self.b, &self.c, &self.d, &self.e].iter().all(|v| v.is_real())
    }
}

fn int(n: i64) -> GaussianRational {
    GaussianRational::from_int(n)
}

fn at(p: &Poly, n: i64) -> GaussianRational {
    p.eval(&int(n))
}

/// `b_n` as a reduced rational function of `n`: `(num0(n) + t·num1(n))/den(n)`.
///
/// In the numeric form `t` has been substituted, `num1 = 0`, and the reduction uses the gcd of
/// the substituted numerator; in the symbolic form the reduction uses the common factors of
/// `num0`, `num1` and `den`, which hold for every `t`.
#[derive(Clone, Debug)]
pub struct BnFormula {
    constants: StructureConstants,
    t: Option<GaussianRational>,
    num0: Poly,
    num1: Poly,
    den: Poly,
}

impl BnFormula {
    fn raw(constants: &StructureConstants) -> (Poly, Poly, Poly) {
        let n = Poly::var();
        let e_prev = constants.e_in_n(1, -1);
        let d_even = constants.d_in_n(2, -2);
        let d_even_sq = d_even.mul(&d_even);
        // φ^{[n−1]}(−E/D)·D² = aE² − bED + cD² + ¼(n−1)d_{n−1}D²·t
        let q = e_prev
            .mul(&e_prev)
            .scale(&constants.a)
            .sub(&e_prev.mul(&d_even).scale(&constants.b))
            .add(&d_even_sq.scale(&constants.c));
        let r = Poly::from_ints(&[-1, 1])
            .mul(&constants.d_in_n(1, -1))
            .mul(&d_even_sq)
            .scale(&GaussianRational::from_ratio(1, 4));
        let prefactor = n.mul(&constants.d_in_n(1, -2)).neg();
        let den = constants.d_in_n(2, -3).mul(&constants.d_in_n(2, -1)).mul(&d_even_sq);
        (prefactor.mul(&q), prefactor.mul(&r), den)
    }

    fn reduce(num0: Poly, num1: Poly, den: Poly) -> (Poly, Poly, Poly) {
        if den.is_zero() {
            return (num0, num1, den);
        }
        let g = den.gcd(&num0.gcd(&num1));
        if g.degree().unwrap_or(0) == 0 {
            return (num0, num1, den);
        }
        let div = |p: &Poly| p.exact_div(&g).expect("gcd divides");
        (div(&num0), div(&num1), div(&den))
    }

    /// `b_n` with `t = c²` kept symbolic.
    pub fn symbolic(constants: &StructureConstants) -> Self {
        let (num0, num1, den) = Self::raw(constants);
        let (num0, num1, den) = Self::reduce(num0, num1, den);
        BnFormula { constants: constants.clone(), t: None, num0, num1, den }
    }

    /// `b_n` at a fixed value of `t`.
    pub fn at_t(constants: &StructureConstants, t: &GaussianRational) -> Self {
        let (num0, num1, den) = Self::raw(constants);
        let num = num0.add(&num1.scale(t));
        let (num, _, den) = Self::reduce(num, Poly::zero(), den);
        BnFormula { constants: constants.clone(), t: Some(t.clone()), num0: num, num1: Poly::zero(), den }
    }

    pub fn t(&self) -> Option<&GaussianRational> {
        self.t.as_ref()
    }

    /// Reduced numerator, constant and `t`-linear parts, as polynomials in `n`.
    pub fn numerator(&self) -> (&Poly, &Poly) {
        (&self.num0, &self.num1)
    }

    /// Reduced denominator as a polynomial in `n`.
    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    /// `b_k`, or `None` at a pole. `b_1 = −φ(−e/d)/d_1` is evaluated directly, since the
    /// reduced form can cancel `d_{n−2}/d_{2n−3}` to the wrong constant when `d_{−1} = 0`.
    pub fn value(&self, k: usize) -> Option<ParamPoly> {
        let s = &self.constants;
        if k == 1 {
            if s.d.is_zero() || s.d_n(1).is_zero() {
                return None;
            }
            let root = -&(&s.e / &s.d);
            return Some(ParamPoly::constant(-&(&s.phi().eval(&root) / &s.d_n(1))));
        }
        let den = at(&self.den, k as i64);
        if den.is_zero() {
            return None;
        }
        let inv = den.inv().expect("nonzero");
        let n = k as i64;
        Some(ParamPoly::from_coeffs(vec![&at(&self.num0, n) * &inv, &at(&self.num1, n) * &inv]))
    }

    /// `b_k` as a scalar; requires the numeric form.
    pub fn numeric_value(&self, k: usize) -> Option<GaussianRational> {
        debug_assert!(self.t.is_some(), "numeric_value on a symbolic formula");
        self.value(k).map(|p| p.coeff(0))
    }

    /// Why `b_k` fails, given that it is zero or a pole.
    fn failure_reason(&self, k: usize, is_pole: bool) -> (FailureReason, String) {
        let s = &self.constants;
        let n = k as i64;
        if is_pole {
            let level = [2 * n - 3, 2 * n - 2, 2 * n - 1]
                .into_iter()
                .find(|&j| j >= 0 && s.d_n(j).is_zero())
                .unwrap_or(2 * n - 1);
            return (FailureReason::DnZero { level: level as usize }, format!("b_{k} has a pole: d_{level} = 0"));
        }
        if n >= 2 && s.d_n(n - 2).is_zero() {
            let level = (n - 2) as usize;
            return (FailureReason::DnZero { level }, format!("b_{k} = 0: d_{level} = 0"));
        }
        let level = (n - 1) as usize;
        (FailureReason::PhiShiftZero { level }, format!("b_{k} = 0: phi^[{level}](-e_{level}/d_{}) = 0", 2 * level))
    }
}

/// `a_n = n·r(n−1) − (n+1)·r(n)` with `r(m) = e_m/d_{2m}` reduced.
#[derive(Clone, Debug)]
pub struct AnFormula {
    num: Poly,
    den: Poly,
}

impl AnFormula {
    pub fn new(constants: &StructureConstants) -> Self {
        let num = constants.e_in_n(1, 0);
        let den = constants.d_in_n(2, 0);
        if num.is_zero() {
            return AnFormula { num, den: Poly::one() };
        }
        if den.is_zero() {
            return AnFormula { num, den };
        }
        let g = num.gcd(&den);
        AnFormula { num: num.exact_div(&g).expect("gcd divides"), den: den.exact_div(&g).expect("gcd divides") }
    }

    fn ratio(&self, m: i64) -> Option<GaussianRational> {
        let den = at(&self.den, m);
        if den.is_zero() {
            None
        } else {
            Some(&at(&self.num, m) / &den)
        }
    }

    /// `a_k`, or `None` when `d_{2k}` (or `d_{2k−2}` for `k ≥ 1`) is a genuine pole.
    pub fn value(&self, k: usize) -> Option<GaussianRational> {
        let n = k as i64;
        let current = self.ratio(n)?;
        let upper = &int(n + 1) * &current;
        if k == 0 {
            return Some(-upper);
        }
        let previous = self.ratio(n - 1)?;
        Some(&(&int(n) * &previous) - &upper)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FailureReason {
    /// `d_level = 0`.
    DnZero { level: usize },
    /// `φ^{[level]}(−e_level/d_{2·level}) = 0`.
    PhiShiftZero { level: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status")]
pub enum RegularityStatus {
    RegularThrough { checked: usize },
    FirstFailure { index: usize, reason: FailureReason },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityReport {
    #[serde(flatten)]
    pub status: RegularityStatus,
    pub witness: Option<String>,
}

impl RegularityReport {
    pub fn first_failure(&self) -> Option<usize> {
        match self.status {
            RegularityStatus::FirstFailure { index, .. } => Some(index),
            RegularityStatus::RegularThrough { .. } => None,
        }
    }

    pub fn is_regular(&self) -> bool {
        self.first_failure().is_none()
    }
}

fn scan(formula: &BnFormula, limit: usize) -> RegularityReport {
    let s = &formula.constants;
    if s.d.is_zero() {
        return RegularityReport {
            status: RegularityStatus::FirstFailure { index: 0, reason: FailureReason::DnZero { level: 0 } },
            witness: Some("d_0 = 0".into()),
        };
    }
    for k in 1..=limit {
        let failure = match formula.value(k) {
            None => Some(formula.failure_reason(k, true)),
            Some(v) if v.is_zero() => Some(formula.failure_reason(k, false)),
            Some(_) => None,
        };
        if let Some((reason, witness)) = failure {
            return RegularityReport {
                status: RegularityStatus::FirstFailure { index: k, reason },
                witness: Some(witness),
            };
        }
    }
    RegularityReport { status: RegularityStatus::RegularThrough { checked: limit }, witness: None }
}

/// Scans `b_1..b_limit` at the given `t` for the first zero or pole.
pub fn regularity_scan_at(constants: &StructureConstants, t: &GaussianRational, limit: usize) -> RegularityReport {
    scan(&BnFormula::at_t(constants, t), limit)
}

/// Scans with `t` symbolic: a failure here holds for every slope.
pub fn regularity_scan_symbolic(constants: &StructureConstants, limit: usize) -> RegularityReport {
    scan(&BnFormula::symbolic(constants), limit)
}

/// Regularity of a centered pair on its own lattice.
pub fn regularity_scan(pair: &PearsonPair, limit: usize) -> Result<RegularityReport, Error> {
    let constants = StructureConstants::from_pair(pair)?;
    Ok(regularity_scan_at(&constants, &pair.lattice().t(), limit))
}

/// `a_0..a_{m−1}` and `b_1..b_m`, where `m` is the requested count truncated before the first
/// failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrenceCoefficients<V = GaussianRational> {
    pub a: Vec<GaussianRational>,
    pub b: Vec<V>,
    pub report: RegularityReport,
}

fn collect<V>(
    constants: &StructureConstants,
    formula: &BnFormula,
    count: usize,
    convert: impl Fn(ParamPoly) -> V,
) -> RecurrenceCoefficients<V> {
    let report = scan(formula, count);
    let usable = report.first_failure().map_or(count, |k| k.saturating_sub(1).min(count));
    let an = AnFormula::new(constants);
    let mut a = Vec::with_capacity(usable);
    for k in 0..usable {
        match an.value(k) {
            Some(v) => a.push(v),
            None => break,
        }
    }
    let b = (1..=a.len()).map(|k| convert(formula.value(k).expect("regular prefix"))).collect();
    RecurrenceCoefficients { a, b, report }
}

/// Recurrence coefficients of a centered pair on its own lattice.
pub fn recurrence_coeffs(pair: &PearsonPair, count: usize) -> Result<RecurrenceCoefficients, Error> {
    let constants = StructureConstants::from_pair(pair)?;
    Ok(recurrence_coeffs_at(&constants, &pair.lattice().t(), count))
}

pub fn recurrence_coeffs_at(
    constants: &StructureConstants,
    t: &GaussianRational,
    count: usize,
) -> RecurrenceCoefficients {
    collect(constants, &BnFormula::at_t(constants, t), count, |p| p.coeff(0))
}

/// Recurrence coefficients with `b_n` polynomial in `t`.
pub fn recurrence_coeffs_symbolic(constants: &StructureConstants, count: usize) -> RecurrenceCoefficients<ParamPoly> {
    collect(constants, &BnFormula::symbolic(constants), count, |p| p)
}

/// `c_n = a_n/α + β`, `d_n = b_n/α²`.
pub fn transform_recurrence<V: Ring>(
    rc: &RecurrenceCoefficients<V>,
    alpha: &GaussianRational,
    beta: &GaussianRational,
) -> Result<RecurrenceCoefficients<V>, Error> {
    let inv = alpha.inv().map_err(|_| Error::ZeroScale)?;
    let inv_sq = &inv * &inv;
    Ok(RecurrenceCoefficients {
        a: rc.a.iter().map(|a| &(a * &inv) + beta).collect(),
        b: rc.b.iter().map(|b| b.scaled(&inv_sq)).collect(),
        report: rc.report.clone(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum PositivityVerdict {
    PositiveDefiniteInfinite,
    /// `b_1..b_n > 0` and `b_{n+1} ≤ 0` (or undefined).
    PositiveDefiniteFinite {
        n: usize,
    },
    NotPositiveDefinite {
        first_nonpositive: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonPositive {
    pub index: usize,
    /// `None` at a pole.
    pub value: Option<GaussianRational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositivityReport {
    pub verdict: PositivityVerdict,
    pub first_nonpositive: Option<NonPositive>,
    pub scanned_through: usize,
    pub notes: Vec<String>,
}

/// Largest index that positivity scans will visit.
pub const POSITIVITY_SCAN_CAP: usize = 1_000_000;

/// `1 + max |c_i/c_lead|`: every real root of `p` lies below this bound.
fn cauchy_bound(p: &Poly) -> f64 {
    let Some(lead) = p.leading() else { return 0.0 };
    let lead = rational_to_f64(lead.re()).abs();
    let deg = p.degree().unwrap_or(0);
    let max = p.coeffs()[..deg].iter().map(|c| rational_to_f64(c.re()).abs() / lead).fold(0.0, f64::max);
    1.0 + max
}

fn sign(r: &Rational) -> i8 {
    use num_traits::Signed;
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

/// Positivity of a canonical class on the unit lattice: exact sign scan of `b_n` past every real
/// root of the reduced numerator and denominator, then the sign of the leading-coefficient ratio.
pub fn positivity_classify(class: &CanonicalClass, probe: usize) -> Result<PositivityReport, Error> {
    if class.parameters().iter().any(|p| !p.is_real()) {
        return Err(Error::NonRealParameters);
    }
    let constants = StructureConstants::from_pair(&class.canonical_pair())?;
    let formula = BnFormula::at_t(&constants, &GaussianRational::one());
    let (num, _) = formula.numerator();
    let bound = cauchy_bound(num).max(cauchy_bound(formula.denominator()));
    let limit = probe.max(bound.ceil() as usize + 1);
    if limit > POSITIVITY_SCAN_CAP {
        return Err(Error::Invalid(format!("positivity scan bound {limit} exceeds {POSITIVITY_SCAN_CAP}")));
    }
    let mut notes = Vec::new();
    if let CanonicalClass::Laguerre1 { .. } = class {
        notes.push(
            "b_n = -(n/(4 alpha^2))((n-1)(alpha^2-4) - 4 beta); infinite positivity iff 0 < alpha^2 <= 4 and beta > 0. \
             The published table row carries +4 beta, which would instead require beta < 0."
                .to_string(),
        );
    }
    let mut first = None;
    for k in 1..=limit {
        match formula.numeric_value(k) {
            None => {
                first = Some(NonPositive { index: k, value: None });
                break;
            }
            Some(v) if sign(v.re()) <= 0 => {
                first = Some(NonPositive { index: k, value: Some(v) });
                break;
            }
            Some(_) => {}
        }
    }
    let verdict = match &first {
        Some(np) if np.index == 1 => PositivityVerdict::NotPositiveDefinite { first_nonpositive: 1 },
        Some(np) => PositivityVerdict::PositiveDefiniteFinite { n: np.index - 1 },
        None => {
            let lead_num = num.leading().map(|c| c.re().clone()).unwrap_or_default();
            let lead_den = formula.denominator().leading().map(|c| c.re().clone()).unwrap_or_default();
            if sign(&lead_num) * sign(&lead_den) > 0 {
                PositivityVerdict::PositiveDefiniteInfinite
            } else {
                notes.push("sign scan found no nonpositive value but the asymptotic sign is not positive".into());
                PositivityVerdict::PositiveDefiniteFinite { n: limit }
            }
        }
    };
    Ok(PositivityReport { verdict, first_nonpositive: first, scanned_through: limit, notes })
}

/// Region where the authoritative Laguerre formula gives `b_n > 0` for every `n`.
pub fn laguerre_infinitely_positive(alpha: &Rational, beta: &Rational) -> bool {
    use num_traits::{Signed, Zero};
    let four = Rational::from_integer(4.into());
    !alpha.is_zero() && alpha * alpha <= four && beta.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::gq;

    fn constants(phi: &[i64], psi: &[i64]) -> StructureConstants {
        let pair = PearsonPair::centered(Poly::from_ints(phi), Poly::from_ints(psi), gq(1, 1)).unwrap();
        StructureConstants::from_pair(&pair).unwrap()
    }

    #[test]
    fn hermite_symbolic_coefficients() {
        let s = constants(&[1], &[0, 1]);
        let rc = recurrence_coeffs_symbolic(&s, 4);
        assert!(rc.a.iter().all(|a| a.is_zero()));
        assert_eq!(rc.b[0], ParamPoly::constant(gq(-1, 1)));
        assert_eq!(rc.b[1], ParamPoly::from_coeffs(vec![gq(-2, 1), gq(-1, 2)]));
    }

    #[test]
    fn d_zero_fails_at_zero() {
        let s = constants(&[1], &[3]);
        let report = regularity_scan_symbolic(&s, 5);
        assert_eq!(
            report.status,
            RegularityStatus::FirstFailure { index: 0, reason: FailureReason::DnZero { level: 0 } }
        );
    }

    #[test]
    fn hermite_finite_positivity() {
        let report = positivity_classify(&CanonicalClass::Hermite1 { alpha: gq(-1, 2) }, 20).unwrap();
        assert_eq!(report.verdict, PositivityVerdict::PositiveDefiniteFinite { n: 8 });
        assert_eq!(report.first_nonpositive, Some(NonPositive { index: 9, value: Some(gq(0, 1)) }));
    }

    #[test]
    fn laguerre_positivity_region() {
        let report = positivity_classify(&CanonicalClass::Laguerre1 { alpha: gq(1, 1), beta: gq(3, 1) }, 10).unwrap();
        assert_eq!(report.verdict, PositivityVerdict::PositiveDefiniteInfinite);
        let report = positivity_classify(&CanonicalClass::Laguerre1 { alpha: gq(3, 1), beta: gq(3, 1) }, 10).unwrap();
        assert!(matches!(report.verdict, PositivityVerdict::PositiveDefiniteFinite { .. }));
    }

    #[test]
    fn complex_parameters_rejected() {
        let class = CanonicalClass::Hermite1 { alpha: GaussianRational::i() };
        assert_eq!(positivity_classify(&class, 5), Err(Error::NonRealParameters));
    }

    #[test]
    fn transform_identity() {
        let s = constants(&[1, 2], &[3, -1]);
        let rc = recurrence_coeffs_at(&s, &gq(1, 1), 5);
        assert_eq!(transform_recurrence(&rc, &gq(1, 1), &gq(0, 1)).unwrap(), rc);
        assert_eq!(transform_recurrence(&rc, &gq(0, 1), &gq(0, 1)), Err(Error::ZeroScale));
    }
}
