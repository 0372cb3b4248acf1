//! Moment sequences of 1-classical functionals, dual operator actions and Hankel determinants.
//!
//! Moments satisfy the triangular recursion
//! `d_n·μ_{n+1} + (bn + e)·μ_n + Σ_{j<n} A_{n,j}(t)·μ_j = 0` with `μ_0 = 1`.
//! All routines are generic over the scalar ring so the same code runs with `t` symbolic
//! ([`ParamPoly`]) or numeric ([`GaussianRational`]).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::lattice::{dx_symbolic, sx_symbolic};
use crate::pearson::PearsonPair;
use crate::poly::{ParamPoly, Poly, Polynomial, Ring};
use crate::recurrence::{RecurrenceCoefficients, StructureConstants};
use crate::scalar::{GaussianRational, Rational};

/// `μ_0..μ_N` with `μ_0 = 1`. When the recursion meets `d_n = 0` the sequence stops at `μ_n`
/// and `stalled_at` records `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MomentSequence<R = ParamPoly> {
    pub mu: Vec<R>,
    pub stalled_at: Option<usize>,
}

impl<R> MomentSequence<R> {
    pub fn complete(mu: Vec<R>) -> Self {
        MomentSequence { mu, stalled_at: None }
    }

    pub fn len(&self) -> usize {
        self.mu.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mu.is_empty()
    }
}

impl MomentSequence<ParamPoly> {
    /// Substitutes a value for `t`.
    pub fn at_t(&self, t: &GaussianRational) -> MomentSequence<GaussianRational> {
        MomentSequence { mu: self.mu.iter().map(|m| m.eval(t)).collect(), stalled_at: self.stalled_at }
    }
}

/// Evaluates a polynomial in `t` at a ring element.
pub fn eval_in<R: Ring>(p: &ParamPoly, t: &R) -> R {
    p.coeffs().iter().rev().fold(R::zero(), |acc, c| acc.times(t).plus(&R::from_scalar(c)))
}

fn pascal(rows: usize) -> Vec<Vec<GaussianRational>> {
    let mut table: Vec<Vec<GaussianRational>> = Vec::with_capacity(rows + 1);
    for n in 0..=rows {
        let mut row = vec![GaussianRational::one(); n + 1];
        for k in 1..n {
            row[k] = &table[n - 1][k - 1] + &table[n - 1][k];
        }
        table.push(row);
    }
    table
}

fn binomial(table: &[Vec<GaussianRational>], n: usize, k: usize) -> GaussianRational {
    if k > n {
        GaussianRational::zero()
    } else {
        table[n][k].clone()
    }
}

/// `A_{n,j}(t)` for `0 ≤ j < n`, as exact polynomials in `t`.
pub fn coefficient_table(constants: &StructureConstants, n_max: usize) -> Vec<Vec<ParamPoly>> {
    let binom = pascal(n_max + 2);
    let quarter_t_pow = powers(&ParamPoly::var(), n_max + 2);
    (0..=n_max).map(|n| (0..n).map(|j| a_entry(constants, &binom, &quarter_t_pow, n, j)).collect()).collect()
}

fn powers<R: Ring>(t: &R, n_max: usize) -> Vec<R> {
    let quarter_t = t.scaled(&GaussianRational::from_ratio(1, 4));
    let mut out = vec![R::one()];
    for k in 1..=n_max / 2 + 1 {
        out.push(out[k - 1].times(&quarter_t));
    }
    out
}

/// Three-indicator sum
/// `[n+1−j even](a·C(n,n+2−j) + d·C(n,n+1−j))·(t/4)^{(n+1−j)/2}
///  + [n−j even](b·C(n,n+1−j) + e·C(n,n−j))·(t/4)^{(n−j)/2}
///  + [n−1−j even]·c·C(n,n−j)·(t/4)^{(n−1−j)/2}`.
fn a_entry<R: Ring>(
    s: &StructureConstants,
    binom: &[Vec<GaussianRational>],
    quarter_t_pow: &[R],
    n: usize,
    j: usize,
) -> R {
    let c = |k: usize| binomial(binom, n, k);
    let mut sum = R::zero();
    let top = n + 1 - j;
    if top.is_multiple_of(2) {
        let w = &(&s.a * &c(n + 2 - j)) + &(&s.d * &c(n + 1 - j));
        sum = sum.plus(&quarter_t_pow[top / 2].scaled(&w));
        let w = &s.c * &c(n - j);
        sum = sum.plus(&quarter_t_pow[(top - 2) / 2].scaled(&w));
    } else {
        let w = &(&s.b * &c(n + 1 - j)) + &(&s.e * &c(n - j));
        sum = sum.plus(&quarter_t_pow[(top - 1) / 2].scaled(&w));
    }
    sum
}

/// Moments `μ_0..μ_{n_max}` with `t` given as an element of `R`.
pub fn moments_with<R: Ring>(constants: &StructureConstants, t: &R, n_max: usize) -> MomentSequence<R> {
    let binom = pascal(n_max + 2);
    let quarter_t_pow = powers(t, n_max + 2);
    let mut mu = vec![R::one()];
    for n in 0..n_max {
        let d_n = constants.d_n(n as i64);
        if d_n.is_zero() {
            return MomentSequence { mu, stalled_at: Some(n) };
        }
        let mut sum = mu[n].scaled(&constants.e_n(n as i64));
        for (j, moment) in mu.iter().enumerate().take(n) {
            let coeff = a_entry(constants, &binom, &quarter_t_pow, n, j);
            sum = sum.plus(&coeff.times(moment));
        }
        let inv = d_n.inv().expect("nonzero");
        mu.push(sum.scaled(&-inv));
    }
    MomentSequence::complete(mu)
}

fn add_shifted(acc: &mut Vec<BigInt>, p: &[BigInt], factor: &BigInt, shift: usize) {
    if factor.is_zero() {
        return;
    }
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, BigInt::zero());
    }
    for (k, c) in p.iter().enumerate() {
        acc[k + shift] += c * factor;
    }
}

/// The recursion over the integers for real rational constants with `t` symbolic: the pair is
/// scaled to integer coefficients, `s = t/4` replaces `t`, and `M_n = μ_n·∏_{k<n} d_k` is
/// carried in `ℤ[s]`, so no fraction is reduced until the final division.
fn moments_integral(constants: &StructureConstants, n_max: usize) -> Option<MomentSequence> {
    let values = [&constants.a, &constants.b, &constants.c, &constants.d, &constants.e];
    let reals: Vec<&Rational> = values.iter().map(|v| v.as_real()).collect::<Option<_>>()?;
    let lcm = reals.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = reals.iter().map(|r| (*r * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let [a, b, c, d, e] = [&ints[0], &ints[1], &ints[2], &ints[3], &ints[4]];
    let d_at = |n: usize| a * BigInt::from(n) + d;
    let e_at = |n: usize| b * BigInt::from(n) + e;
    let mut binom: Vec<Vec<BigInt>> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut row = vec![BigInt::one(); n + 1];
        for k in 1..n {
            row[k] = &binom[n - 1][k - 1] + &binom[n - 1][k];
        }
        binom.push(row);
    }
    let choose = |n: usize, k: usize| if k > n { BigInt::zero() } else { binom[n][k].clone() };
    let mut scaled: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    let mut products = vec![BigInt::one()];
    let mut stalled_at = None;
    for n in 0..n_max {
        let d_n = d_at(n);
        if d_n.is_zero() {
            stalled_at = Some(n);
            break;
        }
        let mut sum = Vec::new();
        add_shifted(&mut sum, &scaled[n], &e_at(n), 0);
        let mut ratio = BigInt::one();
        for j in (0..n).rev() {
            ratio *= d_at(j);
            let top = n + 1 - j;
            if top % 2 == 0 {
                let high = a * choose(n, n + 2 - j) + d * choose(n, n + 1 - j);
                add_shifted(&mut sum, &scaled[j], &(high * &ratio), top / 2);
                let low = c * choose(n, n - j);
                add_shifted(&mut sum, &scaled[j], &(low * &ratio), top / 2 - 1);
            } else {
                let w = b * choose(n, n + 1 - j) + e * choose(n, n - j);
                add_shifted(&mut sum, &scaled[j], &(w * &ratio), (top - 1) / 2);
            }
        }
        for v in sum.iter_mut() {
            *v = -std::mem::take(v);
        }
        while sum.last().is_some_and(Zero::is_zero) {
            sum.pop();
        }
        products.push(&products[n] * &d_n);
        scaled.push(sum);
    }
    let four = BigInt::from(4);
    let mu = scaled
        .iter()
        .zip(&products)
        .map(|(m, p)| {
            let mut scale = p.clone();
            let coeffs = m
                .iter()
                .map(|c| {
                    let v = Rational::new(c.clone(), scale.clone());
                    scale *= &four;
                    GaussianRational::real(v)
                })
                .collect();
            ParamPoly::from_coeffs(coeffs)
        })
        .collect();
    Some(MomentSequence { mu, stalled_at })
}

/// Moments of a centered pair as polynomials in `t = c²`.
pub fn moments_from_pearson(pair: &PearsonPair, n_max: usize) -> Result<MomentSequence, Error> {
    let constants = StructureConstants::from_pair(pair)?;
    Ok(moments_integral(&constants, n_max).unwrap_or_else(|| moments_with(&constants, &ParamPoly::var(), n_max)))
}

/// Moments of a centered pair at its own lattice slope.
pub fn moments_at(pair: &PearsonPair, n_max: usize) -> Result<MomentSequence<GaussianRational>, Error> {
    let constants = StructureConstants::from_pair(pair)?;
    Ok(moments_with(&constants, &pair.lattice().t(), n_max))
}

/// `⟨u, Σ c_k x^k⟩`.
pub fn pair_with<R: Ring>(mu: &[R], coeffs: &[R]) -> Result<R, Error> {
    if coeffs.len() > mu.len() {
        return Err(Error::InsufficientMoments { needed: coeffs.len(), available: mu.len() });
    }
    Ok(coeffs.iter().zip(mu).fold(R::zero(), |acc, (c, m)| acc.plus(&c.times(m))))
}

fn lift<R: Ring>(p: &Poly) -> Polynomial<R> {
    p.map_coeffs(R::from_scalar)
}

/// `Φ·D_X p + Ψ·S_X p` with coefficients in `R`, `t` given as an element of `R`.
fn pearson_image<R: Ring>(phi: &Poly, psi: &Poly, p: &Poly, t: &R) -> Polynomial<R> {
    let dx = dx_symbolic(p).map_coeffs(|c| eval_in(c, t));
    let sx = sx_symbolic(p).map_coeffs(|c| eval_in(c, t));
    lift::<R>(phi).mul(&dx).add(&lift::<R>(psi).mul(&sx))
}

/// `⟨u, Φ·D_X p + Ψ·S_X p⟩` with symbolic `t`.
pub fn pearson_residual(pair: &PearsonPair, ms: &MomentSequence, p: &Poly) -> Result<ParamPoly, Error> {
    pair.require_centered()?;
    let image = pearson_image(pair.phi(), pair.psi(), p, &ParamPoly::var());
    pair_with(&ms.mu, image.coeffs())
}

/// `⟨u, Φ·D_X p + Ψ·S_X p⟩` at the pair's own slope.
pub fn pearson_residual_at(
    pair: &PearsonPair,
    ms: &MomentSequence<GaussianRational>,
    p: &Poly,
) -> Result<GaussianRational, Error> {
    pair.require_centered()?;
    let image = pearson_image(pair.phi(), pair.psi(), p, &pair.lattice().t());
    pair_with(&ms.mu, image.coeffs())
}

/// Moments of the weak limit `t → 0`.
pub fn limit_moments(ms: &MomentSequence) -> MomentSequence<GaussianRational> {
    ms.at_t(&GaussianRational::zero())
}

/// `⟨u₀, φ·p′ + ψ·p⟩`.
pub fn continuous_pearson_residual(
    phi: &Poly,
    psi: &Poly,
    ms: &MomentSequence<GaussianRational>,
    p: &Poly,
) -> Result<GaussianRational, Error> {
    let image = phi.mul(&p.derivative()).add(&psi.mul(p));
    pair_with(&ms.mu, image.coeffs())
}

/// Transposed operator actions on moment sequences.
#[derive(Clone, Debug, PartialEq)]
pub enum DualAction<R> {
    /// `⟨p·u, q⟩ = ⟨u, p·q⟩`; output is shorter by `deg p`.
    Multiply(Poly),
    /// `⟨τ_β u, q⟩ = ⟨u, q(x + β)⟩`.
    Translate(GaussianRational),
    /// `⟨h_α u, q⟩ = ⟨u, q(αx)⟩`.
    Scale(GaussianRational),
    /// `⟨D_X u, q⟩ = −⟨u, D_X q⟩` with `t` given in `R`.
    DxTranspose(R),
    /// `⟨S_X u, q⟩ = ⟨u, S_X q⟩` with `t` given in `R`.
    SxTranspose(R),
}

/// Applies a dual action, returning as many moments as the input determines.
pub fn dual_action<R: Ring>(ms: &MomentSequence<R>, action: &DualAction<R>) -> Result<MomentSequence<R>, Error> {
    let len = ms.mu.len();
    let monomial = |n: usize| Poly::monomial(GaussianRational::one(), n);
    let mu = match action {
        DualAction::Multiply(p) => {
            let deg = p.degree().unwrap_or(0);
            if p.is_zero() {
                vec![R::zero(); len]
            } else {
                let count =
                    len.checked_sub(deg).ok_or(Error::InsufficientMoments { needed: deg + 1, available: len })?;
                let coeffs: Vec<R> = p.coeffs().iter().map(R::from_scalar).collect();
                (0..count).map(|n| pair_with(&ms.mu[n..], &coeffs)).collect::<Result<_, _>>()?
            }
        }
        DualAction::Translate(beta) => {
            let binom = pascal(len);
            let mut powers = vec![GaussianRational::one()];
            for k in 1..len {
                powers.push(&powers[k - 1] * beta);
            }
            (0..len)
                .map(|n| (0..=n).fold(R::zero(), |acc, k| acc.plus(&ms.mu[k].scaled(&(&binom[n][k] * &powers[n - k])))))
                .collect()
        }
        DualAction::Scale(alpha) => (0..len).map(|n| ms.mu[n].scaled(&alpha.pow(n as u32))).collect(),
        DualAction::DxTranspose(t) => (0..len)
            .map(|n| {
                let image = dx_symbolic(&monomial(n)).map_coeffs(|c| eval_in(c, t));
                pair_with(&ms.mu, image.coeffs()).map(|v| v.negated())
            })
            .collect::<Result<_, _>>()?,
        DualAction::SxTranspose(t) => (0..len)
            .map(|n| {
                let image = sx_symbolic(&monomial(n)).map_coeffs(|c| eval_in(c, t));
                pair_with(&ms.mu, image.coeffs())
            })
            .collect::<Result<_, _>>()?,
    };
    Ok(MomentSequence { mu, stalled_at: None })
}

/// Ring elements whose square matrices have computable determinants.
pub trait Determinant: Ring {
    fn determinant(matrix: Vec<Vec<Self>>) -> Self;
}

impl Determinant for GaussianRational {
    /// Gaussian elimination with row swaps.
    fn determinant(mut m: Vec<Vec<Self>>) -> Self {
        let n = m.len();
        let mut det = GaussianRational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return GaussianRational::zero();
            };
            if pivot != col {
                m.swap(pivot, col);
                det = -det;
            }
            let inv = m[col][col].inv().expect("nonzero pivot");
            det *= &m[col][col];
            let (top, rest) = m.split_at_mut(col + 1);
            eliminate(&top[col], rest, col, &inv);
        }
        det
    }
}

impl Determinant for ParamPoly {
    /// Fraction-free Bareiss elimination with exact division.
    fn determinant(mut m: Vec<Vec<Self>>) -> Self {
        let n = m.len();
        if n == 0 {
            return ParamPoly::one();
        }
        let mut sign = false;
        let mut previous = ParamPoly::one();
        for col in 0..n - 1 {
            let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return ParamPoly::zero();
            };
            if pivot != col {
                m.swap(pivot, col);
                sign = !sign;
            }
            for r in col + 1..n {
                for k in col + 1..n {
                    let num = m[col][col].mul(&m[r][k]).sub(&m[r][col].mul(&m[col][k]));
                    m[r][k] = num.exact_div(&previous).expect("Bareiss division is exact");
                }
                m[r][col] = ParamPoly::zero();
            }
            previous = m[col][col].clone();
        }
        let det = m[n - 1][n - 1].clone();
        if sign {
            det.neg()
        } else {
            det
        }
    }
}

/// `Δ_n = det(μ_{i+j})_{0 ≤ i,j ≤ n}`.
pub fn hankel_det<R: Determinant>(ms: &MomentSequence<R>, n: usize) -> Result<R, Error> {
    let needed = 2 * n + 1;
    if ms.mu.len() < needed {
        return Err(Error::InsufficientMoments { needed, available: ms.mu.len() });
    }
    let matrix = (0..=n).map(|i| (0..=n).map(|j| ms.mu[i + j].clone()).collect()).collect();
    Ok(R::determinant(matrix))
}

/// Subtracts multiples of `pivot_row` from `rows` to clear column `col`.
fn eliminate(pivot_row: &[GaussianRational], rows: &mut [Vec<GaussianRational>], col: usize, inv: &GaussianRational) {
    for row in rows {
        if row[col].is_zero() {
            continue;
        }
        let factor = &row[col] * inv;
        for (entry, pivot) in row[col..].iter_mut().zip(&pivot_row[col..]) {
            *entry -= &(&factor * pivot);
        }
    }
}

/// `Δ_0..Δ_n` from one elimination pass: while pivots are nonzero, `Δ_k = Δ_{k−1}·pivot_k`.
/// Minors past the first vanishing one are computed individually.
pub fn hankel_minors(ms: &MomentSequence<GaussianRational>, n: usize) -> Result<Vec<GaussianRational>, Error> {
    let needed = 2 * n + 1;
    if ms.mu.len() < needed {
        return Err(Error::InsufficientMoments { needed, available: ms.mu.len() });
    }
    let mut m: Vec<Vec<GaussianRational>> = (0..=n).map(|i| (0..=n).map(|j| ms.mu[i + j].clone()).collect()).collect();
    let mut minors = Vec::with_capacity(n + 1);
    let mut det = GaussianRational::one();
    for col in 0..=n {
        if m[col][col].is_zero() {
            break;
        }
        det *= &m[col][col];
        minors.push(det.clone());
        let inv = m[col][col].inv()?;
        let (top, rest) = m.split_at_mut(col + 1);
        eliminate(&top[col], rest, col, &inv);
    }
    if minors.len() <= n {
        minors.push(GaussianRational::zero());
        for k in minors.len()..=n {
            minors.push(hankel_det(ms, k)?);
        }
    }
    Ok(minors)
}

/// Monic `P_0..P_count` from `P_{n+1} = (x − a_n)P_n − b_n P_{n−1}`.
pub fn ops_from_recurrence<V: Ring>(rc: &RecurrenceCoefficients<V>, count: usize) -> Result<Vec<Polynomial<V>>, Error> {
    if count > rc.a.len() || count > rc.b.len() + 1 {
        return Err(Error::Invalid(format!("recurrence has {} coefficients, {count} requested", rc.a.len())));
    }
    let x = Polynomial::<V>::var();
    let mut polys = vec![Polynomial::<V>::one()];
    for n in 0..count {
        let shifted = x.sub(&Polynomial::constant(V::from_scalar(&rc.a[n])));
        let mut next = shifted.mul(&polys[n]);
        if n >= 1 {
            next = next.sub(&polys[n - 1].mul_coeff(&rc.b[n - 1]));
        }
        polys.push(next);
    }
    Ok(polys)
}

/// `⟨u, P_m·P_n⟩` for all pairs.
pub fn gram_check<R: Ring>(ms: &MomentSequence<R>, polys: &[Polynomial<R>]) -> Result<Vec<Vec<R>>, Error> {
    polys.iter().map(|p| polys.iter().map(|q| pair_with(&ms.mu, p.mul(q).coeffs())).collect()).collect()
}

/// `μ_0..μ_count` of the functional defined by a recurrence with `μ_0 = 1`, obtained by
/// expanding `x^k` in the orthogonal basis: `c'_j = c_{j−1} + a_j·c_j + b_{j+1}·c_{j+1}`.
pub fn moments_from_recurrence(
    a: &[GaussianRational],
    b: &[GaussianRational],
    count: usize,
) -> Result<Vec<GaussianRational>, Error> {
    let need_a = count.div_ceil(2);
    let need_b = count / 2;
    if a.len() < need_a || b.len() < need_b {
        return Err(Error::Invalid(format!(
            "moments up to {count} need {need_a} diagonal and {need_b} off-diagonal coefficients"
        )));
    }
    let mut c = vec![GaussianRational::one()];
    let mut mu = vec![GaussianRational::one()];
    for step in 1..=count {
        let width = step.min(count - step) + 1;
        let mut next = vec![GaussianRational::zero(); width];
        for (j, slot) in next.iter_mut().enumerate() {
            let mut v = GaussianRational::zero();
            if j >= 1 && j - 1 < c.len() {
                v += &c[j - 1];
            }
            if j < c.len() {
                v += &(&a[j] * &c[j]);
            }
            if j + 1 < c.len() {
                v += &(&b[j] * &c[j + 1]);
            }
            *slot = v;
        }
        mu.push(next[0].clone());
        c = next;
    }
    Ok(mu)
}
