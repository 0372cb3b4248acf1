//! Independent moment oracle: solves the pairing conditions of a Pearson equation row by row,
//! with every row built from the lattice operators rather than from a closed-form table.

use crate::error::Error;
use crate::lattice::{backward_diff, dx_symbolic, forward_diff, sx_symbolic};
use crate::moments::MomentSequence;
use crate::pearson::{Form, PearsonPair};
use crate::poly::{ParamPoly, Poly, Polynomial};
use crate::scalar::GaussianRational;

fn monomial(m: usize) -> Poly {
    Poly::monomial(GaussianRational::one(), m)
}

fn constant_coeffs(p: &Poly) -> Polynomial<ParamPoly> {
    p.map_coeffs(|c| ParamPoly::constant(c.clone()))
}

/// The polynomial whose pairing with the functional vanishes, for test polynomial `x^m`.
fn pairing_row(pair: &PearsonPair, m: usize) -> Polynomial<ParamPoly> {
    let phi = constant_coeffs(pair.phi());
    let psi = constant_coeffs(pair.psi());
    let p = monomial(m);
    match pair.form() {
        Form::Centered => phi.mul(&dx_symbolic(&p)).add(&psi.mul(&sx_symbolic(&p))),
        Form::Forward => phi.mul(&constant_coeffs(&backward_diff(&p))).add(&psi.mul(&constant_coeffs(&p))),
        Form::Backward => phi.mul(&constant_coeffs(&forward_diff(&p))).add(&psi.mul(&constant_coeffs(&p))),
    }
}

/// `μ_0..μ_{n_max}` with `μ_0 = 1` from `⟨u, row_m⟩ = 0`, `m = 0, 1, …`, where row `m` has
/// degree `m + 1`. Centered rows use `Φ·D_X x^m + Ψ·S_X x^m`; forward rows `φ·∇x^m + ψ·x^m`;
/// backward rows `φ·Δx^m + ψ·x^m`.
pub fn solve_pairing_system(pair: &PearsonPair, n_max: usize) -> Result<MomentSequence, Error> {
    solve_rows(n_max, |m| pairing_row(pair, m))
}

/// [`solve_pairing_system`] with `t` fixed to the pair's own `c²`.
pub fn solve_pairing_system_at(pair: &PearsonPair, n_max: usize) -> Result<MomentSequence<GaussianRational>, Error> {
    let t = pair.lattice().t();
    let ms = solve_rows(n_max, |m| pairing_row(pair, m).map_coeffs(|c| ParamPoly::constant(c.eval(&t))))?;
    Ok(ms.at_t(&t))
}

fn solve_rows(n_max: usize, row_of: impl Fn(usize) -> Polynomial<ParamPoly>) -> Result<MomentSequence, Error> {
    let mut mu = vec![ParamPoly::one()];
    for m in 0..n_max {
        let row = row_of(m);
        let lead = row.coeff(m + 1);
        let pivot = lead.coeff(0);
        if lead.degree().is_some_and(|d| d > 0) {
            return Err(Error::Invalid(format!("pairing row {m} has a t-dependent leading coefficient")));
        }
        if pivot.is_zero() {
            return Ok(MomentSequence { mu, stalled_at: Some(m) });
        }
        let known = (0..=m).fold(ParamPoly::zero(), |acc, k| acc.add(&row.coeff(k).mul(&mu[k])));
        mu.push(known.scale(&-pivot.inv()?));
    }
    Ok(MomentSequence::complete(mu))
}

/// `⟨u, P⟩` of an `x`-polynomial with `t`-coefficients.
pub fn pair_symbolic(ms: &MomentSequence, p: &Polynomial<ParamPoly>) -> Result<ParamPoly, Error> {
    if p.coeffs().len() > ms.mu.len() {
        return Err(Error::InsufficientMoments { needed: p.coeffs().len(), available: ms.mu.len() });
    }
    Ok(p.coeffs().iter().zip(&ms.mu).fold(ParamPoly::zero(), |acc, (c, m)| acc.add(&c.mul(m))))
}
