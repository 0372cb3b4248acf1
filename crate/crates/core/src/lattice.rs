//! Divided-difference operators on the linear lattice `X(s) = c·s + d`.
//!
//! `D_X p(x) = [p(x + c/2) − p(x − c/2)]/c` and `S_X p(x) = [p(x + c/2) + p(x − c/2)]/2` are
//! evaluated through their finite Taylor expansions, which keep the slope symbolic: only even
//! powers of `c` survive, so the results are polynomials in `x` with coefficients in `t = c²`.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::poly::{ParamPoly, Poly, Polynomial};
use crate::scalar::{GaussianRational, Rational};

/// Linear lattice `X(s) = slope·s + intercept` with nonzero slope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearLattice {
    #[serde(rename = "c")]
    slope: GaussianRational,
    #[serde(rename = "d", default)]
    intercept: GaussianRational,
}

impl LinearLattice {
    pub fn new(slope: GaussianRational, intercept: GaussianRational) -> Result<Self, Error> {
        if slope.is_zero() {
            return Err(Error::DegenerateLattice);
        }
        Ok(LinearLattice { slope, intercept })
    }

    /// The normalized lattice `X₀(s) = s`.
    pub fn unit() -> Self {
        LinearLattice { slope: GaussianRational::one(), intercept: GaussianRational::zero() }
    }

    pub fn with_slope(slope: GaussianRational) -> Result<Self, Error> {
        Self::new(slope, GaussianRational::zero())
    }

    pub fn slope(&self) -> &GaussianRational {
        &self.slope
    }

    pub fn intercept(&self) -> &GaussianRational {
        &self.intercept
    }

    /// `t = c²`.
    pub fn t(&self) -> GaussianRational {
        &self.slope * &self.slope
    }

    pub(crate) fn validate(&self) -> Result<(), Error> {
        if self.slope.is_zero() {
            Err(Error::DegenerateLattice)
        } else {
            Ok(())
        }
    }
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

/// Collects `Σ_e c^e · q_e(x)` (indexed by the power `e` of the slope) into a polynomial in `x`
/// with coefficients in `t = c²`. Panics if an odd power of the slope carries a nonzero term.
fn fold_even_slope_powers(terms: Vec<(usize, Poly)>) -> Polynomial<ParamPoly> {
    let width = terms.iter().filter_map(|(_, q)| q.degree()).max().map_or(0, |d| d + 1);
    let mut coeffs = vec![ParamPoly::zero(); width];
    for (power, q) in terms {
        if q.is_zero() {
            continue;
        }
        assert!(power % 2 == 0, "odd power c^{power} survived in a lattice operator expansion");
        for (m, c) in q.coeffs().iter().enumerate() {
            coeffs[m] = coeffs[m].add(&ParamPoly::monomial(c.clone(), power / 2));
        }
    }
    Polynomial::from_coeffs(coeffs)
}

/// Taylor weight of `p^{(k)}` in `p(x + c/2) + sign·p(x − c/2)`, as a rational multiple of `c^k`.
fn shift_weight(k: usize, sign: i32) -> Rational {
    let parity = if k.is_multiple_of(2) { 1 } else { -1 };
    let numer = 1 + sign * parity;
    if numer == 0 {
        return Rational::from_integer(BigInt::from(0));
    }
    Rational::new(BigInt::from(numer), factorial(k) * (BigInt::one() << k))
}

/// `D_X p` with symbolic slope: `Σ_j (t/4)^j/(2j+1)! · p^{(2j+1)}`.
pub fn dx_symbolic(p: &Poly) -> Polynomial<ParamPoly> {
    let deg = p.degree().unwrap_or(0);
    let mut terms = Vec::new();
    let mut derivative = p.derivative();
    for k in 1..=deg {
        // [p(x+h) − p(x−h)]/c contributes c^{k−1} · w_k · p^{(k)}
        let w = GaussianRational::real(shift_weight(k, -1));
        terms.push((k - 1, derivative.scale(&w)));
        derivative = derivative.derivative();
    }
    fold_even_slope_powers(terms)
}

/// `S_X p` with symbolic slope: `Σ_j (t/4)^j/(2j)! · p^{(2j)}`.
pub fn sx_symbolic(p: &Poly) -> Polynomial<ParamPoly> {
    let deg = p.degree().unwrap_or(0);
    let half = GaussianRational::from_ratio(1, 2);
    let mut terms = Vec::new();
    let mut derivative = p.clone();
    for k in 0..=deg {
        let w = GaussianRational::real(shift_weight(k, 1));
        terms.push((k, derivative.scale(&(&w * &half))));
        derivative = derivative.derivative();
    }
    fold_even_slope_powers(terms)
}

/// `D_X p` on a concrete lattice.
pub fn dx_apply(p: &Poly, lattice: &LinearLattice) -> Result<Poly, Error> {
    lattice.validate()?;
    Ok(dx_symbolic(p).at_t(&lattice.t()))
}

/// `S_X p` on a concrete lattice.
pub fn sx_apply(p: &Poly, lattice: &LinearLattice) -> Result<Poly, Error> {
    lattice.validate()?;
    Ok(sx_symbolic(p).at_t(&lattice.t()))
}

/// `Δp(x) = p(x+1) − p(x)`.
pub fn forward_diff(p: &Poly) -> Poly {
    p.translate(&GaussianRational::from_int(-1)).sub(p)
}

/// `∇p(x) = p(x) − p(x−1)`.
pub fn backward_diff(p: &Poly) -> Poly {
    p.sub(&p.translate(&GaussianRational::one()))
}

/// `D_X p = (τ_{−c/2} p − τ_{c/2} p)/c`, computed with two translations.
pub fn dx_by_translations(p: &Poly, lattice: &LinearLattice) -> Result<Poly, Error> {
    lattice.validate()?;
    let h = &lattice.slope * &GaussianRational::from_ratio(1, 2);
    let diff = p.translate(&-&h).sub(&p.translate(&h));
    Ok(diff.scale(&lattice.slope.inv()?))
}

/// `S_X p = (τ_{−c/2} p + τ_{c/2} p)/2`, computed with two translations.
pub fn sx_by_translations(p: &Poly, lattice: &LinearLattice) -> Result<Poly, Error> {
    lattice.validate()?;
    let h = &lattice.slope * &GaussianRational::from_ratio(1, 2);
    let sum = p.translate(&-&h).add(&p.translate(&h));
    Ok(sum.scale(&GaussianRational::from_ratio(1, 2)))
}

/// True iff the Taylor-sum operators agree with their translation representations and are
/// unchanged under `c ↦ −c` and under any shift of the intercept.
pub fn operator_shape_check(p: &Poly, lattice: &LinearLattice) -> Result<bool, Error> {
    let dx = dx_apply(p, lattice)?;
    let sx = sx_apply(p, lattice)?;
    if dx != dx_by_translations(p, lattice)? || sx != sx_by_translations(p, lattice)? {
        return Ok(false);
    }
    let flipped = LinearLattice::new(-&lattice.slope, lattice.intercept.clone())?;
    let shifted = LinearLattice::new(lattice.slope.clone(), &lattice.intercept + &GaussianRational::from_ratio(7, 3))?;
    for other in [flipped, shifted] {
        if dx_apply(p, &other)? != dx || sx_apply(p, &other)? != sx {
            return Ok(false);
        }
        if dx_by_translations(p, &other)? != dx || sx_by_translations(p, &other)? != sx {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::gq;

    fn lat(c: i64) -> LinearLattice {
        LinearLattice::with_slope(gq(c, 1)).unwrap()
    }

    #[test]
    fn dx_examples() {
        assert!(dx_apply(&Poly::one(), &lat(3)).unwrap().is_zero());
        assert_eq!(dx_apply(&Poly::var(), &lat(2)).unwrap(), Poly::one());
        // D_X x³ = 3x² + t/4
        let cube = dx_symbolic(&Poly::monomial(gq(1, 1), 3));
        assert_eq!(cube.coeff(2), ParamPoly::constant(gq(3, 1)));
        assert_eq!(cube.coeff(0), ParamPoly::monomial(gq(1, 4), 1));
        assert!(cube.coeff(1).is_zero());
    }

    #[test]
    fn sx_examples() {
        assert_eq!(sx_apply(&Poly::one(), &lat(5)).unwrap(), Poly::one());
        assert_eq!(sx_apply(&Poly::var(), &lat(5)).unwrap(), Poly::var());
        let sq = sx_symbolic(&Poly::monomial(gq(1, 1), 2));
        assert_eq!(sq.coeff(2), ParamPoly::one());
        assert_eq!(sq.coeff(0), ParamPoly::monomial(gq(1, 4), 1));
    }

    #[test]
    fn unit_differences() {
        let sq = Poly::monomial(gq(1, 1), 2);
        assert_eq!(forward_diff(&sq), Poly::from_ints(&[1, 2]));
        assert_eq!(backward_diff(&sq), Poly::from_ints(&[-1, 2]));
    }

    #[test]
    fn degenerate_lattice_rejected() {
        assert_eq!(LinearLattice::with_slope(gq(0, 1)), Err(Error::DegenerateLattice));
    }

    #[test]
    fn shape_examples() {
        let cube = Poly::monomial(gq(1, 1), 3);
        let a = LinearLattice::new(gq(2, 1), gq(0, 1)).unwrap();
        let b = LinearLattice::new(gq(2, 1), gq(5, 1)).unwrap();
        assert_eq!(dx_apply(&cube, &a).unwrap(), dx_apply(&cube, &b).unwrap());
        assert!(operator_shape_check(&cube, &a).unwrap());
        assert!(operator_shape_check(&Poly::monomial(gq(1, 1), 4), &lat(3)).unwrap());
        assert!(operator_shape_check(&Poly::monomial(gq(1, 1), 4), &lat(-3)).unwrap());
        assert!(operator_shape_check(&Poly::zero(), &lat(1)).unwrap());
    }
}
