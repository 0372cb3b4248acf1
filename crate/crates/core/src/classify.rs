//! Reduction of centered Pearson pairs to the four canonical families.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::pearson::{affine_push, PearsonPair};
use crate::poly::Poly;
use crate::scalar::GaussianRational;

/// Canonical family with its parameters on the unit lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", content = "params", rename_all = "lowercase")]
pub enum CanonicalClass {
    /// `Φ = 1`, `Ψ = αx`.
    Hermite1 { alpha: GaussianRational },
    /// `Φ = x`, `Ψ = αx + β`.
    Laguerre1 { alpha: GaussianRational, beta: GaussianRational },
    /// `Φ = x²`, `Ψ = αx + β`.
    Bessel1 { alpha: GaussianRational, beta: GaussianRational },
    /// `Φ = x² − γ`, `Ψ = αx + β`, `γ ≠ 0`.
    Jacobi1 { alpha: GaussianRational, beta: GaussianRational, gamma: GaussianRational },
}

impl CanonicalClass {
    pub fn name(&self) -> &'static str {
        match self {
            CanonicalClass::Hermite1 { .. } => "hermite1",
            CanonicalClass::Laguerre1 { .. } => "laguerre1",
            CanonicalClass::Bessel1 { .. } => "bessel1",
            CanonicalClass::Jacobi1 { .. } => "jacobi1",
        }
    }

    /// All parameters in declaration order.
    pub fn parameters(&self) -> Vec<&GaussianRational> {
        match self {
            CanonicalClass::Hermite1 { alpha } => vec![alpha],
            CanonicalClass::Laguerre1 { alpha, beta } | CanonicalClass::Bessel1 { alpha, beta } => vec![alpha, beta],
            CanonicalClass::Jacobi1 { alpha, beta, gamma } => vec![alpha, beta, gamma],
        }
    }

    /// The canonical `(Φ, Ψ)` on the unit lattice.
    pub fn canonical_pair(&self) -> PearsonPair {
        let (phi, psi) = match self {
            CanonicalClass::Hermite1 { alpha } => (Poly::one(), Poly::monomial(alpha.clone(), 1)),
            CanonicalClass::Laguerre1 { alpha, beta } => {
                (Poly::var(), Poly::from_coeffs(vec![beta.clone(), alpha.clone()]))
            }
            CanonicalClass::Bessel1 { alpha, beta } => {
                (Poly::monomial(GaussianRational::one(), 2), Poly::from_coeffs(vec![beta.clone(), alpha.clone()]))
            }
            CanonicalClass::Jacobi1 { alpha, beta, gamma } => (
                Poly::from_coeffs(vec![-gamma, GaussianRational::zero(), GaussianRational::one()]),
                Poly::from_coeffs(vec![beta.clone(), alpha.clone()]),
            ),
        };
        PearsonPair::centered(phi, psi, GaussianRational::one()).expect("canonical pairs are admissible")
    }
}

/// The map `x ↦ scale·x + xi` carrying the input functional to its canonical representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineReduction {
    pub xi: GaussianRational,
    pub scale: GaussianRational,
}

impl AffineReduction {
    /// Applies the reduction to a pair on the matching lattice.
    pub fn apply(&self, pair: &PearsonPair) -> Result<PearsonPair, Error> {
        affine_push(pair, &self.scale, &self.xi)
    }

    /// Pushes a canonical pair back to the original lattice.
    pub fn invert(&self, canonical: &PearsonPair) -> Result<PearsonPair, Error> {
        let slope = self.scale.inv().map_err(|_| Error::NonInvertibleHomothety)?;
        let shift = -&(&slope * &self.xi);
        affine_push(canonical, &slope, &shift)
    }
}

/// Map `x ↦ scale·x + shift` relating two functionals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineMap {
    pub scale: GaussianRational,
    pub shift: GaussianRational,
}

impl AffineMap {
    pub fn identity() -> Self {
        AffineMap { scale: GaussianRational::one(), shift: GaussianRational::zero() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    #[serde(flatten)]
    pub class: CanonicalClass,
    pub reduction: AffineReduction,
}

/// Classifies a centered pair `φ = ax² + bx + c`, `ψ = dx + e` on slope `c`.
pub fn classify(pair: &PearsonPair) -> Result<Classification, Error> {
    pair.require_centered()?;
    let slope = pair.slope().clone();
    let phi = pair.phi();
    let psi = pair.psi();
    let (a, b, c) = (phi.coeff(2), phi.coeff(1), phi.coeff(0));
    let (d, e) = (psi.coeff(1), psi.coeff(0));
    if phi.is_zero() {
        return Err(Error::PhiZero);
    }
    let two = GaussianRational::from_int(2);
    let four = GaussianRational::from_int(4);
    let (class, xi) = if a.is_zero() && b.is_zero() {
        if d.is_zero() {
            return Err(Error::PsiDegenerate);
        }
        let alpha = &(&d / &c) * &(&slope * &slope);
        (CanonicalClass::Hermite1 { alpha }, &e / &(&d * &slope))
    } else if a.is_zero() {
        let alpha = &(&d / &b) * &slope;
        let beta = &(&(&b * &e) - &(&d * &c)) / &(&b * &b);
        (CanonicalClass::Laguerre1 { alpha, beta }, &c / &(&b * &slope))
    } else {
        let discriminant = &(&b * &b) - &(&four * &(&a * &c));
        let alpha = &d / &a;
        let beta = &(&(&two * &(&a * &e)) - &(&b * &d)) / &(&two * &(&(&a * &a) * &slope));
        let xi = &b / &(&two * &(&a * &slope));
        if discriminant.is_zero() {
            (CanonicalClass::Bessel1 { alpha, beta }, xi)
        } else {
            let gamma = &discriminant / &(&four * &(&(&a * &a) * &(&slope * &slope)));
            (CanonicalClass::Jacobi1 { alpha, beta, gamma }, xi)
        }
    };
    let scale = slope.inv()?;
    Ok(Classification { class, reduction: AffineReduction { xi, scale } })
}

/// Result of comparing two pairs under affine equivalence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Equivalence {
    pub equivalent: bool,
    /// Map sending the first functional to the second, present when equivalent.
    pub witness: Option<AffineMap>,
}

/// Two pairs are equivalent iff they reduce to the same canonical parameters. The witness is
/// `x ↦ (c_B/c_A)·x + c_B(ξ_A − ξ_B)`.
pub fn equivalent(first: &PearsonPair, second: &PearsonPair) -> Result<Equivalence, Error> {
    let a = classify(first)?;
    let b = classify(second)?;
    if a.class != b.class {
        return Ok(Equivalence { equivalent: false, witness: None });
    }
    let slope_b = second.slope();
    let scale = slope_b / first.slope();
    let shift = slope_b * &(&a.reduction.xi - &b.reduction.xi);
    Ok(Equivalence { equivalent: true, witness: Some(AffineMap { scale, shift }) })
}

/// The canonical pair of `class` pushed back to the lattice described by `reduction`.
pub fn reconstruct(classification: &Classification) -> Result<PearsonPair, Error> {
    classification.reduction.invert(&classification.class.canonical_pair())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::gq;

    fn centered(phi: &[i64], psi: &[i64]) -> PearsonPair {
        PearsonPair::centered(Poly::from_ints(phi), Poly::from_ints(psi), gq(1, 1)).unwrap()
    }

    #[test]
    fn hermite_fixed_point() {
        let c = classify(&centered(&[1], &[0, 1])).unwrap();
        assert_eq!(c.class, CanonicalClass::Hermite1 { alpha: gq(1, 1) });
        assert_eq!(c.reduction.xi, gq(0, 1));
        assert_eq!(c.reduction.scale, gq(1, 1));
    }

    #[test]
    fn scope_errors() {
        assert_eq!(classify(&centered(&[], &[1, 1])), Err(Error::PhiZero));
        assert_eq!(classify(&centered(&[3], &[1])), Err(Error::PsiDegenerate));
    }

    #[test]
    fn reconstruction_is_proportional() {
        for (phi, psi) in
            [(&[2i64][..], &[1i64, 3][..]), (&[1, 2], &[5, -1]), (&[1, 2, 1], &[0, 3]), (&[-1, 0, 1], &[2, 7])]
        {
            let pair = PearsonPair::centered(Poly::from_ints(phi), Poly::from_ints(psi), gq(2, 3)).unwrap();
            let c = classify(&pair).unwrap();
            assert!(reconstruct(&c).unwrap().is_proportional_to(&pair), "{phi:?} {psi:?}");
        }
    }

    #[test]
    fn json_shape() {
        let c = classify(&centered(&[-1, 0, 1], &[1, 2])).unwrap();
        let text = serde_json::to_string(&c).unwrap();
        assert!(text.starts_with(r#"{"class":"jacobi1","params":{"#), "{text}");
        let back: Classification = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
    }
}
