//! Pearson pairs in centered, forward-difference and backward-difference form.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::lattice::LinearLattice;
use crate::poly::Poly;
use crate::scalar::GaussianRational;

/// Which functional equation a pair encodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    /// `D_X(φu) = S_X(ψu)`.
    #[default]
    Centered,
    /// `Δ(φu) = ψu` on the unit lattice.
    Forward,
    /// `∇(φu) = ψu` on the unit lattice.
    Backward,
}

/// `(φ, ψ)` with `deg φ ≤ 2`, `deg ψ ≤ 1`, not both zero, attached to a form and a lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PearsonPair {
    phi: Poly,
    psi: Poly,
    form: Form,
    lattice: LinearLattice,
}

#[derive(Deserialize)]
struct PairInput {
    phi: Poly,
    psi: Poly,
    #[serde(default)]
    form: Form,
    #[serde(default = "LinearLattice::unit")]
    lattice: LinearLattice,
}

impl PearsonPair {
    pub fn new(phi: Poly, psi: Poly, form: Form, lattice: LinearLattice) -> Result<Self, Error> {
        if phi.degree().is_some_and(|d| d > 2) {
            return Err(Error::DegreeBound(format!("deg phi = {} > 2", phi.degree().unwrap())));
        }
        if psi.degree().is_some_and(|d| d > 1) {
            return Err(Error::DegreeBound(format!("deg psi = {} > 1", psi.degree().unwrap())));
        }
        if phi.is_zero() && psi.is_zero() {
            return Err(Error::BothZero);
        }
        lattice.validate()?;
        Ok(PearsonPair { phi, psi, form, lattice })
    }

    /// Centered pair on the lattice with the given slope and zero intercept.
    pub fn centered(phi: Poly, psi: Poly, slope: GaussianRational) -> Result<Self, Error> {
        Self::new(phi, psi, Form::Centered, LinearLattice::with_slope(slope)?)
    }

    /// Parses `{"phi": [...], "psi": [...], "form": "...", "lattice": {"c": "...", "d": "..."}}`.
    /// `form` defaults to centered and `lattice` to the unit lattice.
    pub fn from_json(text: &str) -> Result<Self, Error> {
        let input: PairInput = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::new(input.phi, input.psi, input.form, input.lattice)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("pair serializes")
    }

    pub fn phi(&self) -> &Poly {
        &self.phi
    }

    pub fn psi(&self) -> &Poly {
        &self.psi
    }

    pub fn form(&self) -> Form {
        self.form
    }

    pub fn lattice(&self) -> &LinearLattice {
        &self.lattice
    }

    pub fn slope(&self) -> &GaussianRational {
        self.lattice.slope()
    }

    pub fn require_centered(&self) -> Result<(), Error> {
        if self.form == Form::Centered {
            Ok(())
        } else {
            Err(Error::NotCentered)
        }
    }

    /// True iff `other = λ·self` for a nonzero scalar `λ`, with equal form and lattice slope.
    pub fn is_proportional_to(&self, other: &PearsonPair) -> bool {
        if self.form != other.form || self.slope() != other.slope() {
            return false;
        }
        let mine = [&self.phi, &self.psi];
        let theirs = [&other.phi, &other.psi];
        let pivot = mine.iter().zip(theirs.iter()).find_map(|(p, q)| {
            p.coeffs().iter().zip(q.coeffs()).find(|(a, _)| !a.is_zero()).map(|(a, b)| (a.clone(), b.clone()))
        });
        let Some((a, b)) = pivot else { return false };
        if b.is_zero() {
            return false;
        }
        let ratio = &b / &a;
        mine.iter().zip(theirs.iter()).all(|(p, q)| p.scale(&ratio) == **q)
    }
}

/// Converts a unit-step pair to centered form: forward gives `Φ = 2φ + ψ`, backward gives
/// `Φ = 2φ − ψ`; both give `Ψ = 2ψ`.
pub fn to_centered(pair: &PearsonPair) -> Result<PearsonPair, Error> {
    let two = GaussianRational::from_int(2);
    let phi2 = pair.phi.scale(&two);
    let big_phi = match pair.form {
        Form::Centered => return Err(Error::AlreadyCentered),
        Form::Forward => phi2.add(&pair.psi),
        Form::Backward => phi2.sub(&pair.psi),
    };
    if !pair.slope().is_one() {
        return Err(Error::UnitStepSlope);
    }
    PearsonPair::new(big_phi, pair.psi.scale(&two), Form::Centered, pair.lattice.clone())
}

/// Converts a centered pair on the unit lattice to forward `(2Φ − Ψ, 2Ψ)` or backward
/// `(2Φ + Ψ, 2Ψ)` form. Composing with [`to_centered`] multiplies the pair by 4.
pub fn from_centered(pair: &PearsonPair, target: Form) -> Result<PearsonPair, Error> {
    pair.require_centered()?;
    if !pair.slope().is_one() {
        return Err(Error::UnitStepSlope);
    }
    let two = GaussianRational::from_int(2);
    let phi2 = pair.phi.scale(&two);
    let phi = match target {
        Form::Centered => return Err(Error::AlreadyCentered),
        Form::Forward => phi2.sub(&pair.psi),
        Form::Backward => phi2.add(&pair.psi),
    };
    PearsonPair::new(phi, pair.psi.scale(&two), target, pair.lattice.clone())
}

/// Pair satisfied by the image of the functional under `x ↦ βx + α`:
/// `φ' = β·τ_α(h_{1/β} φ)`, `ψ' = τ_α(h_{1/β} ψ)` on the lattice with slope `βc`, intercept `βd`.
pub fn affine_push(
    pair: &PearsonPair,
    beta: &GaussianRational,
    alpha: &GaussianRational,
) -> Result<PearsonPair, Error> {
    pair.require_centered()?;
    let inv = beta.inv().map_err(|_| Error::NonInvertibleHomothety)?;
    let phi = pair.phi.scale_arg(&inv).translate(alpha).scale(beta);
    let psi = pair.psi.scale_arg(&inv).translate(alpha);
    let lattice = LinearLattice::new(beta * pair.slope(), beta * pair.lattice.intercept())?;
    PearsonPair::new(phi, psi, Form::Centered, lattice)
}

/// Parameters of the backward-difference scheme
/// `φ(x) = e(x−1)² + 2f(x−1) + g`, `ψ(x) = 2ε(x−1) + γ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KlsParameters {
    pub e: GaussianRational,
    pub f: GaussianRational,
    pub g: GaussianRational,
    pub epsilon: GaussianRational,
    pub gamma: GaussianRational,
}

impl KlsParameters {
    /// The backward-form pair on the unit lattice.
    pub fn backward_pair(&self) -> Result<PearsonPair, Error> {
        let shift = Poly::from_ints(&[-1, 1]);
        let two = GaussianRational::from_int(2);
        let phi =
            shift.mul(&shift).scale(&self.e).add(&shift.scale(&(&two * &self.f))).add(&Poly::constant(self.g.clone()));
        let psi = shift.scale(&(&two * &self.epsilon)).add(&Poly::constant(self.gamma.clone()));
        PearsonPair::new(phi, psi, Form::Backward, LinearLattice::unit())
    }
}

/// Centered pair of the backward scheme:
/// `Φ = 2e(x−1)² + (4f − 2ε)(x−1) + (2g − γ)`, `Ψ = 4ε(x−1) + 2γ`.
pub fn kls_import(params: &KlsParameters) -> Result<PearsonPair, Error> {
    to_centered(&params.backward_pair()?)
}
