//! Dense univariate polynomials over an exact coefficient ring.
//!
//! [`Poly`] is a polynomial in `x` over the Gaussian rationals; [`ParamPoly`] is the same
//! representation read as a polynomial in the formal variable `t = c²` (the squared lattice
//! slope). Polynomials in `x` whose coefficients are themselves polynomials in `t` are
//! written `Polynomial<ParamPoly>`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::scalar::GaussianRational;

/// Exact commutative coefficient ring with a Gaussian-rational scalar action.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scaled(&self, c: &GaussianRational) -> Self;
    fn from_scalar(c: &GaussianRational) -> Self;
}

impl Ring for GaussianRational {
    fn zero() -> Self {
        GaussianRational::zero()
    }
    fn one() -> Self {
        GaussianRational::one()
    }
    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, c: &GaussianRational) -> Self {
        self * c
    }
    fn from_scalar(c: &GaussianRational) -> Self {
        c.clone()
    }
}

/// Dense polynomial; `coeffs[k]` multiplies the k-th power. Trailing zeros are trimmed,
/// so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<R> {
    coeffs: Vec<R>,
}

/// Polynomial in `x` over the Gaussian rationals.
pub type Poly = Polynomial<GaussianRational>;

/// Polynomial in `t = c²` over the Gaussian rationals.
pub type ParamPoly = Polynomial<GaussianRational>;

impl<R: Ring> Polynomial<R> {
    pub fn from_coeffs(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(Ring::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(R::one())
    }

    pub fn constant(c: R) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c · var^k`.
    pub fn monomial(c: R, k: usize) -> Self {
        let mut coeffs = vec![R::zero(); k];
        coeffs.push(c);
        Self::from_coeffs(coeffs)
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::monomial(R::one(), 1)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// Coefficient of `var^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|k| match (self.coeffs.get(k), other.coeffs.get(k)) {
                (Some(a), Some(b)) => a.plus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => R::zero(),
            })
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Polynomial { coeffs: self.coeffs.iter().map(Ring::negated).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].plus(&a.times(b));
                }
            }
        }
        Self::from_coeffs(out)
    }

    /// Multiplies every coefficient by a ring element.
    pub fn mul_coeff(&self, c: &R) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.times(c)).collect())
    }

    /// Multiplies every coefficient by a scalar.
    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.scaled(c)).collect())
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = Self::one();
        for _ in 0..exp {
            result = result.mul(self);
        }
        result
    }

    /// Horner evaluation at a ring element.
    pub fn eval(&self, z: &R) -> R {
        self.coeffs.iter().rev().fold(R::zero(), |acc, c| acc.times(z).plus(c))
    }

    /// Formal derivative with respect to the variable.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scaled(&GaussianRational::from_int(k as i64)))
            .collect();
        Self::from_coeffs(coeffs)
    }

    /// `k`-th formal derivative.
    pub fn nth_derivative(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |p, _| p.derivative())
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> Polynomial<S> {
        Polynomial::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    /// Composition `self(inner(var))`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| acc.mul(inner).add(&Self::constant(c.clone())))
    }
}

impl<R: Ring> Ring for Polynomial<R> {
    fn zero() -> Self {
        Polynomial::zero()
    }
    fn one() -> Self {
        Polynomial::one()
    }
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn scaled(&self, c: &GaussianRational) -> Self {
        self.scale(c)
    }
    fn from_scalar(c: &GaussianRational) -> Self {
        Polynomial::constant(R::from_scalar(c))
    }
}

impl Poly {
    /// Builds a polynomial from small integer coefficients, lowest degree first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| GaussianRational::from_int(c)).collect())
    }

    /// `x ↦ p(x − β)`.
    pub fn translate(&self, beta: &GaussianRational) -> Self {
        let shifted = Poly::from_coeffs(vec![-beta, GaussianRational::one()]);
        self.compose(&shifted)
    }

    /// `x ↦ p(αx)`.
    pub fn scale_arg(&self, alpha: &GaussianRational) -> Self {
        let mut power = GaussianRational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &power);
            power = &power * alpha;
        }
        Self::from_coeffs(out)
    }

    /// Euclidean division: `self = q·divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), Error> {
        let lead = divisor.leading().ok_or(Error::DivisionByZero)?.inv()?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![GaussianRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dd] * &lead;
            if !q.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &(&q * d);
                }
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Exact quotient; fails if the remainder is nonzero.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, Error> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Invalid("polynomial division is not exact".into()))
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Scales to leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
        }
    }
}

impl Polynomial<Poly> {
    /// Substitutes a scalar for the inner variable of every coefficient.
    pub fn at_t(&self, t: &GaussianRational) -> Poly {
        self.map_coeffs(|c| c.eval(t))
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Polynomial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})·x"),
                _ => format!("({c})·x^{k}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

impl<R: fmt::Debug> fmt::Debug for Polynomial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let coeffs = Vec::<GaussianRational>::deserialize(deserializer)?;
        Ok(Poly::from_coeffs(coeffs))
    }
}

impl Poly {
    /// Parses a JSON array of coefficient strings, lowest degree first.
    pub fn from_json(text: &str) -> Result<Self, Error> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl<'a, R: Ring> Add<&'a Polynomial<R>> for &'a Polynomial<R> {
    type Output = Polynomial<R>;
    fn add(self, rhs: &Polynomial<R>) -> Polynomial<R> {
        Polynomial::add(self, rhs)
    }
}

impl<'a, R: Ring> Sub<&'a Polynomial<R>> for &'a Polynomial<R> {
    type Output = Polynomial<R>;
    fn sub(self, rhs: &Polynomial<R>) -> Polynomial<R> {
        Polynomial::sub(self, rhs)
    }
}

impl<'a, R: Ring> Mul<&'a Polynomial<R>> for &'a Polynomial<R> {
    type Output = Polynomial<R>;
    fn mul(self, rhs: &Polynomial<R>) -> Polynomial<R> {
        Polynomial::mul(self, rhs)
    }
}

impl<R: Ring> Neg for &Polynomial<R> {
    type Output = Polynomial<R>;
    fn neg(self) -> Polynomial<R> {
        Polynomial::neg(self)
    }
}
