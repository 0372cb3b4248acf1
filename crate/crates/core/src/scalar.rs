//! Exact rational and Gaussian-rational scalars with their canonical text forms.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Builds `num/den` as a reduced rational. Panics if `den == 0`.
pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `p`, `-p`, `+p` or `p/q` with decimal integers; `q` must be nonzero.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let bad = || Error::Parse(format!("malformed rational literal {text:?}"));
    let (num_part, den_part) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let unsigned = num_part.strip_prefix(['+', '-']).unwrap_or(num_part);
    if unsigned.is_empty() || !unsigned.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let num: BigInt = num_part.trim_start_matches('+').parse().map_err(|_| bad())?;
    let den: BigInt = match den_part {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            d.parse().map_err(|_| bad())?
        }
    };
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(num, den))
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Closest `f64` to an exact rational (saturating to ±inf for huge values).
pub fn rational_to_f64(r: &Rational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let num = r.numer();
    let den = r.denom();
    let shift = num.bits() as i64 - den.bits() as i64;
    let (n, d) =
        if shift > 0 { (num.clone(), den << (shift as usize)) } else { (num << ((-shift) as usize), den.clone()) };
    let mantissa = Rational::new(n, d).to_f64().unwrap_or(0.0);
    mantissa * 2f64.powi(shift.clamp(-2000, 2000) as i32)
}

/// Exact complex number with rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: Rational,
    im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational { re, im: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::real(rational(num, den))
    }

    pub fn i() -> Self {
        GaussianRational { re: Rational::zero(), im: Rational::one() }
    }

    pub fn zero() -> Self {
        GaussianRational::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.im.is_zero() && self.re.is_one()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Returns the value as a rational if the imaginary part vanishes.
    pub fn as_real(&self) -> Option<&Rational> {
        self.im.is_zero().then_some(&self.re)
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -&self.im }
    }

    /// Squared modulus `re² + im²`.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.im.is_zero() {
            return Ok(Self::real(self.re.recip()));
        }
        let n = self.norm_sqr();
        Ok(GaussianRational { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, Error> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Integer power allowing negative exponents; fails on `0^(-k)`.
    pub fn powi(&self, exp: i64) -> Result<Self, Error> {
        let p = self.pow(exp.unsigned_abs() as u32);
        if exp < 0 {
            p.inv()
        } else {
            Ok(p)
        }
    }

    /// Double-precision approximation `(re, im)`.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        (rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    /// Exact square root when both parts of the root are rational.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.im.is_zero() {
            let r = &self.re;
            if let Some(s) = rational_sqrt(&r.abs()) {
                return Some(if r.is_negative() {
                    GaussianRational { re: Rational::zero(), im: s }
                } else {
                    Self::real(s)
                });
            }
            return None;
        }
        // (x + iy)² = re + i·im  ⇒  x² = (re + |z|)/2, y = im/(2x)
        let modulus = rational_sqrt(&self.norm_sqr())?;
        let two = Rational::from_integer(BigInt::from(2));
        let x = rational_sqrt(&((&self.re + &modulus) / &two))?;
        if x.is_zero() {
            return None;
        }
        let y = &self.im / (&two * &x);
        Some(GaussianRational { re: x, im: y })
    }

    /// Parses the canonical text forms `p/q`, `r/si`, `p/q+r/si`, `i`, `-i`.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let s = text.trim();
        let bad = || Error::Parse(format!("malformed rational literal {text:?}"));
        if s.is_empty() {
            return Err(bad());
        }
        let Some(body) = s.strip_suffix('i') else {
            return Ok(Self::real(parse_rational(s)?));
        };
        let split =
            body.char_indices().rev().find(|&(idx, ch)| idx > 0 && (ch == '+' || ch == '-')).map(|(idx, _)| idx);
        let (re_text, im_text) = match split {
            Some(idx) => (&body[..idx], &body[idx..]),
            None => ("", body),
        };
        let re = if re_text.is_empty() { Rational::zero() } else { parse_rational(re_text)? };
        let im = match im_text {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            other => {
                if other.ends_with('/') || other.ends_with(['+', '-']) {
                    return Err(bad());
                }
                parse_rational(other)?
            }
        };
        Ok(GaussianRational { re, im })
    }
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return f.write_str(&format_rational(&self.re));
        }
        let im_abs = self.im.abs();
        let im_text = if im_abs.is_one() { String::new() } else { format_rational(&im_abs) };
        let sign = if self.im.is_negative() { "-" } else { "+" };
        if self.re.is_zero() {
            let lead = if self.im.is_negative() { "-" } else { "" };
            write!(f, "{lead}{im_text}i")
        } else {
            write!(f, "{}{sign}{im_text}i", format_rational(&self.re))
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GaussianRational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        GaussianRational::parse(s)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        GaussianRational::from_int(n)
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        GaussianRational::real(r)
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        GaussianRational::parse(&text).map_err(serde::de::Error::custom)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::real(&self.re + &rhs.re);
        }
        GaussianRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::real(&self.re - &rhs.re);
        }
        GaussianRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if self.is_zero() || rhs.is_zero() {
            return GaussianRational::zero();
        }
        match (self.im.is_zero(), rhs.im.is_zero()) {
            (true, true) => GaussianRational::real(&self.re * &rhs.re),
            (true, false) => GaussianRational { re: &self.re * &rhs.re, im: &self.re * &rhs.im },
            (false, true) => GaussianRational { re: &self.re * &rhs.re, im: &self.im * &rhs.re },
            (false, false) => GaussianRational {
                re: &self.re * &rhs.re - &self.im * &rhs.im,
                im: &self.re * &rhs.im + &self.im * &rhs.re,
            },
        }
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    /// Panics on division by zero; use [`GaussianRational::checked_div`] for fallible division.
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -&self.re, im: -&self.im }
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &GaussianRational) -> GaussianRational {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<GaussianRational> for &'a GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        if !rhs.im.is_zero() {
            self.im += &rhs.im;
        }
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        if !rhs.im.is_zero() {
            self.im -= &rhs.im;
        }
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self * rhs;
    }
}

/// Shorthand for a real Gaussian rational `num/den`.
pub fn gq(num: i64, den: i64) -> GaussianRational {
    GaussianRational::from_ratio(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_canonical_forms() {
        assert_eq!(GaussianRational::parse("3/4").unwrap(), gq(3, 4));
        assert_eq!(GaussianRational::parse("-6/8").unwrap(), gq(-3, 4));
        assert_eq!(GaussianRational::parse("i").unwrap(), GaussianRational::i());
        assert_eq!(GaussianRational::parse("-i").unwrap(), -GaussianRational::i());
        let z = GaussianRational::parse("1/2-3/5i").unwrap();
        assert_eq!(z.re(), &rational(1, 2));
        assert_eq!(z.im(), &rational(-3, 5));
        let w = GaussianRational::parse("-7/3i").unwrap();
        assert!(w.re().is_zero());
        assert_eq!(w.im(), &rational(-7, 3));
    }

    #[test]
    fn rejects_malformed_literals() {
        for bad in ["", "/", "1/", "/2", "1/0", "1.5", "--1", "1/2+", "1+-i", "1/2i3", "i+1", "1//2", "+-3"] {
            assert!(GaussianRational::parse(bad).is_err(), "{bad} should fail");
        }
    }

    #[test]
    fn display_round_trips() {
        for text in ["0", "5", "-5/3", "i", "-i", "2/3i", "1+i", "1/2-3/4i", "-2-i"] {
            let z = GaussianRational::parse(text).unwrap();
            assert_eq!(z.to_string(), text);
            assert_eq!(GaussianRational::parse(&z.to_string()).unwrap(), z);
        }
    }

    #[test]
    fn field_operations() {
        let a = GaussianRational::parse("1+2i").unwrap();
        let b = GaussianRational::parse("3-i").unwrap();
        assert_eq!(&a * &b, GaussianRational::parse("5+5i").unwrap());
        assert_eq!(&(&a / &b) * &b, a);
        assert!(GaussianRational::zero().inv().is_err());
        assert_eq!(GaussianRational::i().pow(2), gq(-1, 1));
        assert_eq!(gq(2, 1).powi(-3).unwrap(), gq(1, 8));
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(gq(9, 4).sqrt_exact(), Some(gq(3, 2)));
        assert_eq!(gq(-1, 16).sqrt_exact(), Some(GaussianRational::parse("1/4i").unwrap()));
        assert_eq!(gq(2, 1).sqrt_exact(), None);
        let z = GaussianRational::parse("3+4i").unwrap();
        let r = z.sqrt_exact().unwrap();
        assert_eq!(&r * &r, z);
    }

    #[test]
    fn huge_rationals_convert_to_finite_doubles() {
        let big = Rational::new(BigInt::from(10).pow(400), BigInt::from(10).pow(399) * 3);
        assert!((rational_to_f64(&big) - 10.0 / 3.0).abs() < 1e-12);
    }
}
