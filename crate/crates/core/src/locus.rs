//! Slopes `c` at which a Pearson pair stops being regular.
//!
//! Level `n` fails when `φ^{[n]}(−e_n/d_{2n}) = 0`. This is linear in `t = c²`:
//! `t_n = −4·φ(−e_n/d_{2n})/(n·d_n)`, and both square roots of `t_n` are reported.

use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::poly::Poly;
use crate::recurrence::StructureConstants;
use crate::scalar::GaussianRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Branch {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Branch {
    pub fn symbol(self) -> &'static str {
        match self {
            Branch::Plus => "+",
            Branch::Minus => "-",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocusPoint {
    pub re: f64,
    pub im: f64,
    pub level: usize,
    pub branch: Branch,
    pub t_exact: GaussianRational,
}

impl LocusPoint {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// A level with no locus point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedLevel {
    pub level: usize,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Locus {
    pub points: Vec<LocusPoint>,
    pub skipped: Vec<SkippedLevel>,
}

/// Exact `t_n`, or the reason level `n` has none.
pub fn critical_t(constants: &StructureConstants, level: usize) -> Result<GaussianRational, String> {
    let n = level as i64;
    let d_even = constants.d_n(2 * n);
    if d_even.is_zero() {
        return Err(format!("d_{} = 0", 2 * n));
    }
    let weight = &GaussianRational::from_int(n) * &constants.d_n(n);
    if weight.is_zero() {
        return Err(if n == 0 { "n = 0".to_string() } else { format!("d_{n} = 0") });
    }
    let root = -&(&constants.e_n(n) / &d_even);
    let t = -&(&(&GaussianRational::from_int(4) * &constants.phi().eval(&root)) / &weight);
    if t.is_zero() {
        return Err("t = 0".to_string());
    }
    Ok(t)
}

fn without_negative_zero(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

/// Principal square root of `t` and its negative, `+` first, with zero parts unsigned.
pub fn square_roots(t: &GaussianRational) -> [Complex64; 2] {
    let (re, im) = t.to_f64_pair();
    let root = Complex64::new(re, im).sqrt();
    [root, -root].map(|z| Complex64::new(without_negative_zero(z.re), without_negative_zero(z.im)))
}

/// Locus points for every level in `levels`, ordered by `(level, branch)`.
pub fn nonregularity_locus(constants: &StructureConstants, levels: impl IntoIterator<Item = usize>) -> Locus {
    let mut locus = Locus::default();
    for level in levels {
        match critical_t(constants, level) {
            Ok(t) => {
                let [plus, minus] = square_roots(&t);
                for (branch, c) in [(Branch::Plus, plus), (Branch::Minus, minus)] {
                    locus.points.push(LocusPoint { re: c.re, im: c.im, level, branch, t_exact: t.clone() });
                }
            }
            Err(reason) => locus.skipped.push(SkippedLevel { level, reason }),
        }
    }
    locus
}

/// Writes `re,im,n,branch,t_exact` rows.
pub fn emit_locus_csv<W: Write>(points: &[LocusPoint], out: W) -> Result<(), Error> {
    let io = |e: csv::Error| Error::Invalid(e.to_string());
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(["re", "im", "n", "branch", "t_exact"]).map_err(io)?;
    let mut sorted: Vec<&LocusPoint> = points.iter().collect();
    sorted.sort_by_key(|p| (p.level, p.branch));
    for p in sorted {
        writer
            .write_record([
                p.re.to_string(),
                p.im.to_string(),
                p.level.to_string(),
                p.branch.symbol().to_string(),
                p.t_exact.to_string(),
            ])
            .map_err(io)?;
    }
    writer.flush().map_err(|e| Error::Invalid(e.to_string()))
}

/// Families with known closed-form loci.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum LocusFamily {
    /// `φ = 1`, `ψ = −2x`.
    Hermite,
    /// `φ = x`, `ψ = −x + α + 1`.
    Laguerre { alpha: GaussianRational },
    /// `φ = x²`, `ψ = (α + 2)x + 2`.
    Bessel { alpha: GaussianRational },
    /// `φ = 1 − x²`, `ψ = β − α − (α + β + 2)x`.
    Jacobi { alpha: GaussianRational, beta: GaussianRational },
}

impl LocusFamily {
    pub fn phi_psi(&self) -> (Poly, Poly) {
        let one = GaussianRational::one();
        let two = GaussianRational::from_int(2);
        match self {
            LocusFamily::Hermite => (Poly::one(), Poly::from_ints(&[0, -2])),
            LocusFamily::Laguerre { alpha } => (Poly::var(), Poly::from_coeffs(vec![alpha + &one, -one])),
            LocusFamily::Bessel { alpha } => {
                (Poly::monomial(one, 2), Poly::from_coeffs(vec![two.clone(), alpha + &two]))
            }
            LocusFamily::Jacobi { alpha, beta } => {
                (Poly::from_ints(&[1, 0, -1]), Poly::from_coeffs(vec![beta - alpha, -&(&(alpha + beta) + &two)]))
            }
        }
    }

    pub fn constants(&self) -> StructureConstants {
        let (phi, psi) = self.phi_psi();
        StructureConstants { a: phi.coeff(2), b: phi.coeff(1), c: phi.coeff(0), d: psi.coeff(1), e: psi.coeff(0) }
    }

    /// The `+` locus point at level `n` from the family's closed form.
    pub fn closed_form(&self, n: usize) -> Complex64 {
        let n = n as f64;
        let real = |v: &GaussianRational| v.to_f64_pair().0;
        let i = Complex64::i();
        match self {
            LocusFamily::Hermite => Complex64::new(2.0 / n, 0.0).sqrt(),
            LocusFamily::Laguerre { alpha } => 2.0 * Complex64::new((n + real(alpha) + 1.0) / n, 0.0).sqrt(),
            LocusFamily::Bessel { alpha } => {
                let a = real(alpha);
                4.0 * i / (Complex64::new(n * (n + a + 2.0), 0.0).sqrt() * (2.0 * n + a + 2.0))
            }
            LocusFamily::Jacobi { alpha, beta } => {
                let (a, b) = (real(alpha), real(beta));
                let ratio = (b - a) / (2.0 * n + a + b + 2.0);
                let t = -(4.0 / (n * (n + a + b + 2.0))) * (ratio * ratio - 1.0);
                Complex64::new(t, 0.0).sqrt()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::gq;

    #[test]
    fn hermite_level_two_is_unit() {
        let locus = nonregularity_locus(&LocusFamily::Hermite.constants(), [2]);
        assert_eq!(locus.points[0].t_exact, gq(1, 1));
        assert_eq!((locus.points[0].re, locus.points[0].im), (1.0, 0.0));
        assert_eq!((locus.points[1].re, locus.points[1].im), (-1.0, 0.0));
    }

    #[test]
    fn bessel_first_level() {
        let locus = nonregularity_locus(&LocusFamily::Bessel { alpha: gq(0, 1) }.constants(), [1]);
        assert_eq!(locus.points[0].t_exact, gq(-1, 3));
    }

    #[test]
    fn empty_range_writes_header() {
        let mut buf = Vec::new();
        emit_locus_csv(&[], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "re,im,n,branch,t_exact\n");
    }

    #[test]
    fn level_zero_is_skipped() {
        let locus = nonregularity_locus(&LocusFamily::Hermite.constants(), 0..=1);
        assert_eq!(locus.skipped, vec![SkippedLevel { level: 0, reason: "n = 0".into() }]);
        assert_eq!(locus.points.len(), 2);
    }
}
