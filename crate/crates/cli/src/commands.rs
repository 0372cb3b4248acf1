use lattice_opoly::atomic::{anchor_points, residual_check, string_weights, AtomicRepresentation};
use lattice_opoly::classify::classify as classify_pair;
use lattice_opoly::error::Error;
use lattice_opoly::locus::{emit_locus_csv, nonregularity_locus, LocusFamily};
use lattice_opoly::moments::{continuous_pearson_residual, limit_moments, moments_from_pearson};
use lattice_opoly::pearson::{kls_import, KlsParameters};
use lattice_opoly::recurrence::{recurrence_coeffs, recurrence_coeffs_symbolic, StructureConstants};
use lattice_opoly::{GaussianRational, PearsonPair, Poly};
use serde::Serialize;
use serde_json::{json, Value};

use crate::{Family, Outcome};

fn render(value: &impl Serialize) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable output");
    text.push('\n');
    text
}

fn done(value: Value) -> Result<Outcome, String> {
    Ok(Outcome { body: render(&value), finding: false })
}

fn finding(value: Value) -> Result<Outcome, String> {
    Ok(Outcome { body: render(&value), finding: true })
}

fn constants(pair: &PearsonPair) -> Result<StructureConstants, String> {
    StructureConstants::from_pair(pair).map_err(|e| e.to_string())
}

pub fn classify(pair: &PearsonPair) -> Result<Outcome, String> {
    match classify_pair(pair) {
        Ok(result) => done(serde_json::to_value(result).expect("serializable classification")),
        Err(e @ (Error::PhiZero | Error::PsiDegenerate)) => finding(json!({ "finding": e.to_string() })),
        Err(e) => Err(e.to_string()),
    }
}

pub fn recurrence(pair: &PearsonPair, count: usize, symbolic: bool) -> Result<Outcome, String> {
    let (value, regular) = if symbolic {
        let rc = recurrence_coeffs_symbolic(&constants(pair)?, count);
        (json!({ "a": rc.a, "b": rc.b, "regularity": rc.report, "t": "c^2" }), rc.report.is_regular())
    } else {
        let rc = recurrence_coeffs(pair, count).map_err(|e| e.to_string())?;
        (json!({ "a": rc.a, "b": rc.b, "regularity": rc.report, "t": pair.lattice().t() }), rc.report.is_regular())
    };
    if regular {
        done(value)
    } else {
        finding(value)
    }
}

pub fn moments(pair: &PearsonPair, count: usize) -> Result<Outcome, String> {
    let ms = moments_from_pearson(pair, count).map_err(|e| e.to_string())?;
    let at_slope = ms.at_t(&pair.lattice().t());
    let value = json!({
        "mu": ms.mu,
        "mu_at_slope": at_slope.mu,
        "stalled_at": ms.stalled_at,
        "t": pair.lattice().t(),
    });
    if ms.stalled_at.is_some() {
        finding(value)
    } else {
        done(value)
    }
}

pub fn limit(pair: &PearsonPair, count: usize) -> Result<Outcome, String> {
    let ms = limit_moments(&moments_from_pearson(pair, count).map_err(|e| e.to_string())?);
    let checked = ms.mu.len().saturating_sub(2);
    let mut nonzero = Vec::new();
    for k in 0..=checked {
        let residual =
            continuous_pearson_residual(pair.phi(), pair.psi(), &ms, &Poly::monomial(GaussianRational::one(), k))
                .map_err(|e| e.to_string())?;
        if !residual.is_zero() {
            nonzero.push(k);
        }
    }
    let value = json!({
        "mu": ms.mu,
        "residual": { "max_degree_checked": checked, "nonzero_degrees": nonzero },
        "stalled_at": ms.stalled_at,
    });
    if nonzero.is_empty() && ms.stalled_at.is_none() {
        done(value)
    } else {
        finding(value)
    }
}

pub fn atoms(pair: &PearsonPair, max_steps: usize) -> Result<Outcome, String> {
    if !pair.slope().is_one() {
        return Err(Error::UnitStepSlope.to_string());
    }
    let anchors = anchor_points(pair.phi(), pair.psi()).map_err(|e| e.to_string())?;
    if anchors.exact.is_empty() {
        return finding(json!({
            "approximate_anchors": anchors.approximate,
            "inexact_branch": true,
            "strings": [],
        }));
    }
    let strings = anchors
        .exact
        .iter()
        .map(|base| string_weights(pair.phi(), pair.psi(), base, max_steps))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let rep = AtomicRepresentation::new(strings).map_err(|e| e.to_string())?;
    let mut failing = Vec::new();
    let checked = rep.is_finite().then(|| 2 * rep.atom_count());
    if let Some(max_degree) = checked {
        for k in 0..=max_degree {
            let residual =
                residual_check(&rep, pair, &Poly::monomial(GaussianRational::one(), k)).map_err(|e| e.to_string())?;
            if !residual.is_zero() {
                failing.push(k);
            }
        }
    }
    let value = json!({
        "finite": rep.is_finite(),
        "inexact_branch": anchors.inexact_branch,
        "normalization": rep.normalization(),
        "residual_failures": failing,
        "residual_max_degree_checked": checked,
        "strings": rep.strings,
    });
    if failing.is_empty() {
        done(value)
    } else {
        finding(value)
    }
}

pub fn family(family: Family, alpha: &GaussianRational, beta: &GaussianRational) -> LocusFamily {
    match family {
        Family::Hermite => LocusFamily::Hermite,
        Family::Laguerre => LocusFamily::Laguerre { alpha: alpha.clone() },
        Family::Bessel => LocusFamily::Bessel { alpha: alpha.clone() },
        Family::Jacobi => LocusFamily::Jacobi { alpha: alpha.clone(), beta: beta.clone() },
    }
}

pub fn locus(constants: &StructureConstants, first: usize, last: usize) -> Result<Outcome, String> {
    let locus = nonregularity_locus(constants, first..=last);
    for skipped in &locus.skipped {
        eprintln!("skipped level {}: {}", skipped.level, skipped.reason);
    }
    let mut buffer = Vec::new();
    emit_locus_csv(&locus.points, &mut buffer).map_err(|e| e.to_string())?;
    Ok(Outcome { body: String::from_utf8(buffer).expect("csv is utf-8"), finding: false })
}

pub fn kls(params: KlsParameters) -> Result<Outcome, String> {
    let backward = params.backward_pair().map_err(|e| e.to_string())?;
    let centered = kls_import(&params).map_err(|e| e.to_string())?;
    let classification = match classify_pair(&centered) {
        Ok(result) => serde_json::to_value(result).expect("serializable classification"),
        Err(e) => json!({ "finding": e.to_string() }),
    };
    done(json!({ "backward": backward, "centered": centered, "classification": classification }))
}
