//! Hausdorff-Young checks, coefficient decay, the discreteness constant,
//! Sobolev-Besicovitch norms and parent-regularity verdicts.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{QpError, Result};
use crate::independence::q_independent;
use crate::number_field::FieldScalar;
use crate::qp::{self, euclidean, GridFunction, LatticeVec, ParentSpectrum, TrigPolynomial};

/// Default per-decade relative-increment threshold for series probes.
pub const DEFAULT_DECADE_THRESHOLD: f64 = 0.05;

/// Tolerance for the Hausdorff-Young comparison.
pub const HY_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Direction {
    /// `‖f‖_q ≤ (Σ|f̂|^{q′})^{1/q′}`
    Le,
    /// `‖f‖_q ≥ (Σ|f̂|^{q′})^{1/q′}`
    Ge,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HYReport {
    pub q: f64,
    /// `None` stands for `q′ = ∞`.
    pub q_conjugate: Option<f64>,
    /// `‖f‖_q`.
    pub lhs: f64,
    /// `ℓ^{q′}` norm of the coefficients.
    pub rhs: f64,
    pub direction: Direction,
    pub holds: bool,
    /// Signed margin in the required direction; negative means violated.
    pub slack: f64,
    pub tolerance: f64,
}

/// `(Σ|c|^{q′})^{1/q′}`, or `max|c|` when `q′ = ∞`.
pub fn coefficient_norm(coeffs: impl Iterator<Item = Complex64>, q_conjugate: Option<f64>) -> f64 {
    match q_conjugate {
        None => coeffs.map(|c| c.norm()).fold(0.0, f64::max),
        Some(p) => coeffs.map(|c| c.norm().powf(p)).sum::<f64>().powf(1.0 / p),
    }
}

pub fn conjugate_exponent(q: f64) -> Option<f64> {
    (q > 1.0).then(|| q / (q - 1.0))
}

/// Compares `‖f‖_q` with the `ℓ^{q′}` norm of the coefficients. For
/// `q < 2` the norm must dominate, for `q > 2` it must be dominated, and at
/// `q = 2` the two must agree.
pub fn hausdorff_young_check(f: &TrigPolynomial, q: f64, grid: usize) -> Result<HYReport> {
    if !(q.is_finite() && q >= 1.0) {
        return Err(QpError::InvalidParameter(format!(
            "need 1 <= q < ∞, got {q}"
        )));
    }
    let lhs = qp::besicovitch_norm(f, q, grid)?;
    let q_conjugate = conjugate_exponent(q);
    let rhs = coefficient_norm(f.terms().map(|(_, c)| *c), q_conjugate);
    let (direction, slack) = if q < 2.0 {
        (Direction::Ge, lhs - rhs)
    } else if q > 2.0 {
        (Direction::Le, rhs - lhs)
    } else {
        (Direction::Le, -(rhs - lhs).abs())
    };
    Ok(HYReport {
        q,
        q_conjugate,
        lhs,
        rhs,
        direction,
        holds: slack >= -HY_TOLERANCE,
        slack,
        tolerance: HY_TOLERANCE,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HolderViolation {
    pub k: LatticeVec,
    pub frequency_norm: f64,
    pub coefficient_abs: f64,
    pub bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HolderReport {
    pub eta: f64,
    pub c: f64,
    pub checked: usize,
    pub holds: bool,
    pub violations: Vec<HolderViolation>,
}

/// Checks `|f̂(β)| ≤ (C/2)|β|^{−η}` at every stored nonzero frequency.
pub fn holder_decay_bound(f: &TrigPolynomial, eta: f64, c: f64) -> Result<HolderReport> {
    if !(eta > 0.0 && eta <= 1.0) || !(c > 0.0) {
        return Err(QpError::InvalidParameter(
            "need 0 < η <= 1 and C > 0".into(),
        ));
    }
    let mut checked = 0;
    let mut violations = Vec::new();
    for (k, coeff) in f.terms() {
        let beta = squared_norm(&f.frequency(k)).to_f64().sqrt();
        if beta == 0.0 {
            continue;
        }
        checked += 1;
        let bound = 0.5 * c * beta.powf(-eta);
        if coeff.norm() > bound {
            violations.push(HolderViolation {
                k: k.clone(),
                frequency_norm: beta,
                coefficient_abs: coeff.norm(),
                bound,
            });
        }
    }
    Ok(HolderReport {
        eta,
        c,
        checked,
        holds: violations.is_empty(),
        violations,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Omega1Estimate {
    pub delta: f64,
    pub lower: f64,
    pub upper: f64,
    /// Net point realising the lower bound.
    pub argmax_t: Vec<f64>,
}

/// `ω₁(f, δ) = sup_{|t|≤δ} 𝓜|f(·+t) − f|`, bracketed.
///
/// Each mean is the torus integral of `|F(·+Pᵀt) − F|`, evaluated by the
/// rectangle rule with a Lipschitz error bar. The net runs along each
/// coordinate axis with `net` points on `[0, δ]`. The upper bound is the
/// smaller of `Σ|f̂(λ)| min(2, 2π|λ|δ)` and, for `d = 1`, the net maximum
/// plus its own Lipschitz gap.
pub fn omega1_estimate(
    f: &TrigPolynomial,
    delta: f64,
    grid: usize,
    net: usize,
) -> Result<Omega1Estimate> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(QpError::InvalidParameter("δ must be positive".into()));
    }
    if net < 2 {
        return Err(QpError::InvalidParameter(
            "net needs at least 2 points".into(),
        ));
    }
    let parent = qp::lift(f)?;
    let d = f.matrix().d();
    let freqs: Vec<(LatticeVec, Vec<f64>, Complex64)> = parent
        .iter()
        .map(|(k, c)| (k.clone(), f.matrix().apply_rounded(k), *c))
        .collect();
    let lam_norm = |lam: &[f64]| lam.iter().map(|x| x * x).sum::<f64>().sqrt();
    let lip_t: f64 = freqs
        .iter()
        .map(|(_, lam, c)| 2.0 * PI * lam_norm(lam) * c.norm())
        .sum();
    let coeff_bound: f64 = freqs
        .iter()
        .map(|(_, lam, c)| c.norm() * (2.0 * PI * lam_norm(lam) * delta).min(2.0))
        .sum();

    let ts: Vec<Vec<f64>> = (0..d)
        .flat_map(|axis| {
            (0..net).map(move |i| {
                let mut t = vec![0.0; d];
                t[axis] = delta * i as f64 / (net - 1) as f64;
                t
            })
        })
        .collect();
    let brackets: Vec<(f64, f64)> = ts
        .par_iter()
        .map(|t| {
            let diff = ParentSpectrum::new(
                parent.n(),
                freqs.iter().map(|(k, lam, c)| {
                    let phase: f64 = lam.iter().zip(t).map(|(l, ti)| l * ti).sum();
                    (k.clone(), c * (crate::numeric::unit_phase(phase) - 1.0))
                }),
            )?;
            if diff.is_empty() {
                return Ok((0.0, 0.0));
            }
            let g = GridFunction::from_spectrum(&diff, grid)?;
            let mean = g.mean_of(|v| v.norm());
            let err: f64 = 2.0 * PI / grid as f64
                * diff
                    .iter()
                    .map(|(k, c)| c.norm() * k.iter().map(|x| x.unsigned_abs() as f64).sum::<f64>())
                    .sum::<f64>();
            Ok(((mean - err).max(0.0), mean + err))
        })
        .collect::<Result<_>>()?;
    let (best, lower) =
        brackets.iter().enumerate().fold(
            (0, 0.0f64),
            |acc, (i, b)| if b.0 > acc.1 { (i, b.0) } else { acc },
        );
    let mut upper = coeff_bound;
    if d == 1 {
        let net_max = brackets.iter().map(|b| b.1).fold(0.0, f64::max);
        upper = upper.min(net_max + lip_t * delta / (2.0 * (net - 1) as f64));
    }
    Ok(Omega1Estimate {
        delta,
        lower,
        upper: upper.max(lower),
        argmax_t: ts[best].clone(),
    })
}

fn squared_norm(v: &[FieldScalar]) -> FieldScalar {
    v.iter().fold(FieldScalar::zero(), |acc, x| {
        acc.checked_add(&x.checked_mul(x).expect("same field"))
            .expect("same field")
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscretenessConstant {
    /// `D′ = min_{k≠0} ‖Pk‖/‖k‖` over the stored spectrum.
    pub value: f64,
    /// `D′²`, exact.
    pub squared: FieldScalar,
    pub argmin: LatticeVec,
}

/// The minimum of `‖Pk‖₂/‖k‖₂` over stored `k ≠ 0`, compared exactly
/// through the squares.
pub fn discreteness_constant(f: &TrigPolynomial) -> Result<DiscretenessConstant> {
    let mut best: Option<(FieldScalar, LatticeVec)> = None;
    for (k, _) in f.terms() {
        let kk: i64 = k.iter().map(|x| x * x).sum();
        if kk == 0 {
            continue;
        }
        let ratio = squared_norm(&f.frequency(k)).checked_div(&FieldScalar::from_int(kk))?;
        let better = match &best {
            None => true,
            Some((b, _)) => ratio.checked_cmp(b)? == std::cmp::Ordering::Less,
        };
        if better {
            best = Some((ratio, k.clone()));
        }
    }
    let (squared, argmin) = best.ok_or(QpError::EmptySpectrum)?;
    Ok(DiscretenessConstant {
        value: squared.to_f64().sqrt(),
        squared,
        argmin,
    })
}

/// `(Σ (1+|λ|²)^{sq′/2} |f̂(λ)|^{q′})^{1/q′}`.
pub fn sobolev_besicovitch_norm(f: &TrigPolynomial, s: f64, q: f64) -> Result<f64> {
    if !(q > 1.0 && q.is_finite()) {
        return Err(QpError::InvalidParameter(format!("need q > 1, got {q}")));
    }
    if !(s >= 0.0 && s.is_finite()) {
        return Err(QpError::InvalidParameter(format!("need s >= 0, got {s}")));
    }
    let qc = q / (q - 1.0);
    let sum: f64 = f
        .terms()
        .map(|(k, c)| {
            let l2 = squared_norm(&f.frequency(k)).to_f64();
            (1.0 + l2).powf(s * qc / 2.0) * c.norm().powf(qc)
        })
        .sum();
    Ok(sum.powf(1.0 / qc))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "mode", rename_all = "UPPERCASE")]
pub enum RegularityMode {
    Holder { r: i64, eta: f64 },
    Sobolev { s: f64, q: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "failure", rename_all = "snake_case")]
pub enum RegularityFailure {
    DependentBasis { witness: Vec<i64> },
    NeedsOneDimensional { d: usize },
    OrderTooLow { r: i64, n: usize },
    EtaOutOfRange { eta: f64 },
    QNotAboveOne { q: f64 },
    SobolevGapTooSmall { gap: f64 },
    NotDiscrete { k: LatticeVec },
    EmptySpectrum,
}

/// Partial sum over the stored spectrum, probed at radii `R` and `2R`
/// where `R` bounds the support. `convergent` is not part of the verdict.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeriesEntry {
    pub order: u32,
    pub partial_sum: f64,
    pub convergent: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegularityVerdict {
    pub mode: RegularityMode,
    pub n: usize,
    pub hypothesis_r: Option<i64>,
    pub hypothesis_eta: Option<f64>,
    pub d_prime: Option<f64>,
    pub guaranteed_class: Option<i64>,
    pub checked_series: Vec<SeriesEntry>,
    pub failures: Vec<RegularityFailure>,
}

/// Checks the hypotheses of the regularity transfer on the stored spectrum
/// and, when they hold, reports the guaranteed smoothness class of the
/// parent together with the partial sums `Σ|k|^m|F̂(k)|` that certify it.
pub fn parent_regularity_verdict(f: &TrigPolynomial, mode: RegularityMode) -> RegularityVerdict {
    let p = f.matrix();
    let n = p.n();
    let mut failures = Vec::new();
    let qv = q_independent(p);
    if !qv.independent {
        failures.push(RegularityFailure::DependentBasis {
            witness: qv.witness.unwrap_or_default(),
        });
    }
    let (hypothesis_r, hypothesis_eta, class) = match mode {
        RegularityMode::Holder { r, eta } => {
            if p.d() != 1 {
                failures.push(RegularityFailure::NeedsOneDimensional { d: p.d() });
            }
            if r <= n as i64 {
                failures.push(RegularityFailure::OrderTooLow { r, n });
            }
            if !(eta > 0.0 && eta < 1.0) {
                failures.push(RegularityFailure::EtaOutOfRange { eta });
            }
            (Some(r), Some(eta), r - n as i64)
        }
        RegularityMode::Sobolev { s, q } => {
            if !(q > 1.0) {
                failures.push(RegularityFailure::QNotAboveOne { q });
            }
            let gap = s - n as f64 / q;
            if !(gap > 1.0) {
                failures.push(RegularityFailure::SobolevGapTooSmall { gap });
            }
            (None, None, largest_integer_below(gap))
        }
    };
    let d_prime = match discreteness_constant(f) {
        Ok(dc) => {
            if dc.squared.is_zero() {
                failures.push(RegularityFailure::NotDiscrete {
                    k: dc.argmin.clone(),
                });
            }
            Some(dc.value)
        }
        Err(_) => {
            failures.push(RegularityFailure::EmptySpectrum);
            None
        }
    };
    let mut checked_series = Vec::new();
    if failures.is_empty() {
        let parent = qp::lift(f).expect("independence checked");
        let rmax = parent.iter().map(|(k, _)| euclidean(k)).fold(0.0, f64::max);
        let radii = [rmax, 2.0 * rmax];
        for order in 0..=class.max(0) as u32 {
            let probe = series_probe(&parent, order, 1.0, &radii, DEFAULT_DECADE_THRESHOLD);
            checked_series.push(SeriesEntry {
                order,
                partial_sum: probe.rows.last().map_or(0.0, |r| r.partial_sum),
                convergent: probe.convergent,
            });
        }
    }
    let guaranteed_class = failures.is_empty().then_some(class);
    RegularityVerdict {
        mode,
        n,
        hypothesis_r,
        hypothesis_eta,
        d_prime,
        guaranteed_class,
        checked_series,
        failures,
    }
}

/// Largest integer strictly below `x`.
fn largest_integer_below(x: f64) -> i64 {
    x.ceil() as i64 - 1
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeRow {
    pub radius: f64,
    pub partial_sum: f64,
    pub terms: usize,
    /// `(S_i − S_{i−1}) / S_{i−1}` relative to the previous radius.
    pub relative_increment: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeriesProbe {
    pub order: u32,
    pub power: f64,
    pub rows: Vec<ProbeRow>,
    /// Last relative increment within `threshold × decades` of the previous radius.
    pub convergent: bool,
    pub threshold_per_decade: f64,
    /// Least-squares slope of the partial sums against `ln R`.
    pub log_fit_slope: Option<f64>,
}

/// Partial sums of `Σ_{0<‖k‖≤R} ‖k‖^m |F̂(k)|` at each radius.
pub fn derivative_series_probe(parent: &ParentSpectrum, order: u32, radii: &[f64]) -> SeriesProbe {
    series_probe(parent, order, 1.0, radii, DEFAULT_DECADE_THRESHOLD)
}

/// Partial sums of `Σ_{0<‖k‖≤R} ‖k‖^m |F̂(k)|^power`. Each shell between
/// consecutive radii is summed in index order, shells in parallel, so the
/// result does not depend on scheduling.
pub fn series_probe(
    parent: &ParentSpectrum,
    order: u32,
    power: f64,
    radii: &[f64],
    threshold: f64,
) -> SeriesProbe {
    let mut radii: Vec<f64> = radii.to_vec();
    radii.sort_by(f64::total_cmp);
    let mut terms: Vec<(f64, f64)> = parent
        .iter()
        .map(|(k, c)| (euclidean(k), c.norm()))
        .filter(|(r, _)| *r > 0.0)
        .map(|(r, a)| (r, r.powi(order as i32) * a.powf(power)))
        .collect();
    terms.sort_by(|a, b| a.0.total_cmp(&b.0));
    let bounds: Vec<usize> = radii
        .iter()
        .map(|&r| terms.partition_point(|t| t.0 <= r))
        .collect();
    let shells: Vec<f64> = (0..radii.len())
        .into_par_iter()
        .map(|i| {
            let lo = if i == 0 { 0 } else { bounds[i - 1] };
            terms[lo..bounds[i]].iter().map(|t| t.1).sum()
        })
        .collect();
    let mut rows = Vec::with_capacity(radii.len());
    let mut acc = 0.0;
    for (i, (&radius, shell)) in radii.iter().zip(&shells).enumerate() {
        let prev = acc;
        acc += shell;
        rows.push(ProbeRow {
            radius,
            partial_sum: acc,
            terms: bounds[i],
            relative_increment: (i > 0 && prev > 0.0).then(|| (acc - prev) / prev),
        });
    }
    let convergent = match rows.len() {
        0 | 1 => true,
        l => {
            let (a, b) = (&rows[l - 2], &rows[l - 1]);
            let decades = (b.radius / a.radius).log10().max(0.0);
            match b.relative_increment {
                Some(inc) => inc <= threshold * decades,
                None => b.partial_sum == a.partial_sum,
            }
        }
    };
    SeriesProbe {
        order,
        power,
        convergent,
        threshold_per_decade: threshold,
        log_fit_slope: log_fit(&rows),
        rows,
    }
}

fn log_fit(rows: &[ProbeRow]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.radius > 0.0)
        .map(|r| (r.radius.ln(), r.partial_sum))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}
