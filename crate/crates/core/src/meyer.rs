//! The golden-ratio cut-and-project scheme: the band
//! `𝓑 = {(m, n) : m + nφ′ ∈ W}`, its physical projection `Λ = {m + nφ}`
//! (a Meyer set) and internal projection `Λ′ = {m + nφ′} ⊂ W`, and the
//! quasi-periodic functions built on them.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{QpError, Result};
use crate::number_field::{parse_rational, FieldScalar, FrequencyMatrix};
use crate::qp::{ParentSpectrum, TrigPolynomial};

const PHI: f64 = 1.618_033_988_749_895;
const PHI_CONJ: f64 = -0.618_033_988_749_894_9;

/// `φ′ = (1 − √5)/2`.
pub fn golden_conjugate() -> FieldScalar {
    FieldScalar::golden_ratio().conjugate()
}

/// An interval of the internal space with exact rational endpoints.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Window {
    pub lo: FieldScalar,
    pub hi: FieldScalar,
    pub closed_lo: bool,
    pub closed_hi: bool,
}

impl Default for Window {
    /// `[−1/2, 1/2)`.
    fn default() -> Self {
        Window::half_open(
            FieldScalar::from_ratio(-1, 2),
            FieldScalar::from_ratio(1, 2),
        )
        .expect("nonempty")
    }
}

impl Window {
    pub fn new(lo: FieldScalar, hi: FieldScalar, closed_lo: bool, closed_hi: bool) -> Result<Self> {
        if lo.checked_cmp(&hi)? != Ordering::Less {
            return Err(QpError::EmptyWindow(format!(
                "need lo < hi, got [{lo}, {hi}]"
            )));
        }
        Ok(Window {
            lo,
            hi,
            closed_lo,
            closed_hi,
        })
    }

    /// `[lo, hi)`.
    pub fn half_open(lo: FieldScalar, hi: FieldScalar) -> Result<Self> {
        Window::new(lo, hi, true, false)
    }

    /// `[lo, hi]`.
    pub fn closed(lo: FieldScalar, hi: FieldScalar) -> Result<Self> {
        Window::new(lo, hi, true, true)
    }

    /// Parses `"lo:hi"` into `[lo, hi)`; endpoints are decimals or `p/q`.
    pub fn parse(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once(':')
            .ok_or_else(|| QpError::Parse(format!("window {s:?} is not of the form lo:hi")))?;
        Window::half_open(
            FieldScalar::rational(parse_rational(a)?),
            FieldScalar::rational(parse_rational(b)?),
        )
    }

    pub fn contains(&self, x: &FieldScalar) -> bool {
        let lo = x.checked_cmp(&self.lo).expect("same field");
        let hi = x.checked_cmp(&self.hi).expect("same field");
        (lo == Ordering::Greater || (self.closed_lo && lo == Ordering::Equal))
            && (hi == Ordering::Less || (self.closed_hi && hi == Ordering::Equal))
    }

    /// `max(|lo|, |hi|)`.
    pub fn reach(&self) -> f64 {
        self.lo.to_f64().abs().max(self.hi.to_f64().abs())
    }

    /// Integers `m` with `m + shift ∈ W`, as an inclusive range.
    fn integer_range(&self, shift: &FieldScalar) -> (BigInt, BigInt) {
        let lo = self.lo.checked_sub(shift).expect("same field");
        let hi = self.hi.checked_sub(shift).expect("same field");
        let mut first = -((-&lo).floor());
        if !self.closed_lo && lo.is_integer() {
            first += 1;
        }
        let mut last = hi.floor();
        if !self.closed_hi && hi.is_integer() {
            last -= 1;
        }
        (first, last)
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.closed_lo { '[' } else { '(' };
        let r = if self.closed_hi { ']' } else { ')' };
        write!(f, "{l}{}, {}{r}", self.lo, self.hi)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BandPoint {
    pub m: i64,
    pub n: i64,
    /// `m + nφ`.
    pub physical: f64,
    /// `m + nφ′`.
    pub internal: f64,
}

impl BandPoint {
    fn new(m: i64, n: i64) -> Self {
        BandPoint {
            m,
            n,
            physical: m as f64 + n as f64 * PHI,
            internal: m as f64 + n as f64 * PHI_CONJ,
        }
    }

    pub fn physical_exact(&self) -> FieldScalar {
        &FieldScalar::from_int(self.m) + &FieldScalar::golden_ratio().scale_int(self.n)
    }

    pub fn internal_exact(&self) -> FieldScalar {
        &FieldScalar::from_int(self.m) + &golden_conjugate().scale_int(self.n)
    }

    pub fn norm(&self) -> f64 {
        ((self.m as f64).powi(2) + (self.n as f64).powi(2)).sqrt()
    }

    pub fn is_origin(&self) -> bool {
        self.m == 0 && self.n == 0
    }
}

/// Band points with `√(m² + n²) ≤ radius`, sorted by physical value.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BandSet {
    pub window: Window,
    pub radius: f64,
    pub points: Vec<BandPoint>,
}

impl BandSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Points other than `(0, 0)`.
    pub fn nonzero(&self) -> impl Iterator<Item = &BandPoint> {
        self.points.iter().filter(|p| !p.is_origin())
    }

    /// The sub-band inside a smaller disc.
    pub fn restricted(&self, radius: f64) -> BandSet {
        let r2 = radius * radius;
        BandSet {
            window: self.window.clone(),
            radius: radius.min(self.radius),
            points: self
                .points
                .iter()
                .filter(|p| ((p.m * p.m + p.n * p.n) as f64) <= r2)
                .cloned()
                .collect(),
        }
    }

    pub fn physical(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.physical).collect()
    }

    /// Physical half-width `X` such that every point of `Λ ∩ [−X, X]` is
    /// enumerated. From `‖A⁻¹‖_F = 1` for `A = (1 φ; 1 φ′)` one has
    /// `√(m²+n²) ≤ √(x² + x′²)`, so `X = √(R² − reach(W)²)`.
    pub fn covered_half_width(&self) -> f64 {
        let w = self.window.reach();
        (self.radius * self.radius - w * w).max(0.0).sqrt()
    }
}

/// Enumerates the band row by row: for each `n` the admissible `m` form an
/// interval computed exactly, which is then clipped to the disc.
pub fn enumerate_band(window: &Window, radius: f64) -> Result<BandSet> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(QpError::InvalidParameter(
            "band radius must be positive".into(),
        ));
    }
    let r = radius.floor() as i64;
    let r2 = radius * radius;
    let phi_c = golden_conjugate();
    let mut points: Vec<BandPoint> = (-r..=r)
        .into_par_iter()
        .flat_map_iter(|n| {
            let (first, last) = window.integer_range(&phi_c.scale_int(n));
            let span = (r2 - (n as f64).powi(2)).max(0.0).sqrt().floor() as i64;
            let first = first
                .max(BigInt::from(-span))
                .to_i64()
                .expect("clipped to the disc");
            let last = last
                .min(BigInt::from(span))
                .to_i64()
                .expect("clipped to the disc");
            (first..=last.max(first - 1))
                .filter(move |&m| ((m * m + n * n) as f64) <= r2)
                .map(move |m| BandPoint::new(m, n))
        })
        .collect();
    points.sort_by(|a, b| {
        a.physical.total_cmp(&b.physical).then_with(|| {
            a.physical_exact()
                .checked_cmp(&b.physical_exact())
                .expect("same field")
        })
    });
    Ok(BandSet {
        window: window.clone(),
        radius,
        points,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityReport {
    pub length: f64,
    pub trials: usize,
    pub min_count: usize,
    pub max_count: usize,
    /// `min_count / L`.
    pub c_low: f64,
    /// `max_count / L`.
    pub c_high: f64,
    /// Smallest gap between consecutive points of `Λ ∩ [−X, X]`.
    pub min_gap: f64,
    pub covered_half_width: f64,
}

/// Counts `#(Λ ∩ [a, a+L])` for `trials` evenly spaced `a` inside the fully
/// enumerated range `[−X, X − L]`.
pub fn meyer_density_check(band: &BandSet, length: f64, trials: usize) -> Result<DensityReport> {
    if !(length > 0.0) || trials == 0 {
        return Err(QpError::InvalidParameter(
            "need L > 0 and at least one trial".into(),
        ));
    }
    let x = band.covered_half_width();
    if 2.0 * x <= length {
        return Err(QpError::InsufficientTruncation {
            radius: band.radius,
            reason: format!(
                "covered physical range [-{x:.3}, {x:.3}] is shorter than L = {length}"
            ),
        });
    }
    let lam: Vec<f64> = band
        .physical()
        .into_iter()
        .filter(|v| v.abs() <= x)
        .collect();
    let span = 2.0 * x - length;
    let counts: Vec<usize> = (0..trials)
        .map(|i| {
            let a = -x
                + if trials == 1 {
                    0.0
                } else {
                    span * i as f64 / (trials - 1) as f64
                };
            lam.partition_point(|&v| v <= a + length) - lam.partition_point(|&v| v < a)
        })
        .collect();
    let min_count = *counts.iter().min().expect("trials > 0");
    let max_count = *counts.iter().max().expect("trials > 0");
    let min_gap = lam
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min);
    Ok(DensityReport {
        length,
        trials,
        min_count,
        max_count,
        c_low: min_count as f64 / length,
        c_high: max_count as f64 / length,
        min_gap,
        covered_half_width: x,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Comparability {
    /// `min |m + nφ| / √(m² + n²)`.
    pub c_low: f64,
    /// `max |m + nφ| / √(m² + n²)`.
    pub c_high: f64,
    /// `max(c_high, 1/c_low)`.
    pub constant: f64,
    pub argmin: (i64, i64),
    pub argmax: (i64, i64),
}

/// Extremes of `|m + nφ| / √(m² + n²)` over the band without the origin.
pub fn golden_comparability(band: &BandSet) -> Result<Comparability> {
    let mut lo: Option<(f64, (i64, i64))> = None;
    let mut hi: Option<(f64, (i64, i64))> = None;
    for p in band.nonzero() {
        let ratio = p.physical.abs() / p.norm();
        if lo.map_or(true, |(v, _)| ratio < v) {
            lo = Some((ratio, (p.m, p.n)));
        }
        if hi.map_or(true, |(v, _)| ratio > v) {
            hi = Some((ratio, (p.m, p.n)));
        }
    }
    let ((c_low, argmin), (c_high, argmax)) = lo.zip(hi).ok_or(QpError::EmptySpectrum)?;
    Ok(Comparability {
        c_low,
        c_high,
        constant: c_high.max(1.0 / c_low),
        argmin,
        argmax,
    })
}

fn golden_matrix(second: FieldScalar) -> FrequencyMatrix {
    FrequencyMatrix::row(vec![FieldScalar::one(), second]).expect("valid 1x2 matrix")
}

fn coefficients(band: &BandSet, r: f64) -> impl Iterator<Item = (Vec<i64>, Complex64)> + '_ {
    band.nonzero().map(move |p| {
        (
            vec![p.m, p.n],
            Complex64::new(p.physical.abs().powf(-r), 0.0),
        )
    })
}

/// `f(x) = Σ |m + nφ|^{−3/2} e^{2πi(m + nφ′)x}` over the band without the
/// origin, with `P = (1, φ′)`: a bounded spectrum dense in `W`.
pub fn pathological_f(band: &BandSet) -> TrigPolynomial {
    TrigPolynomial::new(golden_matrix(golden_conjugate()), coefficients(band, 1.5))
        .expect("finite coefficients")
}

/// The parent of [`pathological_f`]: `F̂((m, n)) = |m + nφ|^{−3/2}`.
pub fn pathological_parent(band: &BandSet) -> ParentSpectrum {
    ParentSpectrum::new(2, coefficients(band, 1.5)).expect("finite coefficients")
}

/// `g_r(x) = Σ |m + nφ|^{−r} e^{2πi(m + nφ)x}` with `P = (1, φ)`: spectrum
/// in the Meyer set itself.
pub fn g_r_function(band: &BandSet, r: f64) -> Result<TrigPolynomial> {
    if !(r > 1.0) {
        return Err(QpError::InvalidParameter(format!(
            "g_r needs r > 1 so that Σ|λ|^(-r) converges over the Meyer set; got r = {r}"
        )));
    }
    TrigPolynomial::new(
        golden_matrix(FieldScalar::golden_ratio()),
        coefficients(band, r),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_window_membership() {
        let w = Window::default();
        let band = enumerate_band(&w, 3.0).unwrap();
        let has = |m, n| band.points.iter().any(|p| p.m == m && p.n == n);
        assert!(has(1, 1));
        assert!(!has(1, 0));
        assert!(!has(0, 1));
        assert!(has(0, 0));
        assert!(w.contains(&FieldScalar::from_ratio(-1, 2)));
        assert!(!w.contains(&FieldScalar::from_ratio(1, 2)));
        assert!(!w.contains(&golden_conjugate()));
        for p in &band.points {
            assert!(w.contains(&p.internal_exact()));
            assert!(p.norm() <= 3.0);
        }
        assert!(band
            .points
            .windows(2)
            .all(|x| x[0].physical < x[1].physical));
    }

    #[test]
    fn wide_window_keeps_the_unit_disc() {
        let w = Window::closed(FieldScalar::from_int(-10), FieldScalar::from_int(10)).unwrap();
        assert_eq!(enumerate_band(&w, 1.0).unwrap().len(), 5);
        assert!(Window::half_open(FieldScalar::one(), FieldScalar::one()).is_err());
    }

    #[test]
    fn matches_a_disc_scan() {
        let w = Window::parse("-0.3:0.7").unwrap();
        let band = enumerate_band(&w, 40.0).unwrap();
        let mut scan = Vec::new();
        for n in -40i64..=40 {
            for m in -40i64..=40 {
                let p = BandPoint::new(m, n);
                if m * m + n * n <= 1600 && w.contains(&p.internal_exact()) {
                    scan.push((m, n));
                }
            }
        }
        let mut got: Vec<(i64, i64)> = band.points.iter().map(|p| (p.m, p.n)).collect();
        got.sort();
        scan.sort();
        assert_eq!(got, scan);
    }

    #[test]
    fn comparability_constants() {
        let band = enumerate_band(&Window::default(), 1000.0).unwrap();
        let c = golden_comparability(&band).unwrap();
        assert!(c.c_low > 0.4 && c.c_high <= (1.0 + PHI * PHI).sqrt());
        let one_one = BandPoint::new(1, 1);
        assert!((one_one.physical / one_one.norm() - 1.851_229_586_8).abs() < 1e-10);
    }

    #[test]
    fn density_and_gaps() {
        let band = enumerate_band(&Window::default(), 500.0).unwrap();
        let r = meyer_density_check(&band, 20.0, 50).unwrap();
        assert!(r.min_count >= 1 && r.min_gap > 0.0);
        let r2 = meyer_density_check(&band, 40.0, 50).unwrap();
        assert!(r2.min_count + 1 >= 2 * r.min_count && r2.max_count <= 2 * r.max_count + 1);
        assert!(meyer_density_check(&band, 2000.0, 5).is_err());
    }

    #[test]
    fn pathological_coefficients() {
        let band = enumerate_band(&Window::default(), 5.0).unwrap();
        let parent = pathological_parent(&band);
        assert!((parent.coeff(&[1, 1]).re - 0.236_067_977_5).abs() < 1e-10);
        assert_eq!(parent.coeff(&[0, 0]), Complex64::new(0.0, 0.0));
        let f = pathological_f(&band);
        for (k, _) in f.terms() {
            assert!(band.window.contains(&f.frequency(k)[0]));
        }
        assert!(g_r_function(&band, 1.0).is_err());
        assert_eq!(g_r_function(&band, 2.0).unwrap().len(), band.len() - 1);
    }
}
