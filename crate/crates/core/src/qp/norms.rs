//! Uniform and Besicovitch norms, computed on the parent.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::grid::{min_grid, GridFunction};
use super::spectrum::{ParentSpectrum, TrigPolynomial};
use super::{lift, require_independent};
use crate::error::{QpError, Result};

/// `lower ≤ ‖F‖_∞ ≤ upper`, with `lower` attained at `argmax`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SupNormInterval {
    pub lower: f64,
    pub upper: f64,
    pub argmax: Vec<f64>,
}

/// Grid maximum of `|F|` plus the Bernstein slack `π Σ|F̂(k)||k|₁ / N`.
pub fn sup_norm(parent: &ParentSpectrum, grid: usize) -> Result<SupNormInterval> {
    let need = min_grid(parent.max_index());
    if grid < need {
        return Err(QpError::GridTooSmall { need, got: grid });
    }
    if parent.is_empty() {
        return Ok(SupNormInterval {
            lower: 0.0,
            upper: 0.0,
            argmax: vec![0.0; parent.n()],
        });
    }
    let g = GridFunction::from_spectrum(parent, grid)?;
    let (idx, lower) = g
        .values()
        .iter()
        .enumerate()
        .map(|(i, v)| (i, v.norm()))
        .fold((0, f64::NEG_INFINITY), |best, cur| {
            if cur.1 > best.1 {
                cur
            } else {
                best
            }
        });
    Ok(SupNormInterval {
        lower,
        upper: lower + bernstein_slack(parent, grid),
        argmax: g.point(idx),
    })
}

/// Bound on `sup|F| − max_grid|F|` for a grid of spacing `1/N`.
pub fn bernstein_slack(parent: &ParentSpectrum, grid: usize) -> f64 {
    let l1: f64 = parent
        .iter()
        .map(|(k, c)| c.norm() * k.iter().map(|x| x.unsigned_abs() as f64).sum::<f64>())
        .sum();
    PI * l1 / grid as f64
}

/// Largest sampled `|f(x)|` over `x ∈ [0, window]^d`. A lower bound for
/// `‖f‖_∞ = ‖F‖_∞`, approached as the window grows.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SupNormSample {
    pub lower: f64,
    pub argmax: Vec<f64>,
    pub samples: usize,
    pub window: f64,
}

/// Samples `f` on a uniform grid of about `samples` points in `[0, window]^d`
/// (`⌈samples^{1/d}⌉` per axis).
pub fn sup_norm_qp(f: &TrigPolynomial, samples: usize, window: f64) -> Result<SupNormSample> {
    if samples < 2 {
        return Err(QpError::InvalidParameter("need at least 2 samples".into()));
    }
    if !(window > 0.0 && window.is_finite()) {
        return Err(QpError::InvalidParameter(
            "sampling window must be positive".into(),
        ));
    }
    let d = f.matrix().d();
    let per_axis = ((samples as f64).powf(1.0 / d as f64).ceil() as usize).max(2);
    let total = per_axis.pow(d as u32);
    let step = window / (per_axis - 1) as f64;
    let point = |mut idx: usize| {
        let mut x = vec![0.0; d];
        for xi in x.iter_mut().rev() {
            *xi = (idx % per_axis) as f64 * step;
            idx /= per_axis;
        }
        x
    };
    let (idx, lower) = (0..total)
        .into_par_iter()
        .map(|i| (i, f.evaluate(&point(i)).norm()))
        .reduce(
            || (0, f64::NEG_INFINITY),
            |a, b| {
                if b.1 > a.1 || (b.1 == a.1 && b.0 < a.0) {
                    b
                } else {
                    a
                }
            },
        );
    Ok(SupNormSample {
        lower,
        argmax: point(idx),
        samples: total,
        window,
    })
}

fn check_q(q: f64) -> Result<()> {
    if q.is_finite() && q >= 1.0 {
        Ok(())
    } else {
        Err(QpError::InvalidParameter(format!(
            "Besicovitch exponent must satisfy 1 <= q < ∞, got {q}"
        )))
    }
}

fn even_integer(q: f64) -> Option<u32> {
    (q.fract() == 0.0 && q >= 2.0 && q <= 64.0 && (q as u32) % 2 == 0).then_some(q as u32)
}

/// `‖f‖_q = (∫_{𝕋ⁿ} |F|^q)^{1/q}`: exact convolution for even integer `q`,
/// the rectangle rule on an `Nⁿ` grid otherwise.
pub fn besicovitch_norm(f: &TrigPolynomial, q: f64, grid: usize) -> Result<f64> {
    check_q(q)?;
    match even_integer(q) {
        Some(_) => besicovitch_norm_exact(f, q),
        None => besicovitch_norm_grid(f, q, grid),
    }
}

pub fn besicovitch_norm_grid(f: &TrigPolynomial, q: f64, grid: usize) -> Result<f64> {
    check_q(q)?;
    let parent = lift(f)?;
    parent_norm_grid(&parent, q, grid)
}

fn parent_norm_grid(parent: &ParentSpectrum, q: f64, grid: usize) -> Result<f64> {
    let g = GridFunction::from_spectrum(parent, grid)?;
    Ok(g.mean_of(|v| v.norm().powf(q)).powf(1.0 / q))
}

/// Even `q` only: `‖f‖_q^q` is the constant term of `(F·F̄)^{q/2}`.
pub fn besicovitch_norm_exact(f: &TrigPolynomial, q: f64) -> Result<f64> {
    check_q(q)?;
    let half = even_integer(q).ok_or_else(|| {
        QpError::InvalidParameter(format!("exact path needs an even integer q, got {q}"))
    })? / 2;
    require_independent(f.matrix())?;
    let parent = lift(f)?;
    let sq = parent.convolve(&parent.conj())?;
    let mut acc = ParentSpectrum::constant(parent.n(), Complex64::new(1.0, 0.0));
    for _ in 0..half {
        acc = acc.convolve(&sq)?;
    }
    Ok(acc.integral().re.max(0.0).powf(1.0 / q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number_field::{FieldScalar, FrequencyMatrix};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn two_char() -> TrigPolynomial {
        let p = FrequencyMatrix::row(vec![FieldScalar::one(), FieldScalar::sqrt_of(2).unwrap()])
            .unwrap();
        TrigPolynomial::new(p, [(vec![1, 0], c(1.0)), (vec![0, 1], c(2.0))]).unwrap()
    }

    #[test]
    fn sup_norm_of_characters() {
        let one = ParentSpectrum::character(vec![1, 0]);
        let s = sup_norm(&one, 4).unwrap();
        assert!((s.lower - 1.0).abs() < 1e-15);
        let two = ParentSpectrum::new(2, [(vec![1, 0], c(1.0)), (vec![0, 1], c(1.0))]).unwrap();
        let s = sup_norm(&two, 8).unwrap();
        assert!((s.lower - 2.0).abs() < 1e-15);
        assert_eq!(s.argmax, vec![0.0, 0.0]);
        assert!((s.upper - s.lower - PI * 2.0 / 8.0).abs() < 1e-15);
        assert!(matches!(
            sup_norm(&two, 2),
            Err(QpError::GridTooSmall { need: 3, got: 2 })
        ));
    }

    #[test]
    fn sampled_sup_approaches_parent_sup() {
        let p = FrequencyMatrix::row(vec![FieldScalar::one(), FieldScalar::sqrt_of(2).unwrap()])
            .unwrap();
        let f = TrigPolynomial::new(p, [(vec![1, 0], c(1.0)), (vec![0, 1], c(1.0))]).unwrap();
        let s = sup_norm_qp(&f, 200_000, 1000.0).unwrap();
        assert!(s.lower > 1.99 && s.lower <= 2.0);
    }

    #[test]
    fn parseval_and_even_norms() {
        let f = two_char();
        let exact2 = besicovitch_norm_exact(&f, 2.0).unwrap();
        assert!((exact2 - 5f64.sqrt()).abs() < 1e-15);
        let grid2 = besicovitch_norm_grid(&f, 2.0, 8).unwrap();
        assert!((grid2 - 5f64.sqrt()).abs() < 1e-14);
        let four = besicovitch_norm(&f, 4.0, 8).unwrap();
        assert!((four - 33f64.powf(0.25)).abs() < 1e-14);
        let four_grid = besicovitch_norm_grid(&f, 4.0, 16).unwrap();
        assert!((four_grid - four).abs() < 1e-13);
        assert!(besicovitch_norm(&f, 0.5, 8).is_err());
    }

    #[test]
    fn unit_character_has_unit_norms() {
        let p = FrequencyMatrix::row(vec![FieldScalar::sqrt_of(2).unwrap()]).unwrap();
        let f = TrigPolynomial::new(p, [(vec![3], c(1.0))]).unwrap();
        for q in [1.0, 1.5, 2.0, 3.0] {
            assert!((besicovitch_norm(&f, q, 16).unwrap() - 1.0).abs() < 1e-14);
        }
    }
}
