//! Inversion in the Wiener algebra through the parent.

use num_complex::Complex64;
use serde::Serialize;

use super::grid::{min_grid, GridFunction};
use super::norms::{bernstein_slack, sup_norm};
use super::spectrum::{ParentSpectrum, TrigPolynomial};
use super::{lift, project};
use crate::error::{QpError, Result};

/// Cap on the number of verification-grid points.
const MAX_VERIFY_POINTS: usize = 1 << 22;

#[derive(Clone, Debug)]
pub struct WienerOptions {
    /// Verification grid size as a multiple of the sampling grid.
    pub verify_factor: usize,
    /// Largest acceptable residual; `None` means `max(1e-6, 100·tail_tol·‖f‖_W)`.
    pub max_residual: Option<f64>,
}

impl Default for WienerOptions {
    fn default() -> Self {
        WienerOptions {
            verify_factor: 10,
            max_residual: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WienerInverse {
    pub inverse: TrigPolynomial,
    /// Certified lower bound for `min |F|` over the torus.
    pub certified_min: f64,
    /// Upper bound for `sup |f·g − 1|`.
    pub residual: f64,
    pub grid: usize,
    pub verification_grid: usize,
    /// `Σ |ĝ(k)|` over the truncated coefficients.
    pub dropped_mass: f64,
}

pub fn wiener_inverse(f: &TrigPolynomial, grid: usize, tail_tol: f64) -> Result<WienerInverse> {
    wiener_inverse_with(f, grid, tail_tol, &WienerOptions::default())
}

/// Samples `F` on an `Nⁿ` grid, inverts pointwise and transforms back,
/// dropping coefficients below `tail_tol`.
pub fn wiener_inverse_with(
    f: &TrigPolynomial,
    grid: usize,
    tail_tol: f64,
    opts: &WienerOptions,
) -> Result<WienerInverse> {
    if !(tail_tol >= 0.0 && tail_tol.is_finite()) {
        return Err(QpError::InvalidParameter(
            "tail tolerance must be finite and >= 0".into(),
        ));
    }
    let parent = lift(f)?;
    if parent.is_empty() {
        return Err(QpError::Domain("the zero function has no inverse".into()));
    }
    let samples = GridFunction::from_spectrum(&parent, grid)?;
    let grid_min = samples
        .values()
        .iter()
        .map(|v| v.norm())
        .fold(f64::INFINITY, f64::min);
    let certified_min = grid_min - bernstein_slack(&parent, grid);
    if !(certified_min > 0.0) {
        return Err(QpError::Domain(format!(
            "cannot certify that the parent is nonvanishing: grid minimum {grid_min:.3e}, certified bound {certified_min:.3e}"
        )));
    }
    let inverted = GridFunction::new(
        parent.n(),
        grid,
        samples
            .values()
            .iter()
            .map(|v| Complex64::new(1.0, 0.0) / v)
            .collect(),
    )?;
    let all = inverted.to_spectrum(0.0);
    let dropped_mass: f64 = all
        .iter()
        .filter(|(_, c)| c.norm() < tail_tol)
        .map(|(_, c)| c.norm())
        .sum();
    let kept = ParentSpectrum::new(
        parent.n(),
        all.iter()
            .filter(|(_, c)| c.norm() >= tail_tol)
            .map(|(k, c)| (k.clone(), *c)),
    )?;

    let defect = parent.convolve(&kept)?.sub(&ParentSpectrum::constant(
        parent.n(),
        Complex64::new(1.0, 0.0),
    ))?;
    let need = min_grid(defect.max_index());
    let cap = (MAX_VERIFY_POINTS as f64)
        .powf(1.0 / parent.n() as f64)
        .floor() as usize;
    let verification_grid = (grid * opts.verify_factor.max(1)).min(cap).max(need);
    let residual = sup_norm(&defect, verification_grid)?.upper;

    let limit = opts
        .max_residual
        .unwrap_or_else(|| (100.0 * tail_tol * parent.wiener_norm()).max(1e-6));
    if residual > limit {
        return Err(QpError::Convergence(format!(
            "residual {residual:.3e} exceeds {limit:.3e} on grid {grid}; try a larger grid"
        )));
    }
    Ok(WienerInverse {
        inverse: project(&kept, f.matrix())?,
        certified_min,
        residual,
        grid,
        verification_grid,
        dropped_mass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number_field::{FieldScalar, FrequencyMatrix};

    fn p_sqrt2() -> FrequencyMatrix {
        FrequencyMatrix::row(vec![FieldScalar::one(), FieldScalar::sqrt_of(2).unwrap()]).unwrap()
    }

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn constant_inverse() {
        let f = TrigPolynomial::new(p_sqrt2(), [(vec![0, 0], c(2.0))]).unwrap();
        let inv = wiener_inverse(&f, 4, 1e-12).unwrap();
        assert_eq!(inv.inverse.coeff_at(&[0, 0]), c(0.5));
        assert_eq!(inv.inverse.len(), 1);
        assert!(inv.residual < 1e-15);
    }

    #[test]
    fn geometric_series_inverse() {
        let f =
            TrigPolynomial::new(p_sqrt2(), [(vec![0, 0], c(2.0)), (vec![0, 1], c(1.0))]).unwrap();
        let inv = wiener_inverse(&f, 64, 1e-12).unwrap();
        for j in 0..=20 {
            let expect = (-1f64).powi(j) * 2f64.powi(-(j + 1));
            assert!((inv.inverse.coeff_at(&[0, j as i64]) - c(expect)).norm() < 1e-12);
        }
        assert!(inv.residual <= 1e-9, "residual {}", inv.residual);
    }

    #[test]
    fn vanishing_parent_is_rejected() {
        let f =
            TrigPolynomial::new(p_sqrt2(), [(vec![0, 0], c(1.0)), (vec![1, 0], c(1.0))]).unwrap();
        assert!(matches!(
            wiener_inverse(&f, 64, 1e-12),
            Err(QpError::Domain(_))
        ));
    }
}
