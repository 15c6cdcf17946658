//! Quasi-periodic functions and their parents: lift/project, Bohr means and
//! coefficients, Fejér sums, norms and Wiener-algebra inversion.

mod grid;
mod norms;
mod spectrum;
mod wiener;

pub use grid::{default_grid, min_grid, quadrature_grid, GridFunction};
pub use norms::{
    besicovitch_norm, besicovitch_norm_exact, besicovitch_norm_grid, sup_norm, sup_norm_qp,
    SupNormInterval, SupNormSample,
};
pub(crate) use spectrum::euclidean;
pub use spectrum::{solve_lattice_point, LatticeVec, ParentSpectrum, TrigPolynomial};
pub use wiener::{wiener_inverse, wiener_inverse_with, WienerInverse, WienerOptions};

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{QpError, Result};
use crate::independence::q_independent;
use crate::number_field::{FieldScalar, FrequencyMatrix};
use crate::numeric::{sinc, unit_phase, CompensatedSum};

fn require_independent(p: &FrequencyMatrix) -> Result<()> {
    let v = q_independent(p);
    if v.independent {
        Ok(())
    } else {
        Err(QpError::RationallyDependent {
            witness: v.witness.unwrap_or_default(),
        })
    }
}

/// The parent spectrum `F̂(k) = f̂(Pk)`. Requires ℚ-independent columns.
pub fn lift(f: &TrigPolynomial) -> Result<ParentSpectrum> {
    require_independent(f.matrix())?;
    ParentSpectrum::new(f.matrix().n(), f.terms().map(|(k, c)| (k.clone(), *c)))
}

/// `f(x) = F(Pᵀx)`.
pub fn project(parent: &ParentSpectrum, p: &FrequencyMatrix) -> Result<TrigPolynomial> {
    if parent.n() != p.n() {
        return Err(QpError::DimensionMismatch {
            expected: p.n(),
            got: parent.n(),
        });
    }
    TrigPolynomial::new(p.clone(), parent.iter().map(|(k, c)| (k.clone(), *c)))
}

pub fn evaluate(f: &TrigPolynomial, x: &[f64]) -> Complex64 {
    f.evaluate(x)
}

pub fn evaluate_parent(parent: &ParentSpectrum, y: &[f64]) -> Complex64 {
    parent.evaluate(y)
}

/// `f̂(λ)`: the stored coefficient when `λ = Pk` exactly, else 0.
pub fn bohr_coefficient(f: &TrigPolynomial, lambda: &[FieldScalar]) -> Complex64 {
    if lambda.len() != f.matrix().d() {
        return Complex64::new(0.0, 0.0);
    }
    f.terms()
        .filter(|(k, _)| f.frequency(k).as_slice() == lambda)
        .map(|(_, c)| *c)
        .sum()
}

/// Finite-box average `(2T)^{-d} ∫_{[−T,T]^d} f(x) e^{−2πiλ·x} dx` in closed
/// form; frequency differences are taken exactly before rounding.
pub fn bohr_average(f: &TrigPolynomial, lambda: &[FieldScalar], t: f64) -> Result<Complex64> {
    if lambda.len() != f.matrix().d() {
        return Err(QpError::DimensionMismatch {
            expected: f.matrix().d(),
            got: lambda.len(),
        });
    }
    if !(t > 0.0) {
        return Err(QpError::InvalidParameter(
            "averaging window T must be positive".into(),
        ));
    }
    let mut acc = CompensatedSum::new();
    for (k, c) in f.terms() {
        let mut w = 1.0;
        for (mu, l) in f.frequency(k).iter().zip(lambda) {
            let diff = mu.checked_sub(l)?;
            if !diff.is_zero() {
                w *= sinc(2.0 * PI * diff.to_f64() * t);
            }
        }
        acc.add(c * w);
    }
    Ok(acc.value())
}

/// `𝓜(f) = f̂(0) = ∫ F`.
pub fn bohr_mean(f: &TrigPolynomial) -> Result<Complex64> {
    require_independent(f.matrix())?;
    Ok(f.coeff_at(&vec![0; f.matrix().n()]))
}

/// Fejér weight `Π_j (1 − |k_j|/N)`, zero once `max|k_j| ≥ N`.
pub fn fejer_weight(k: &[i64], order: u64) -> f64 {
    let n = order as f64;
    k.iter()
        .map(|&kj| (1.0 - kj.unsigned_abs() as f64 / n).max(0.0))
        .product()
}

fn check_order(order: u64) -> Result<()> {
    if order == 0 {
        Err(QpError::InvalidParameter("Fejér order must be >= 1".into()))
    } else {
        Ok(())
    }
}

/// `σ_N(F)(y)`.
pub fn fejer_sum(parent: &ParentSpectrum, order: u64, y: &[f64]) -> Result<Complex64> {
    check_order(order)?;
    if y.len() != parent.n() {
        return Err(QpError::DimensionMismatch {
            expected: parent.n(),
            got: y.len(),
        });
    }
    Ok(parent
        .iter()
        .filter_map(|(k, c)| {
            let w = fejer_weight(k, order);
            (w > 0.0)
                .then(|| c * w * unit_phase(k.iter().zip(y).map(|(&kj, &yj)| kj as f64 * yj).sum()))
        })
        .collect::<CompensatedSum>()
        .value())
}

/// The same weighted sum written in the frequencies `Pk` of `f`.
pub fn bochner_fejer_sum(f: &TrigPolynomial, order: u64, x: &[f64]) -> Result<Complex64> {
    check_order(order)?;
    let p = f.matrix();
    if x.len() != p.d() {
        return Err(QpError::DimensionMismatch {
            expected: p.d(),
            got: x.len(),
        });
    }
    Ok(f.terms()
        .filter_map(|(k, c)| {
            let w = fejer_weight(k, order);
            (w > 0.0).then(|| {
                let lam = p.apply_f64(k);
                c * w * unit_phase(lam.iter().zip(x).map(|(l, xi)| l * xi).sum())
            })
        })
        .collect::<CompensatedSum>()
        .value())
}

/// `Σ |f̂(λ)|`.
pub fn wiener_norm(f: &TrigPolynomial) -> f64 {
    f.terms().map(|(_, c)| c.norm()).sum()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct B2IsometryReport {
    pub parent_l2_squared: f64,
    pub projected_l2_squared: f64,
    pub equal: bool,
}

/// Compares `Σ|F̂(k)|²` with `Σ|f̂(λ)|²` for `f = project(F, P)`.
pub fn b2_isometry_check(parent: &ParentSpectrum, p: &FrequencyMatrix) -> Result<B2IsometryReport> {
    require_independent(p)?;
    let f = project(parent, p)?;
    let parent_l2_squared = parent.l2_norm_squared();
    let projected_l2_squared: f64 = f.terms().map(|(_, c)| c.norm_sqr()).sum();
    Ok(B2IsometryReport {
        parent_l2_squared,
        projected_l2_squared,
        equal: parent_l2_squared == projected_l2_squared,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn p_sqrt2() -> FrequencyMatrix {
        FrequencyMatrix::row(vec![FieldScalar::one(), FieldScalar::sqrt_of(2).unwrap()]).unwrap()
    }

    fn two_char() -> TrigPolynomial {
        TrigPolynomial::new(p_sqrt2(), [(vec![1, 0], c(1.0)), (vec![0, 1], c(2.0))]).unwrap()
    }

    #[test]
    fn lift_reads_off_parent_coefficients() {
        let parent = lift(&two_char()).unwrap();
        assert_eq!(parent.coeff(&[1, 0]), c(1.0));
        assert_eq!(parent.coeff(&[0, 1]), c(2.0));
        assert!(lift(&TrigPolynomial::zero(p_sqrt2())).unwrap().is_empty());

        let lam = vec![&FieldScalar::one() + &FieldScalar::sqrt_of(2).unwrap()];
        let f = TrigPolynomial::from_frequencies(p_sqrt2(), [(lam, c(3.0))]).unwrap();
        assert_eq!(lift(&f).unwrap().coeff(&[1, 1]), c(3.0));
    }

    #[test]
    fn lift_rejects_dependent_matrix() {
        let p = FrequencyMatrix::row(vec![FieldScalar::one(), FieldScalar::from_int(2)]).unwrap();
        let f = TrigPolynomial::new(p, [(vec![1, 0], c(1.0))]).unwrap();
        assert_eq!(
            lift(&f).unwrap_err(),
            QpError::RationallyDependent {
                witness: vec![2, -1]
            }
        );
    }

    #[test]
    fn project_round_trip_and_evaluation() {
        let f = two_char();
        let back = project(&lift(&f).unwrap(), f.matrix()).unwrap();
        assert_eq!(back, f);
        assert_eq!(f.evaluate(&[0.0]), c(3.0));

        let g = TrigPolynomial::new(p_sqrt2(), [(vec![0, 1], c(1.0))]).unwrap();
        let v = g.evaluate(&[0.25]);
        let arg = PI * 2f64.sqrt() / 2.0;
        assert!((v - Complex64::new(arg.cos(), arg.sin())).norm() < 1e-15);
        assert!((v - Complex64::new(-0.605_700, 0.795_693)).norm() < 1e-6);

        let ch = ParentSpectrum::character(vec![1, 0]);
        assert!((ch.evaluate(&[0.5, 0.0]) - c(-1.0)).norm() < 1e-15);
    }

    #[test]
    fn coefficients_and_means() {
        let r2 = FieldScalar::sqrt_of(2).unwrap();
        let f = TrigPolynomial::new(p_sqrt2(), [(vec![0, 1], c(3.0))]).unwrap();
        assert_eq!(bohr_coefficient(&f, &[r2.clone()]), c(3.0));
        assert_eq!(bohr_coefficient(&f, &[FieldScalar::one()]), c(0.0));

        let two =
            TrigPolynomial::new(p_sqrt2(), [(vec![1, 0], c(1.0)), (vec![0, 1], c(3.0))]).unwrap();
        let avg = bohr_average(&two, &[r2], 1000.0).unwrap();
        let bound = 1.0 / (2.0 * PI * (2f64.sqrt() - 1.0) * 1000.0);
        assert!((avg - c(3.0)).norm() <= bound);
        assert!((avg - c(3.0)).norm() < 1.6e-3);

        let g =
            TrigPolynomial::new(p_sqrt2(), [(vec![0, 0], c(5.0)), (vec![0, 1], c(1.0))]).unwrap();
        assert_eq!(bohr_mean(&g).unwrap(), c(5.0));
        assert_eq!(bohr_mean(&two_char()).unwrap(), c(0.0));
    }

    #[test]
    fn fejer_weights() {
        let single = ParentSpectrum::character(vec![1, 0]);
        assert!((fejer_sum(&single, 4, &[0.0, 0.0]).unwrap() - c(0.75)).norm() < 1e-15);
        let parent = lift(&two_char()).unwrap();
        assert_eq!(fejer_sum(&parent, 1, &[0.3, 0.1]).unwrap(), c(0.0));
        assert!(fejer_sum(&parent, 0, &[0.0, 0.0]).is_err());
    }

    #[test]
    fn bochner_fejer_matches_parent_sum() {
        let f = two_char();
        let parent = lift(&f).unwrap();
        for &x in &[0.0, 0.37, -5.2, 123.456] {
            let y: Vec<f64> = f
                .matrix()
                .transpose_apply(&[x])
                .iter()
                .map(|v| v.rem_euclid(1.0))
                .collect();
            for order in [1, 3, 50] {
                let a = bochner_fejer_sum(&f, order, &[x]).unwrap();
                let b = fejer_sum(&parent, order, &y).unwrap();
                assert!((a - b).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn isometry_report() {
        let parent = lift(&two_char()).unwrap();
        let r = b2_isometry_check(&parent, &p_sqrt2()).unwrap();
        assert_eq!(r.parent_l2_squared, 5.0);
        assert!(r.equal);
        let empty = b2_isometry_check(&ParentSpectrum::zero(2), &p_sqrt2()).unwrap();
        assert_eq!(
            (empty.parent_l2_squared, empty.projected_l2_squared),
            (0.0, 0.0)
        );
        assert_eq!(wiener_norm(&two_char()), 3.0);
    }
}
