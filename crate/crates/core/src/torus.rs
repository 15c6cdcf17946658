//! The actions `Φₓ(y) = y + Pᵀx mod ℤⁿ` and their Weyl averages.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{QpError, Result};
use crate::number_field::FrequencyMatrix;
use crate::numeric::{dirichlet_mean, sinc, unit_phase, CompensatedSum};
use crate::qp::{LatticeVec, ParentSpectrum};

/// A point of 𝕋ⁿ with coordinates in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TorusPoint {
    coords: Vec<f64>,
}

fn reduce(t: f64) -> f64 {
    let r = t.rem_euclid(1.0);
    // rem_euclid can round up to exactly 1.0 for tiny negative inputs
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

impl TorusPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(QpError::InvalidParameter(
                "torus coordinates must be finite".into(),
            ));
        }
        Ok(TorusPoint {
            coords: coords.into_iter().map(reduce).collect(),
        })
    }

    pub fn origin(n: usize) -> Self {
        TorusPoint {
            coords: vec![0.0; n],
        }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Distance in the quotient metric, coordinatewise max.
    pub fn distance(&self, other: &TorusPoint) -> f64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| {
                let t = (a - b).rem_euclid(1.0);
                t.min(1.0 - t)
            })
            .fold(0.0, f64::max)
    }
}

/// The character `y ↦ e^{2πi k·y}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Character {
    pub k: LatticeVec,
}

impl Character {
    pub fn new(k: LatticeVec) -> Self {
        Character { k }
    }

    pub fn is_trivial(&self) -> bool {
        self.k.iter().all(|&x| x == 0)
    }

    pub fn eval(&self, y: &TorusPoint) -> Complex64 {
        unit_phase(
            self.k
                .iter()
                .zip(y.coords())
                .map(|(&k, &t)| k as f64 * t)
                .sum(),
        )
    }

    pub fn spectrum(&self) -> ParentSpectrum {
        ParentSpectrum::character(self.k.clone())
    }
}

fn check_dims(p: &FrequencyMatrix, y: &TorusPoint) -> Result<()> {
    if y.dim() != p.n() {
        return Err(QpError::DimensionMismatch {
            expected: p.n(),
            got: y.dim(),
        });
    }
    Ok(())
}

/// `(y + Pᵀx) mod ℤⁿ`.
pub fn flow(p: &FrequencyMatrix, y: &TorusPoint, x: &[f64]) -> Result<TorusPoint> {
    check_dims(p, y)?;
    if x.len() != p.d() {
        return Err(QpError::DimensionMismatch {
            expected: p.d(),
            got: x.len(),
        });
    }
    let shift = p.transpose_apply(x);
    TorusPoint::new(y.coords().iter().zip(&shift).map(|(a, b)| a + b).collect())
}

/// Evenly spaced points of the orbit line `x ↦ Φₓ(y)` for `x ∈ [from, to]`.
pub fn orbit_segment(
    p: &FrequencyMatrix,
    y: &TorusPoint,
    from: f64,
    to: f64,
    samples: usize,
) -> Result<Vec<TorusPoint>> {
    if p.d() != 1 {
        return Err(QpError::InvalidParameter(format!(
            "orbit export needs d = 1, got d = {}",
            p.d()
        )));
    }
    if samples < 2 {
        return Err(QpError::InvalidParameter(
            "orbit export needs at least 2 samples".into(),
        ));
    }
    let step = (to - from) / (samples - 1) as f64;
    (0..samples)
        .map(|i| {
            let x = if i == samples - 1 {
                to
            } else {
                from + step * i as f64
            };
            flow(p, y, &[x])
        })
        .collect()
}

fn check_spectrum(parent: &ParentSpectrum, p: &FrequencyMatrix, y: &TorusPoint) -> Result<()> {
    check_dims(p, y)?;
    if parent.n() != p.n() {
        return Err(QpError::DimensionMismatch {
            expected: p.n(),
            got: parent.n(),
        });
    }
    Ok(())
}

/// Per-term factor `Π_j sinc(2π (Pk)_j T)`; `(Pk)_j` is exact before rounding.
fn continuous_factor(p: &FrequencyMatrix, k: &[i64], t: f64) -> f64 {
    p.apply(k)
        .iter()
        .map(|l| {
            if l.is_zero() {
                1.0
            } else {
                sinc(2.0 * PI * l.to_f64() * t)
            }
        })
        .product()
}

/// Per-term factor `Π_j D_T(θ_j)`, `θ_j = (Pk)_j − round((Pk)_j)` exactly.
fn discrete_factor(p: &FrequencyMatrix, k: &[i64], t: u64) -> f64 {
    p.apply(k)
        .iter()
        .map(|l| {
            let theta = l.centered_fraction();
            if theta.is_zero() {
                1.0
            } else {
                dirichlet_mean(theta.to_f64(), t)
            }
        })
        .product()
}

fn weighted_sum(
    parent: &ParentSpectrum,
    y: &TorusPoint,
    weight: impl Fn(&[i64]) -> f64,
) -> Complex64 {
    parent
        .iter()
        .map(|(k, c)| c * weight(k) * Character::new(k.clone()).eval(y))
        .collect::<CompensatedSum>()
        .value()
}

/// `(2T)^{-d} ∫_{[−T,T]^d} F(Φₓ(y)) dx` in closed form.
pub fn weyl_average_continuous(
    parent: &ParentSpectrum,
    p: &FrequencyMatrix,
    y: &TorusPoint,
    t: f64,
) -> Result<Complex64> {
    check_spectrum(parent, p, y)?;
    if !(t > 0.0 && t.is_finite()) {
        return Err(QpError::InvalidParameter("T must be positive".into()));
    }
    Ok(weighted_sum(parent, y, |k| continuous_factor(p, k, t)))
}

/// `(2T+1)^{-d} Σ_{x ∈ {−T..T}^d} F(Φₓ(y))` in closed form.
pub fn weyl_average_discrete(
    parent: &ParentSpectrum,
    p: &FrequencyMatrix,
    y: &TorusPoint,
    t: u64,
) -> Result<Complex64> {
    check_spectrum(parent, p, y)?;
    if t == 0 {
        return Err(QpError::InvalidParameter("T must be positive".into()));
    }
    Ok(weighted_sum(parent, y, |k| discrete_factor(p, k, t)))
}

/// Approximate continuous average of an arbitrary function on 𝕋ⁿ.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampledAverage {
    pub value: Complex64,
    pub points_per_axis: usize,
    /// Always true: a midpoint Riemann sum, not a closed form.
    pub approximate: bool,
}

/// Midpoint rule with `points_per_axis` nodes per axis of `[−T, T]^d`.
pub fn weyl_average_sampled(
    func: impl Fn(&[f64]) -> Complex64 + Sync,
    p: &FrequencyMatrix,
    y: &TorusPoint,
    t: f64,
    points_per_axis: usize,
) -> Result<SampledAverage> {
    check_dims(p, y)?;
    if points_per_axis == 0 || !(t > 0.0) {
        return Err(QpError::InvalidParameter(
            "need T > 0 and at least one node".into(),
        ));
    }
    let d = p.d();
    let h = 2.0 * t / points_per_axis as f64;
    let total = points_per_axis.pow(d as u32);
    const BLOCK: usize = 4096;
    let node = |mut idx: usize| {
        let mut x = vec![0.0; d];
        for xi in x.iter_mut().rev() {
            *xi = -t + h * ((idx % points_per_axis) as f64 + 0.5);
            idx /= points_per_axis;
        }
        let z = flow(p, y, &x).expect("dimensions checked");
        func(z.coords())
    };
    let blocks: Vec<Complex64> = (0..total.div_ceil(BLOCK))
        .into_par_iter()
        .map(|b| (b * BLOCK..((b + 1) * BLOCK).min(total)).map(node).sum())
        .collect();
    let sum: Complex64 = blocks.iter().sum();
    Ok(SampledAverage {
        value: sum / total as f64,
        points_per_axis,
        approximate: true,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquidistributionRow {
    pub t: f64,
    pub re: f64,
    pub im: f64,
    /// `|A_T F(y) − ∫F|`.
    pub abs_error: f64,
    /// A priori bound on `abs_error`, uniform in `y`.
    pub bound: f64,
}

/// Rows `(T, A_T F(y), |A_T F(y) − ∫F|, bound)` for the continuous average,
/// with bound `Σ_{k≠0} |F̂(k)| Π_j min(1, 1/(2π|(Pk)_j|T))`.
pub fn equidistribution_table(
    parent: &ParentSpectrum,
    p: &FrequencyMatrix,
    y: &TorusPoint,
    ts: &[f64],
) -> Result<Vec<EquidistributionRow>> {
    check_spectrum(parent, p, y)?;
    let mean = parent.integral();
    let freqs: Vec<(Vec<f64>, f64)> = parent
        .iter()
        .filter(|(k, _)| k.iter().any(|&x| x != 0))
        .map(|(k, c)| (p.apply_rounded(k), c.norm()))
        .collect();
    ts.par_iter()
        .map(|&t| {
            let v = weyl_average_continuous(parent, p, y, t)?;
            let bound = freqs
                .iter()
                .map(|(lam, a)| {
                    a * lam
                        .iter()
                        .map(|l| {
                            if *l == 0.0 {
                                1.0
                            } else {
                                (1.0 / (2.0 * PI * l.abs() * t)).min(1.0)
                            }
                        })
                        .product::<f64>()
                })
                .sum();
            Ok(EquidistributionRow {
                t,
                re: v.re,
                im: v.im,
                abs_error: (v - mean).norm(),
                bound,
            })
        })
        .collect()
}

/// Discrete analogue with bound `Σ_{k≠0} |F̂(k)| Π_j b_j`, where
/// `b_j = 1` if `θ_j = 0` and `min(1, 1/(2(2T+1)|θ_j|))` otherwise.
pub fn equidistribution_table_discrete(
    parent: &ParentSpectrum,
    p: &FrequencyMatrix,
    y: &TorusPoint,
    ts: &[u64],
) -> Result<Vec<EquidistributionRow>> {
    check_spectrum(parent, p, y)?;
    let mean = parent.integral();
    let thetas: Vec<(Vec<Option<f64>>, f64)> = parent
        .iter()
        .filter(|(k, _)| k.iter().any(|&x| x != 0))
        .map(|(k, c)| {
            let th = p
                .apply(k)
                .iter()
                .map(|l| {
                    let th = l.centered_fraction();
                    (!th.is_zero()).then(|| th.to_f64())
                })
                .collect();
            (th, c.norm())
        })
        .collect();
    ts.par_iter()
        .map(|&t| {
            let v = weyl_average_discrete(parent, p, y, t)?;
            let w = (2 * t + 1) as f64;
            let bound = thetas
                .iter()
                .map(|(th, a)| {
                    a * th
                        .iter()
                        .map(|x| x.map_or(1.0, |x| (1.0 / (2.0 * w * x.abs())).min(1.0)))
                        .product::<f64>()
                })
                .sum();
            Ok(EquidistributionRow {
                t: t as f64,
                re: v.re,
                im: v.im,
                abs_error: (v - mean).norm(),
                bound,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number_field::FieldScalar;

    fn p_sqrt2() -> FrequencyMatrix {
        FrequencyMatrix::row(vec![FieldScalar::one(), FieldScalar::sqrt_of(2).unwrap()]).unwrap()
    }

    fn pt(c: &[f64]) -> TorusPoint {
        TorusPoint::new(c.to_vec()).unwrap()
    }

    #[test]
    fn flow_examples() {
        let p = p_sqrt2();
        let z = flow(&p, &TorusPoint::origin(2), &[1.0]).unwrap();
        assert!(z.coords()[0].abs() < 1e-15);
        assert!((z.coords()[1] - 0.414_213_562_373_095).abs() < 1e-14);
        let z = flow(&p, &pt(&[0.5, 0.5]), &[2.0]).unwrap();
        assert!((z.coords()[0] - 0.5).abs() < 1e-15);
        assert!((z.coords()[1] - 0.328_427_124_746_190).abs() < 1e-14);
        assert_eq!(flow(&p, &pt(&[0.3, 0.7]), &[0.0]).unwrap(), pt(&[0.3, 0.7]));
        assert!(flow(&p, &pt(&[0.3]), &[0.0]).is_err());
    }

    #[test]
    fn orbit_examples() {
        let p = p_sqrt2();
        let pts = orbit_segment(&p, &TorusPoint::origin(2), 0.0, 1.0, 3).unwrap();
        assert!((pts[1].coords()[1] - 0.707_106_781_186_547).abs() < 1e-14);
        assert!(pts[2].distance(&pt(&[0.0, 0.414_213_562_373_095])) < 1e-14);
        let still = orbit_segment(&p, &pt(&[0.2, 0.4]), 0.0, 0.0, 2).unwrap();
        assert_eq!(still[0], still[1]);
        let rational =
            FrequencyMatrix::row(vec![FieldScalar::one(), FieldScalar::from_int(2)]).unwrap();
        let closed = orbit_segment(&rational, &TorusPoint::origin(2), 0.0, 1.0, 5).unwrap();
        assert!(closed[4].distance(&closed[0]) < 1e-15);
    }

    #[test]
    fn continuous_average_closed_form() {
        let p = p_sqrt2();
        let ch = ParentSpectrum::character(vec![0, 1]);
        let v = weyl_average_continuous(&ch, &p, &TorusPoint::origin(2), 10.0).unwrap();
        let u = 20.0 * PI * 2f64.sqrt();
        assert!((v.re - u.sin() / u).abs() < 1e-15);
        assert!((v.re - 0.008_766_8).abs() < 1e-7);
        let c = ParentSpectrum::constant(2, Complex64::new(2.5, -1.0));
        assert_eq!(
            weyl_average_continuous(&c, &p, &pt(&[0.1, 0.9]), 3.0).unwrap(),
            Complex64::new(2.5, -1.0)
        );
    }

    #[test]
    fn discrete_average_detects_integer_frequency() {
        let p = p_sqrt2();
        let y = pt(&[0.3, 0.6]);
        let e1 = ParentSpectrum::character(vec![1, 0]);
        for t in [1, 10, 1000] {
            let v = weyl_average_discrete(&e1, &p, &y, t).unwrap();
            assert!((v - Character::new(vec![1, 0]).eval(&y)).norm() < 1e-15);
        }
        let e2 = ParentSpectrum::character(vec![0, 1]);
        let v = weyl_average_discrete(&e2, &p, &TorusPoint::origin(2), 100).unwrap();
        let th = 2f64.sqrt() - 1.0;
        assert!((v.re - (201.0 * PI * th).sin() / (201.0 * (PI * th).sin())).abs() < 1e-13);
        assert!(v.norm() <= 0.005_161_44);
    }

    #[test]
    fn discrete_matches_direct_sum() {
        let p = p_sqrt2();
        let f = ParentSpectrum::new(
            2,
            [
                (vec![1, 1], Complex64::new(1.0, 2.0)),
                (vec![0, 3], Complex64::new(-0.5, 0.0)),
            ],
        )
        .unwrap();
        let y = pt(&[0.11, 0.73]);
        let t = 7u64;
        let direct: Complex64 = (-(t as i64)..=t as i64)
            .map(|x| f.evaluate(flow(&p, &y, &[x as f64]).unwrap().coords()))
            .sum::<Complex64>()
            / (2 * t + 1) as f64;
        assert!((weyl_average_discrete(&f, &p, &y, t).unwrap() - direct).norm() < 1e-12);
    }

    #[test]
    fn sampled_average_approximates_closed_form() {
        let p = p_sqrt2();
        let f = ParentSpectrum::new(
            2,
            [
                (vec![1, 0], Complex64::new(1.0, 0.0)),
                (vec![0, 1], Complex64::new(2.0, 0.0)),
            ],
        )
        .unwrap();
        let y = pt(&[0.2, 0.1]);
        let exact = weyl_average_continuous(&f, &p, &y, 5.0).unwrap();
        let s = weyl_average_sampled(|z| f.evaluate(z), &p, &y, 5.0, 4000).unwrap();
        assert!(s.approximate);
        assert!((s.value - exact).norm() < 1e-5);
    }

    #[test]
    fn table_bounds_hold() {
        let p = p_sqrt2();
        let ch = ParentSpectrum::character(vec![0, 1]);
        let rows =
            equidistribution_table(&ch, &p, &pt(&[0.4, 0.8]), &[10.0, 100.0, 1000.0]).unwrap();
        for r in &rows {
            assert!(r.abs_error <= r.bound + 1e-15);
            assert!((r.bound - 1.0 / (2.0 * PI * 2f64.sqrt() * r.t)).abs() < 1e-15);
        }
        let c = ParentSpectrum::constant(2, Complex64::new(1.0, 0.0));
        for r in equidistribution_table(&c, &p, &TorusPoint::origin(2), &[10.0, 100.0]).unwrap() {
            assert_eq!((r.abs_error, r.bound), (0.0, 0.0));
        }
        let drows =
            equidistribution_table_discrete(&ch, &p, &TorusPoint::origin(2), &[10, 100]).unwrap();
        for r in &drows {
            assert!(r.abs_error <= r.bound + 1e-15);
        }
    }
}
