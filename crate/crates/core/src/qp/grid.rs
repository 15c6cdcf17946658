//! Uniform samples of a function on 𝕋ⁿ at the points `j/N`, and the
//! alias-free transforms between samples and Fourier coefficients.

use num_complex::Complex64;
use rustfft::{FftDirection, FftPlanner};

use super::spectrum::{LatticeVec, ParentSpectrum};
use crate::error::{QpError, Result};
use crate::numeric::next_pow2;

/// `Nⁿ` complex samples, row-major, index `Σ jᵢ N^{n−1−i}` ↔ point `j/N`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction {
    n: usize,
    size: usize,
    values: Vec<Complex64>,
}

/// Smallest grid that recovers indices `|k_j| <= max_index` without aliasing.
pub fn min_grid(max_index: i64) -> usize {
    2 * max_index.unsigned_abs() as usize + 1
}

/// Default grid: next power of two `>= 4·max_index + 1`, at least 8.
pub fn default_grid(max_index: i64) -> usize {
    next_pow2(4 * max_index.unsigned_abs() as usize + 1).max(8)
}

/// Grid for integrating non-polynomial functions of `F` such as `|F|^q`:
/// four times [`default_grid`] per axis, reduced towards it while the total
/// exceeds `2^22` points.
pub fn quadrature_grid(max_index: i64, n: usize) -> usize {
    let base = default_grid(max_index);
    let mut g = 4 * base;
    while g > base && (g as f64).powi(n as i32) > (1u64 << 22) as f64 {
        g /= 2;
    }
    g
}

impl GridFunction {
    pub fn new(n: usize, size: usize, values: Vec<Complex64>) -> Result<Self> {
        if size == 0 {
            return Err(QpError::InvalidParameter("grid size must be >= 1".into()));
        }
        let expected = size.pow(n as u32);
        if values.len() != expected {
            return Err(QpError::DimensionMismatch {
                expected,
                got: values.len(),
            });
        }
        if values
            .iter()
            .any(|v| !(v.re.is_finite() && v.im.is_finite()))
        {
            return Err(QpError::InvalidParameter("non-finite grid value".into()));
        }
        Ok(GridFunction { n, size, values })
    }

    /// Samples `f` at every grid point.
    pub fn sample(n: usize, size: usize, f: impl Fn(&[f64]) -> Complex64) -> Result<Self> {
        let total = size.pow(n as u32);
        let mut y = vec![0.0; n];
        let values = (0..total)
            .map(|idx| {
                grid_point(idx, n, size, &mut y);
                f(&y)
            })
            .collect();
        GridFunction::new(n, size, values)
    }

    /// Values of a trigonometric polynomial on the grid via an inverse FFT.
    pub fn from_spectrum(spec: &ParentSpectrum, size: usize) -> Result<Self> {
        let need = min_grid(spec.max_index());
        if size < need {
            return Err(QpError::GridTooSmall { need, got: size });
        }
        let n = spec.n();
        let mut data = vec![Complex64::new(0.0, 0.0); size.pow(n as u32)];
        for (k, c) in spec.iter() {
            data[wrap_index(k, size)] += c;
        }
        fft_nd(&mut data, n, size, FftDirection::Inverse);
        GridFunction::new(n, size, data)
    }

    /// Fourier coefficients from samples (forward FFT divided by `Nⁿ`),
    /// with signed indices in `(−N/2, N/2]`; coefficients of modulus below
    /// `tol` are dropped.
    pub fn to_spectrum(&self, tol: f64) -> ParentSpectrum {
        let mut data = self.values.clone();
        fft_nd(&mut data, self.n, self.size, FftDirection::Forward);
        let scale = 1.0 / data.len() as f64;
        let terms = data.iter().enumerate().filter_map(|(idx, c)| {
            let c = c * scale;
            (c.norm() >= tol && c.norm() > 0.0).then(|| (signed_index(idx, self.n, self.size), c))
        });
        ParentSpectrum::new(self.n, terms).expect("grid coefficients are finite")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Coordinates of the sample stored at `idx`.
    pub fn point(&self, idx: usize) -> Vec<f64> {
        let mut y = vec![0.0; self.n];
        grid_point(idx, self.n, self.size, &mut y);
        y
    }

    /// Rectangle-rule mean of `g(value)` over the grid.
    pub fn mean_of(&self, g: impl Fn(Complex64) -> f64) -> f64 {
        self.values.iter().map(|&v| g(v)).sum::<f64>() / self.values.len() as f64
    }
}

fn grid_point(mut idx: usize, n: usize, size: usize, y: &mut [f64]) {
    for i in (0..n).rev() {
        y[i] = (idx % size) as f64 / size as f64;
        idx /= size;
    }
}

fn wrap_index(k: &[i64], size: usize) -> usize {
    k.iter().fold(0usize, |acc, &kj| {
        acc * size + kj.rem_euclid(size as i64) as usize
    })
}

fn signed_index(mut idx: usize, n: usize, size: usize) -> LatticeVec {
    let mut k = vec![0i64; n];
    for i in (0..n).rev() {
        let j = (idx % size) as i64;
        k[i] = if 2 * j > size as i64 {
            j - size as i64
        } else {
            j
        };
        idx /= size;
    }
    k
}

/// In-place unnormalised n-dimensional FFT, axis by axis.
fn fft_nd(data: &mut [Complex64], n: usize, size: usize, direction: FftDirection) {
    if size == 1 {
        return;
    }
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft(size, direction);
    let mut line = vec![Complex64::new(0.0, 0.0); size];
    for axis in 0..n {
        let stride = size.pow((n - 1 - axis) as u32);
        let block = stride * size;
        for start in (0..data.len()).step_by(block) {
            for offset in 0..stride {
                let base = start + offset;
                for (t, v) in line.iter_mut().enumerate() {
                    *v = data[base + t * stride];
                }
                fft.process(&mut line);
                for (t, v) in line.iter().enumerate() {
                    data[base + t * stride] = *v;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fft_grid_matches_direct_evaluation() {
        let spec = ParentSpectrum::new(
            2,
            [
                (vec![1, 0], Complex64::new(1.0, 0.5)),
                (vec![-2, 3], Complex64::new(-0.25, 2.0)),
                (vec![0, 0], Complex64::new(0.1, 0.0)),
            ],
        )
        .unwrap();
        let g = GridFunction::from_spectrum(&spec, 8).unwrap();
        for idx in [0, 5, 17, 63] {
            let y = g.point(idx);
            assert!((g.values()[idx] - spec.evaluate(&y)).norm() < 1e-13);
        }
        let back = g.to_spectrum(1e-12);
        assert_eq!(back.len(), 3);
        for (k, c) in spec.iter() {
            assert!((back.coeff(k) - c).norm() < 1e-14);
        }
    }

    #[test]
    fn rejects_aliasing_grids() {
        let spec = ParentSpectrum::character(vec![4]);
        assert_eq!(
            GridFunction::from_spectrum(&spec, 8).unwrap_err(),
            QpError::GridTooSmall { need: 9, got: 8 }
        );
        assert!(GridFunction::from_spectrum(&spec, 9).is_ok());
    }

    #[test]
    fn default_grid_sizes() {
        assert_eq!(default_grid(0), 8);
        assert_eq!(default_grid(20), 128);
        assert_eq!(min_grid(20), 41);
    }
}
