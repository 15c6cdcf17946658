//! Small numerical helpers shared across modules.

use std::f64::consts::PI;

use num_complex::Complex64;

/// `sin(u)/u`, with the removable singularity filled in.
pub fn sinc(u: f64) -> f64 {
    if u.abs() < 1e-8 {
        1.0 - u * u / 6.0
    } else {
        u.sin() / u
    }
}

/// Normalised Dirichlet kernel: the average of `e^{2πiθx}` over
/// `x ∈ {−T, …, T}`, i.e. `sin(π(2T+1)θ) / ((2T+1) sin(πθ))`. `theta` is the
/// fractional part of the frequency, centred in `[−1/2, 1/2)`; exact
/// integers must be routed to the `θ = 0` branch by the caller.
pub fn dirichlet_mean(theta: f64, t: u64) -> f64 {
    let width = (2 * t + 1) as f64;
    (PI * width * theta).sin() / (width * (PI * theta).sin())
}

/// `e^{2πi t}`, reducing `t` modulo 1 first.
pub fn unit_phase(t: f64) -> Complex64 {
    let r = t - t.round();
    Complex64::from_polar(1.0, 2.0 * PI * r)
}

/// Neumaier-compensated complex summation.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    re: f64,
    re_c: f64,
    im: f64,
    im_c: f64,
}

fn neumaier(sum: &mut f64, comp: &mut f64, x: f64) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp += (*sum - t) + x;
    } else {
        *comp += (x - t) + *sum;
    }
    *sum = t;
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, z: Complex64) {
        neumaier(&mut self.re, &mut self.re_c, z.re);
        neumaier(&mut self.im, &mut self.im_c, z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re + self.re_c, self.im + self.im_c)
    }
}

impl FromIterator<Complex64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        for z in iter {
            s.add(z);
        }
        s
    }
}

/// Smallest power of two that is `>= n` (and at least 1).
pub fn next_pow2(n: usize) -> usize {
    n.max(1).next_power_of_two()
}
