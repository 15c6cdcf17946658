//! Inverting `f(x) = 2 + e^{2πi√2x}` in the Wiener algebra.

use num_complex::Complex64;
use qpkit::number_field::{FieldScalar, FrequencyMatrix};
use qpkit::qp::{wiener_inverse, TrigPolynomial};

fn main() {
    let p = FrequencyMatrix::row(vec![FieldScalar::sqrt_of(2).unwrap()]).unwrap();
    let f = TrigPolynomial::new(
        p,
        [
            (vec![0], Complex64::new(2.0, 0.0)),
            (vec![1], Complex64::new(1.0, 0.0)),
        ],
    )
    .unwrap();
    let inv = wiener_inverse(&f, 64, 1e-12).unwrap();
    println!(
        "min |F| >= {:.6}, residual {:.3e} on grid {}",
        inv.certified_min, inv.residual, inv.verification_grid
    );
    println!(" j  computed              (-1)^j 2^-(j+1)");
    for j in 0..=10 {
        let c = inv.inverse.coeff_at(&[j]);
        println!(
            "{j:>2}  {:+.15}  {:+.15}",
            c.re,
            (-1f64).powi(j as i32) * 2f64.powi(-(j as i32 + 1))
        );
    }
    println!(
        "{} terms kept, {:.3e} dropped",
        inv.inverse.len(),
        inv.dropped_mass
    );
}
