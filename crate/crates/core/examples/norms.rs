//! Besicovitch norms, Parseval, and the certified sup-norm interval.

use num_complex::Complex64;
use qpkit::number_field::{FieldScalar, FrequencyMatrix};
use qpkit::qp::{
    b2_isometry_check, besicovitch_norm, default_grid, lift, sup_norm, sup_norm_qp, wiener_norm,
    TrigPolynomial,
};

fn main() {
    let p =
        FrequencyMatrix::row(vec![FieldScalar::one(), FieldScalar::sqrt_of(2).unwrap()]).unwrap();
    let f = TrigPolynomial::new(
        p.clone(),
        [
            (vec![1, 0], Complex64::new(1.0, 0.0)),
            (vec![0, 1], Complex64::new(2.0, 0.0)),
        ],
    )
    .unwrap();

    for q in [1.0, 1.5, 2.0, 3.0, 4.0] {
        println!("‖f‖_{q} = {:.9}", besicovitch_norm(&f, q, 64).unwrap());
    }
    println!("33^(1/4) = {:.9}", 33f64.powf(0.25));

    let parent = lift(&f).unwrap();
    let iso = b2_isometry_check(&parent, &p).unwrap();
    println!(
        "Σ|F̂|² = {}, Σ|f̂|² = {}",
        iso.parent_l2_squared, iso.projected_l2_squared
    );

    let s = sup_norm(&parent, default_grid(parent.max_index()) * 8).unwrap();
    println!(
        "‖F‖_∞ ∈ [{:.6}, {:.6}], ‖f‖_W = {}",
        s.lower,
        s.upper,
        wiener_norm(&f)
    );
    for window in [10.0, 100.0, 1000.0] {
        let sample = sup_norm_qp(&f, 100_000, window).unwrap();
        println!("max |f| on [0, {window}]: {:.6}", sample.lower);
    }
}
