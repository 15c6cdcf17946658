//! Weyl averages along `x ↦ Pᵀx mod 1` for `P = (1, √2)`: closed form,
//! midpoint-rule check, and the decay table for both actions.

use num_complex::Complex64;
use qpkit::number_field::{FieldScalar, FrequencyMatrix};
use qpkit::qp::ParentSpectrum;
use qpkit::torus::{
    equidistribution_table, equidistribution_table_discrete, weyl_average_continuous,
    weyl_average_sampled, TorusPoint,
};

fn main() {
    let p =
        FrequencyMatrix::row(vec![FieldScalar::one(), FieldScalar::sqrt_of(2).unwrap()]).unwrap();
    let parent = ParentSpectrum::new(
        2,
        [
            (vec![1, 0], Complex64::new(1.0, 0.0)),
            (vec![0, 1], Complex64::new(0.5, 0.0)),
            (vec![1, -1], Complex64::new(0.0, 0.25)),
        ],
    )
    .unwrap();
    let y = TorusPoint::new(vec![0.1, 0.7]).unwrap();

    let closed = weyl_average_continuous(&parent, &p, &y, 10.0).unwrap();
    let sampled = weyl_average_sampled(|z| parent.evaluate(z), &p, &y, 10.0, 200_000).unwrap();
    println!(
        "A_10 F(y): closed form {closed:.8}, midpoint rule {:.8}",
        sampled.value
    );

    println!("\ncontinuous averages (T, |A_T F - mean|, bound)");
    for r in equidistribution_table(&parent, &p, &y, &[10.0, 100.0, 1000.0, 10000.0]).unwrap() {
        println!("{:>8} {:.3e} {:.3e}", r.t, r.abs_error, r.bound);
    }

    // The character (1, 0) is invariant under the ℤ-action, so its average never decays.
    println!("\ndiscrete averages (T, |A_T F - mean|, bound)");
    for r in equidistribution_table_discrete(&parent, &p, &y, &[10, 100, 1000, 10000]).unwrap() {
        println!("{:>8} {:.3e} {:.3e}", r.t, r.abs_error, r.bound);
    }
}
