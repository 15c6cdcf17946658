//! Hausdorff-Young in both directions for `f = e(x) + 2e(√2x)`.

use num_complex::Complex64;
use qpkit::analysis::hausdorff_young_check;
use qpkit::number_field::{FieldScalar, FrequencyMatrix};
use qpkit::qp::TrigPolynomial;

fn main() {
    let p =
        FrequencyMatrix::row(vec![FieldScalar::one(), FieldScalar::sqrt_of(2).unwrap()]).unwrap();
    let f = TrigPolynomial::new(
        p,
        [
            (vec![1, 0], Complex64::new(1.0, 0.0)),
            (vec![0, 1], Complex64::new(2.0, 0.0)),
        ],
    )
    .unwrap();
    println!("    q   ‖f‖_q      ‖f̂‖_q'   direction  slack");
    for q in [1.0, 4.0 / 3.0, 1.5, 2.0, 3.0, 4.0, 6.0] {
        let r = hausdorff_young_check(&f, q, 64).unwrap();
        println!(
            "{q:>5.3}  {:.7}  {:.7}  {:?}  {:+.3e}",
            r.lhs, r.rhs, r.direction, r.slack
        );
    }
}
