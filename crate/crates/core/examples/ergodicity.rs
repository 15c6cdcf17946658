//! Unique ergodicity of the ℝᵈ- and ℤᵈ-actions for a few frequency matrices.

use qpkit::independence::ergodicity_report;
use qpkit::number_field::{FieldScalar, FrequencyMatrix};

fn main() {
    let one = FieldScalar::one();
    let sqrt2 = FieldScalar::sqrt_of(2).unwrap();
    let third = FieldScalar::from_ratio(1, 3);
    let cases = [
        ("(1, √2)", vec![one.clone(), sqrt2.clone()]),
        ("(√2, 2√2)", vec![sqrt2.clone(), sqrt2.scale_int(2)]),
        ("(√2, 1/3 + √2)", vec![sqrt2.clone(), &third + &sqrt2]),
        (
            "(√2/2, √2/3)",
            vec![
                sqrt2.checked_div(&FieldScalar::from_int(2)).unwrap(),
                &sqrt2 * &third,
            ],
        ),
    ];
    for (name, row) in cases {
        let r = ergodicity_report(&FrequencyMatrix::row(row).unwrap());
        println!(
            "P = {name}: R-action {}, Z-action {}",
            r.r_action, r.z_action
        );
        for note in &r.notes {
            println!("    {note}");
        }
    }
}
