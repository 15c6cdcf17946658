//! Regularity of parents: discreteness constant, Hölder and Sobolev verdicts.

use num_complex::Complex64;
use qpkit::analysis::{
    discreteness_constant, holder_decay_bound, parent_regularity_verdict, RegularityMode,
};
use qpkit::number_field::{FieldScalar, FrequencyMatrix};
use qpkit::qp::TrigPolynomial;

fn main() {
    let p =
        FrequencyMatrix::row(vec![FieldScalar::one(), FieldScalar::sqrt_of(2).unwrap()]).unwrap();
    // Coefficients decaying like |k|^-8 on a box of lattice points.
    let terms = (-40i64..=40)
        .flat_map(|a| (-40i64..=40).map(move |b| (a, b)))
        .filter(|&(a, b)| (a, b) != (0, 0))
        .map(|(a, b)| {
            let r2 = (a * a + b * b) as f64;
            (vec![a, b], Complex64::new(r2.powi(-4), 0.0))
        });
    let f = TrigPolynomial::new(p.clone(), terms).unwrap();

    let d = discreteness_constant(&f).unwrap();
    println!(
        "D' = {:.6} (squared {}) at k = {:?}",
        d.value, d.squared, d.argmin
    );
    let scaled = TrigPolynomial::new(
        p.scaled(&FieldScalar::from_ratio(3, 2)).unwrap(),
        f.terms().map(|(k, c)| (k.clone(), *c)),
    )
    .unwrap();
    println!(
        "after scaling P by 3/2: D' = {:.6}",
        discreteness_constant(&scaled).unwrap().value
    );

    let h = holder_decay_bound(&f, 0.5, 10.0).unwrap();
    println!("Hölder decay bound holds: {}", h.holds);

    for mode in [
        RegularityMode::Holder { r: 4, eta: 0.5 },
        RegularityMode::Sobolev { s: 4.0, q: 2.0 },
        RegularityMode::Sobolev { s: 1.5, q: 2.0 },
    ] {
        let v = parent_regularity_verdict(&f, mode);
        println!("{}", serde_json::to_string(&v).unwrap());
    }
}
