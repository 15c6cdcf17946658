//! A quasi-periodic polynomial, its periodic parent, and the way back.

use num_complex::Complex64;
use qpkit::number_field::{FieldScalar, FrequencyMatrix};
use qpkit::qp::{
    bochner_fejer_sum, bohr_coefficient, bohr_mean, evaluate_parent, fejer_sum, lift, project,
    TrigPolynomial,
};
use qpkit::torus::{flow, TorusPoint};

fn main() {
    let sqrt2 = FieldScalar::sqrt_of(2).unwrap();
    let p = FrequencyMatrix::row(vec![FieldScalar::one(), sqrt2.clone()]).unwrap();
    let f = TrigPolynomial::new(
        p.clone(),
        [
            (vec![0, 0], Complex64::new(1.0, 0.0)),
            (vec![1, 0], Complex64::new(0.5, 0.0)),
            (vec![-1, 2], Complex64::new(0.0, -0.3)),
        ],
    )
    .unwrap();
    println!("f = {}", serde_json::to_string(&f).unwrap());

    let parent = lift(&f).unwrap();
    println!("F = {}", serde_json::to_string(&parent).unwrap());
    assert_eq!(project(&parent, &p).unwrap(), f);

    let x = 0.37;
    let y = flow(&p, &TorusPoint::origin(2), &[x]).unwrap();
    println!("f({x}) = {:.12}", f.evaluate(&[x]));
    println!("F(Pᵀx) = {:.12}", evaluate_parent(&parent, y.coords()));

    let lam = vec![&FieldScalar::from_int(-1) + &sqrt2.scale_int(2)];
    println!(
        "Bohr coefficient at -1 + 2√2: {:.3}",
        bohr_coefficient(&f, &lam)
    );
    println!("mean: {:.3}", bohr_mean(&f).unwrap());

    for order in [1, 2, 4, 8] {
        let a = bochner_fejer_sum(&f, order, &[x]).unwrap();
        let b = fejer_sum(&parent, order, y.coords()).unwrap();
        println!("Fejer order {order}: {a:.12} vs {b:.12}");
    }
}
