use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use proptest::prelude::*;

use qpkit::analysis::{
    discreteness_constant, hausdorff_young_check, parent_regularity_verdict,
    sobolev_besicovitch_norm, Direction, RegularityMode,
};
use qpkit::independence::{q_independent, z_independent_mod_zd};
use qpkit::meyer::{enumerate_band, golden_conjugate, Window};
use qpkit::number_field::{FieldScalar, FrequencyMatrix};
use qpkit::qp::{
    besicovitch_norm_exact, besicovitch_norm_grid, default_grid, lift, project, sup_norm,
    GridFunction, ParentSpectrum, TrigPolynomial,
};
use qpkit::selftest::oracle::{
    is_q_relation, is_z_relation, p_sqrt2, q_dependent_by_rank, z_dependent_by_rank,
};
use qpkit::torus::{flow, weyl_average_continuous, weyl_average_sampled, TorusPoint};

fn scalar(m: u64) -> impl Strategy<Value = FieldScalar> {
    (-30i64..=30, 1i64..=12, -30i64..=30, 1i64..=12)
        .prop_map(move |(a, ad, b, bd)| FieldScalar::from_parts((a, ad), (b, bd), m).unwrap())
}

fn matrix(d: usize, n: usize) -> impl Strategy<Value = FrequencyMatrix> {
    prop::sample::select(vec![1u64, 2, 3, 5]).prop_flat_map(move |m| {
        let entry = (-5i64..=5, 1i64..=5, -5i64..=5, 1i64..=5).prop_map(move |(a, ad, b, bd)| {
            let b = if m == 1 { 0 } else { b };
            FieldScalar::from_parts((a, ad), (b, bd), m).unwrap()
        });
        prop::collection::vec(entry, d * n)
            .prop_map(move |e| FrequencyMatrix::new(d, n, e).unwrap())
    })
}

fn coefficient() -> impl Strategy<Value = Complex64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn terms(n: usize, radius: i64, max: usize) -> impl Strategy<Value = Vec<(Vec<i64>, Complex64)>> {
    prop::collection::vec(
        (prop::collection::vec(-radius..=radius, n), coefficient()),
        1..=max,
    )
}

/// `f` over `P = (1, √2)`.
fn poly_sqrt2(radius: i64, max: usize) -> impl Strategy<Value = TrigPolynomial> {
    terms(2, radius, max).prop_map(|t| TrigPolynomial::new(p_sqrt2(), t).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_is_a_ring_with_conjugation(
        (x, y, z) in prop::sample::select(vec![2u64, 3, 5, 7]).prop_flat_map(|m| (scalar(m), scalar(m), scalar(m)))
    ) {
        prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
        prop_assert_eq!((&x * &y).conjugate(), &x.conjugate() * &y.conjugate());
        prop_assert!((&x * &x.conjugate()).is_rational());
        if !x.is_zero() {
            prop_assert_eq!(&(&y / &x) * &x, y);
        }
    }

    #[test]
    fn floor_and_sign_are_exact(x in scalar(2)) {
        let fl = FieldScalar::rational(num_rational::BigRational::from_integer(x.floor()));
        prop_assert!(fl <= x);
        prop_assert!(x < &fl + &FieldScalar::one());
        prop_assert_eq!(x.signum(), if x.is_zero() { 0 } else if x.to_f64() > 0.0 { 1 } else { -1 });
        let naive = x.rational_part().to_f64().unwrap() + x.radical_part().to_f64().unwrap() * 2f64.sqrt();
        prop_assert!((x.to_f64() - naive).abs() <= 1e-12 * (1.0 + naive.abs()));
    }

    #[test]
    fn witnesses_are_exact_and_verdicts_match_rank(p in (1usize..=2, 1usize..=3).prop_flat_map(|(d, n)| matrix(d, n))) {
        let q = q_independent(&p);
        prop_assert_eq!(q.independent, !q_dependent_by_rank(&p));
        if let Some(w) = &q.witness {
            prop_assert!(is_q_relation(&p, w));
        }
        let z = z_independent_mod_zd(&p);
        prop_assert_eq!(z.independent, !z_dependent_by_rank(&p));
        if let Some(w) = &z.witness {
            prop_assert!(is_z_relation(&p, w));
        }
    }

    #[test]
    fn rescaling_scales_the_discreteness_constant(f in poly_sqrt2(6, 6), num in 1i64..=9, den in 1i64..=9) {
        prop_assume!(f.terms().any(|(k, _)| k.iter().any(|&x| x != 0)));
        let c = FieldScalar::from_ratio(num, den);
        let g = TrigPolynomial::new(f.matrix().scaled(&c).unwrap(), f.terms().map(|(k, v)| (k.clone(), *v))).unwrap();
        let (a, b) = (discreteness_constant(&f).unwrap(), discreteness_constant(&g).unwrap());
        prop_assert_eq!(b.squared, &a.squared * &(&c * &c));
    }

    #[test]
    fn lift_is_multiplicative_and_inverted_by_project(f in poly_sqrt2(5, 6), g in poly_sqrt2(5, 6)) {
        prop_assert_eq!(&project(&lift(&f).unwrap(), f.matrix()).unwrap(), &f);
        let fg = f.product(&g).unwrap();
        let conv = lift(&f).unwrap().convolve(&lift(&g).unwrap()).unwrap();
        let diff = lift(&fg).unwrap().sub(&conv).unwrap();
        prop_assert!(diff.wiener_norm() <= 1e-12);
    }

    #[test]
    fn restriction_of_the_parent_is_the_function(f in poly_sqrt2(5, 6), x in -100.0f64..100.0) {
        let y = flow(f.matrix(), &TorusPoint::origin(2), &[x]).unwrap();
        let parent = lift(&f).unwrap();
        prop_assert!((parent.evaluate(y.coords()) - f.evaluate(&[x])).norm() <= 1e-9);
    }

    #[test]
    fn grid_transform_recovers_coefficients(t in terms(2, 7, 10)) {
        let parent = ParentSpectrum::new(2, t).unwrap();
        let g = GridFunction::from_spectrum(&parent, default_grid(parent.max_index())).unwrap();
        let back = g.to_spectrum(1e-13);
        prop_assert!(back.sub(&parent).unwrap().wiener_norm() <= 1e-12);
    }

    #[test]
    fn sup_interval_brackets_every_value(t in terms(2, 5, 8), y in prop::collection::vec(0.0f64..1.0, 2)) {
        let parent = ParentSpectrum::new(2, t).unwrap();
        let s = sup_norm(&parent, 32).unwrap();
        prop_assert!(parent.evaluate(&y).norm() <= s.upper + 1e-12);
        prop_assert!(s.lower <= parent.wiener_norm() + 1e-12);
    }

    #[test]
    fn even_norms_agree_between_paths(f in poly_sqrt2(4, 5), half in 1u32..=3) {
        let q = 2.0 * half as f64;
        let grid = 4 * default_grid(f.max_index()) * half as usize;
        let exact = besicovitch_norm_exact(&f, q).unwrap();
        let quad = besicovitch_norm_grid(&f, q, grid).unwrap();
        prop_assert!((exact - quad).abs() <= 1e-10 * (1.0 + exact));
    }

    #[test]
    fn sobolev_norm_at_order_zero_is_the_l2_norm(f in poly_sqrt2(5, 6)) {
        let a = sobolev_besicovitch_norm(&f, 0.0, 2.0).unwrap();
        let b = besicovitch_norm_exact(&f, 2.0).unwrap();
        prop_assert!((a - b).abs() <= 1e-12);
    }

    #[test]
    fn hausdorff_young_holds(f in poly_sqrt2(3, 5), q in prop::sample::select(vec![1.0, 1.25, 4.0 / 3.0, 1.5, 3.0, 4.0, 5.0])) {
        let r = hausdorff_young_check(&f, q, 4 * default_grid(f.max_index())).unwrap();
        prop_assert_eq!(r.direction, if q < 2.0 { Direction::Ge } else { Direction::Le });
        prop_assert!(r.slack >= -1e-8, "slack {}", r.slack);
    }

    #[test]
    fn regularity_never_exceeds_the_transfer_bound(
        f in poly_sqrt2(4, 5),
        r in 0i64..=8,
        eta in 0.01f64..0.99,
        s in 0.0f64..8.0,
        q in 1.01f64..6.0,
    ) {
        let n = f.matrix().n() as f64;
        let v = parent_regularity_verdict(&f, RegularityMode::Holder { r, eta });
        if let Some(c) = v.guaranteed_class {
            prop_assert!(c <= r - n as i64);
        }
        let v = parent_regularity_verdict(&f, RegularityMode::Sobolev { s, q });
        if let Some(c) = v.guaranteed_class {
            prop_assert!((c as f64) < s - n / q);
        }
    }

    #[test]
    fn flow_is_a_group_action(y in prop::collection::vec(0.0f64..1.0, 2), a in -50.0f64..50.0, b in -50.0f64..50.0) {
        let p = p_sqrt2();
        let y = TorusPoint::new(y).unwrap();
        let two_steps = flow(&p, &flow(&p, &y, &[a]).unwrap(), &[b]).unwrap();
        let one_step = flow(&p, &y, &[a + b]).unwrap();
        prop_assert!(two_steps.distance(&one_step) <= 1e-11);
    }

    #[test]
    fn weyl_closed_form_matches_quadrature(t in terms(2, 3, 4), y in prop::collection::vec(0.0f64..1.0, 2), horizon in 0.5f64..4.0) {
        let parent = ParentSpectrum::new(2, t).unwrap();
        let p = p_sqrt2();
        let y = TorusPoint::new(y).unwrap();
        let closed = weyl_average_continuous(&parent, &p, &y, horizon).unwrap();
        let sampled = weyl_average_sampled(|z| parent.evaluate(z), &p, &y, horizon, 20_000).unwrap();
        prop_assert!((closed - sampled.value).norm() <= 1e-6);
    }

    #[test]
    fn band_matches_disc_scan(lo in -12i64..0, hi in 1i64..12, den in 1i64..=8, r in 1i64..40, closed in any::<bool>()) {
        let (a, b) = (FieldScalar::from_ratio(lo, den), FieldScalar::from_ratio(hi, den));
        let w = if closed { Window::closed(a, b).unwrap() } else { Window::half_open(a, b).unwrap() };
        let band = enumerate_band(&w, r as f64).unwrap();
        let mut got: Vec<(i64, i64)> = band.points.iter().map(|p| (p.m, p.n)).collect();
        got.sort();
        let conj = golden_conjugate();
        let mut scan = Vec::new();
        for m in -r..=r {
            for n in -r..=r {
                if m * m + n * n <= r * r && w.contains(&(&FieldScalar::from_int(m) + &conj.scale_int(n))) {
                    scan.push((m, n));
                }
            }
        }
        prop_assert_eq!(got, scan);
    }
}

#[test]
fn integer_floor_of_golden_ratio() {
    assert_eq!(FieldScalar::golden_ratio().floor(), BigInt::from(1));
    assert_eq!(golden_conjugate().floor(), BigInt::from(-1));
}
