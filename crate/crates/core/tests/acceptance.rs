//! Acceptance criteria 1–10. Prints one line per criterion and exits
//! nonzero if any fails.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use qpkit::analysis::{
    derivative_series_probe, discreteness_constant, hausdorff_young_check, Direction,
};
use qpkit::independence::{q_independent, z_independent_mod_zd};
use qpkit::meyer::{enumerate_band, golden_comparability, pathological_parent, Window};
use qpkit::number_field::{FieldScalar, FrequencyMatrix};
use qpkit::qp::{
    besicovitch_norm_grid, bochner_fejer_sum, default_grid, fejer_sum, lift, project,
    quadrature_grid, wiener_inverse, ParentSpectrum, TrigPolynomial,
};
use qpkit::selftest::oracle::{
    brute_force_q_relation, brute_force_z_relation, is_q_relation, is_z_relation, p_sqrt2,
    q_dependent_by_rank, random_coefficient, random_independent_matrix, random_lattice_point,
    random_matrix, random_polynomial, z_dependent_by_rank, DEFAULT_BOUND,
};
use qpkit::torus::{flow, weyl_average_continuous, weyl_average_discrete, TorusPoint};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_0000 + salt)
}

fn random_y(rng: &mut ChaCha8Rng, n: usize) -> TorusPoint {
    TorusPoint::new((0..n).map(|_| rng.gen::<f64>()).collect()).unwrap()
}

fn c1_independence() -> Verdict {
    let mut r = rng(1);
    let cases: Vec<FrequencyMatrix> = (0..500)
        .map(|_| {
            let m = [1u64, 2, 5][r.gen_range(0..3)];
            let (d, n) = (r.gen_range(1..=3), r.gen_range(1..=4));
            random_matrix(&mut r, d, n, m, 5)
        })
        .collect();
    type Search = fn(&FrequencyMatrix, i64) -> Option<Vec<i64>>;
    type Check = fn(&FrequencyMatrix, &[i64]) -> bool;
    // (verdicts agree, searches inconclusive)
    let results: Vec<(bool, usize)> = cases
        .par_iter()
        .map(|p| {
            let tests: [(_, Search, Check, bool); 2] = [
                (
                    q_independent(p),
                    brute_force_q_relation,
                    is_q_relation,
                    q_dependent_by_rank(p),
                ),
                (
                    z_independent_mod_zd(p),
                    brute_force_z_relation,
                    is_z_relation,
                    z_dependent_by_rank(p),
                ),
            ];
            let mut agree = true;
            let mut inconclusive = 0;
            for (v, search, check, dependent) in tests {
                let found = search(p, DEFAULT_BOUND);
                agree &= v.independent != dependent
                    && v.independent == v.witness.is_none()
                    && v.witness.as_deref().map_or(true, |w| check(p, w))
                    && found
                        .as_deref()
                        .map_or(true, |w| !v.independent && check(p, w));
                inconclusive += (dependent && found.is_none()) as usize;
            }
            (agree, inconclusive)
        })
        .collect();
    let agree = results.iter().filter(|r| r.0).count();
    let inconclusive: usize = results.iter().map(|r| r.1).sum();
    verdict(
        agree == cases.len(),
        format!(
            "{agree}/{} matrices: verdicts match the rank oracle, bound-{DEFAULT_BOUND} search never contradicts, \
             witnesses exact ({inconclusive} dependent cases have no relation within bound {DEFAULT_BOUND})",
            cases.len()
        ),
    )
}

fn c2_weyl_decay() -> Verdict {
    let mut r = rng(2);
    let p = p_sqrt2();
    let (mut checks, mut worst) = (0, f64::NEG_INFINITY);
    for _ in 0..20 {
        let k1 = nonzero_point(&mut r, 2, 4);
        let mut k2 = nonzero_point(&mut r, 2, 4);
        while k2 == k1 {
            k2 = nonzero_point(&mut r, 2, 4);
        }
        let parent = ParentSpectrum::new(
            2,
            [
                (k1, random_coefficient(&mut r)),
                (k2, random_coefficient(&mut r)),
            ],
        )
        .unwrap();
        let mean = parent.integral();
        for t in [10.0, 100.0, 1000.0] {
            let bound: f64 = parent
                .iter()
                .filter(|(k, _)| k.iter().any(|&x| x != 0))
                .map(|(k, c)| c.norm() / (2.0 * PI * p.apply_f64(k)[0].abs() * t))
                .sum();
            for _ in 0..10 {
                let y = random_y(&mut r, 2);
                let err = (weyl_average_continuous(&parent, &p, &y, t).unwrap() - mean).norm();
                worst = worst.max(err - bound);
                checks += 1;
            }
        }
    }
    verdict(
        worst <= 1e-12,
        format!("{checks} averages, max(error - bound) = {worst:.3e}"),
    )
}

fn nonzero_point(r: &mut ChaCha8Rng, n: usize, radius: i64) -> Vec<i64> {
    loop {
        let k = random_lattice_point(r, n, radius);
        if k.iter().any(|&x| x != 0) {
            return k;
        }
    }
}

fn c3_invariant_character() -> Verdict {
    let mut r = rng(3);
    let p = p_sqrt2();
    let chi = ParentSpectrum::character(vec![1, 0]);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let y = random_y(&mut r, 2);
        let expected = Complex64::from_polar(1.0, 2.0 * PI * y.coords()[0]);
        for t in [1, 10, 100, 1000, 10_000, 123_457] {
            worst = worst.max((weyl_average_discrete(&chi, &p, &y, t).unwrap() - expected).norm());
        }
    }
    verdict(
        worst <= 1e-12,
        format!("max |A_T chi(y) - e(y1)| = {worst:.3e} over 120 (y, T)"),
    )
}

fn c4_round_trip_and_fejer() -> Verdict {
    let mut r = rng(4);
    let mut exact = 0;
    for _ in 0..1000 {
        let m = [2u64, 3, 5][r.gen_range(0..3)];
        // ℚ(√m) is 2-dimensional over ℚ, so independence needs n <= 2d.
        let d = r.gen_range(1..=2);
        let n = r.gen_range(1..=(2 * d).min(3));
        let p = random_independent_matrix(&mut r, d, n, m, 5);
        let terms = r.gen_range(1..=8);
        let f = random_polynomial(&mut r, &p, terms, 6);
        let back = project(&lift(&f).unwrap(), &p).unwrap();
        exact += (back == f) as usize;
    }
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let p = random_independent_matrix(&mut r, 1, 2, 2, 5);
        let terms = r.gen_range(1..=10);
        let f = random_polynomial(&mut r, &p, terms, 60);
        let order = r.gen_range(1..=50);
        let x: Vec<f64> = vec![r.gen_range(-50.0..50.0)];
        let y = flow(&p, &TorusPoint::origin(p.n()), &x).unwrap();
        let lhs = bochner_fejer_sum(&f, order, &x).unwrap();
        let rhs = fejer_sum(&lift(&f).unwrap(), order, y.coords()).unwrap();
        worst = worst.max((lhs - rhs).norm());
    }
    verdict(
        exact == 1000 && worst <= 1e-12,
        format!("{exact}/1000 exact round trips; Fejer identity max error {worst:.3e}"),
    )
}

fn c5_parseval() -> Verdict {
    let mut r = rng(5);
    let mut worst = 0.0f64;
    for i in 0..60 {
        let n = 1 + i % 3;
        let d = if n == 3 { 2 } else { 1 };
        let p = random_independent_matrix(&mut r, d, n, [2u64, 3, 5][i % 3], 5);
        let terms = r.gen_range(1..=25);
        let mut f = random_polynomial(&mut r, &p, terms, 20);
        // Pin the extreme index so the default grid is the one for |k| <= 20.
        let mut corner = vec![0; n];
        corner[0] = 20;
        f = TrigPolynomial::new(
            p.clone(),
            f.terms()
                .map(|(k, c)| (k.clone(), *c))
                .chain([(corner, Complex64::new(0.5, 0.0))]),
        )
        .unwrap();
        let grid = default_grid(f.max_index());
        let coeff: f64 = f.terms().map(|(_, c)| c.norm_sqr()).sum();
        let norm = besicovitch_norm_grid(&f, 2.0, grid).unwrap();
        worst = worst.max((norm * norm - coeff).abs());
    }
    verdict(
        worst <= 1e-10,
        format!("60 spectra, max |‖f‖₂² - Σ|c|²| = {worst:.3e}"),
    )
}

fn c6_hausdorff_young() -> Verdict {
    let mut r = rng(6);
    let mut min_slack = f64::INFINITY;
    let mut wrong_direction = 0;
    let mut q2_gap = 0.0f64;
    for (qi, q) in [1.0, 4.0 / 3.0, 2.0, 3.0, 4.0].into_iter().enumerate() {
        for i in 0..200 {
            let n = 1 + (i + qi) % 2;
            let p = random_independent_matrix(&mut r, 1, n, 2, 5);
            let terms = r.gen_range(1..=6);
            let f = random_polynomial(&mut r, &p, terms, 3);
            let rep = hausdorff_young_check(&f, q, quadrature_grid(f.max_index(), n)).unwrap();
            let expected = if q < 2.0 {
                Direction::Ge
            } else {
                Direction::Le
            };
            if q != 2.0 && rep.direction != expected {
                wrong_direction += 1;
            }
            if q == 2.0 {
                q2_gap = q2_gap.max((rep.lhs - rep.rhs).abs());
            } else {
                min_slack = min_slack.min(rep.slack);
            }
        }
    }
    let p = p_sqrt2();
    let f = TrigPolynomial::new(
        p,
        [
            (vec![1, 0], Complex64::new(1.0, 0.0)),
            (vec![0, 1], Complex64::new(2.0, 0.0)),
        ],
    )
    .unwrap();
    let worked = hausdorff_young_check(&f, 4.0, 64).unwrap();
    let (lhs, rhs) = (33f64.powf(0.25), (1.0 + 2f64.powf(4.0 / 3.0)).powf(0.75));
    let six = |a: f64, b: f64| ((a - b) / b).abs() < 5e-7;
    let worked_ok = six(worked.lhs, lhs) && six(worked.rhs, rhs);
    verdict(
        min_slack >= -1e-8 && wrong_direction == 0 && q2_gap <= 1e-10 && worked_ok,
        format!(
            "1000 checks, min slack {min_slack:.3e}, q=2 gap {q2_gap:.3e}; q=4 example lhs {:.7} rhs {:.7}",
            worked.lhs, worked.rhs
        ),
    )
}

fn c7_wiener() -> Verdict {
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
    let worst = (0..=20)
        .map(|j: i32| {
            let expected = (-1f64).powi(j) * 2f64.powi(-(j + 1));
            (inv.inverse.coeff_at(&[j as i64]) - expected).norm()
        })
        .fold(0.0, f64::max);
    verdict(
        worst <= 1e-10 && inv.residual <= 1e-9,
        format!(
            "coefficient error {worst:.3e} for j <= 20, residual {:.3e} on grid {}",
            inv.residual, inv.verification_grid
        ),
    )
}

fn c8_pathology() -> Verdict {
    let radii = [1e3, 1e4, 1e5];
    let band = enumerate_band(&Window::default(), radii[2]).unwrap();
    let parent = pathological_parent(&band);
    let m0 = derivative_series_probe(&parent, 0, &radii);
    let m1 = derivative_series_probe(&parent, 1, &radii);
    let cauchy = m0.rows[1..]
        .iter()
        .all(|r| r.relative_increment.is_some_and(|x| x < 0.05));
    let ratios: Vec<f64> = m1
        .rows
        .windows(2)
        .map(|w| w[1].partial_sum / w[0].partial_sum)
        .collect();
    let grows = ratios.iter().all(|&x| x >= 1.5);
    let comps: Vec<_> = radii
        .iter()
        .map(|&r| golden_comparability(&band.restricted(r)).unwrap())
        .collect();
    let within = comps.iter().all(|c| c.c_low >= 0.4 && c.c_high <= 1.91);
    let incs: Vec<String> = m0.rows[1..]
        .iter()
        .map(|r| format!("{:.2}%", 100.0 * r.relative_increment.unwrap_or(f64::NAN)))
        .collect();
    verdict(
        cauchy && grows && within,
        format!(
            "m=0 increments [{}]; m=1 ratios [{}]; comparability [{:.4}, {:.4}]",
            incs.join(", "),
            ratios
                .iter()
                .map(|x| format!("{x:.2}"))
                .collect::<Vec<_>>()
                .join(", "),
            comps.iter().map(|c| c.c_low).fold(f64::INFINITY, f64::min),
            comps.iter().map(|c| c.c_high).fold(0.0, f64::max),
        ),
    )
}

fn c9_discreteness() -> Verdict {
    let p = p_sqrt2();
    let spec = [vec![1, 0], vec![0, 1], vec![1, 1]];
    let f = TrigPolynomial::new(
        p.clone(),
        spec.iter().map(|k| (k.clone(), Complex64::new(1.0, 0.0))),
    )
    .unwrap();
    let d = discreteness_constant(&f).unwrap();
    let scaled = TrigPolynomial::new(
        p.scaled(&FieldScalar::from_ratio(3, 2)).unwrap(),
        spec.iter().map(|k| (k.clone(), Complex64::new(1.0, 0.0))),
    )
    .unwrap();
    let ds = discreteness_constant(&scaled).unwrap();
    let ok = d.squared == FieldScalar::one()
        && d.value == 1.0
        && ds.squared == FieldScalar::from_ratio(9, 4)
        && ds.value == 1.5;
    verdict(
        ok,
        format!(
            "D' = {} (squared {}), rescaled D' = {} (squared {})",
            d.value, d.squared, ds.value, ds.squared
        ),
    )
}

fn c10_determinism() -> Verdict {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_qpkit"))
            .args(["selftest", "--seed", "42"])
            .output()
            .expect("qpkit runs")
    };
    let (a, b) = (run(), run());
    let same = a.stdout == b.stdout && !a.stdout.is_empty();
    verdict(
        same && a.status.success(),
        format!(
            "{} bytes, identical: {same}, exit {}",
            a.stdout.len(),
            a.status.code().unwrap_or(-1)
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 10] = [
        ("independence oracle", c1_independence),
        ("Weyl decay", c2_weyl_decay),
        ("Z-action witness", c3_invariant_character),
        ("lift/project and Fejer", c4_round_trip_and_fejer),
        ("Parseval", c5_parseval),
        ("Hausdorff-Young", c6_hausdorff_young),
        ("Wiener inverse", c7_wiener),
        ("golden pathology", c8_pathology),
        ("discreteness constant", c9_discreteness),
        ("determinism", c10_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = f();
        failed += !v.pass as usize;
        println!(
            "criterion {:>2} {:<24} {}  {} ({:.1}s)",
            i + 1,
            name,
            if v.pass { "PASS" } else { "FAIL" },
            v.detail,
            start.elapsed().as_secs_f64()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
