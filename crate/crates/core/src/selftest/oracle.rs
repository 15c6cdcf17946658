//! Brute-force reference implementations and random instance generators.
//!
//! The relation searches work on machine integers after clearing
//! denominators and share no code with the lattice routines they check.
//! A bounded search can only confirm a relation; [`q_dependent_by_rank`] and
//! [`z_dependent_by_rank`] settle existence outright by Gaussian elimination.

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use crate::number_field::{FieldScalar, FrequencyMatrix, RATIONAL_FIELD};
use crate::qp::{LatticeVec, ParentSpectrum, TrigPolynomial};

/// Default coefficient bound for relation searches.
pub const DEFAULT_BOUND: i64 = 10;

/// Integer form of `P`: row `i` of `P` equals `(A[i] + B[i]√m) / L[i]`.
struct Cleared {
    a: Vec<Vec<i128>>,
    b: Vec<Vec<i128>>,
    l: Vec<i128>,
}

fn clear(p: &FrequencyMatrix) -> Cleared {
    let (d, n) = (p.d(), p.n());
    let mut out = Cleared {
        a: vec![vec![0; n]; d],
        b: vec![vec![0; n]; d],
        l: vec![1; d],
    };
    for i in 0..d {
        let mut l: i128 = 1;
        for j in 0..n {
            let e = p.entry(i, j);
            for r in [e.rational_part(), e.radical_part()] {
                l = l.lcm(&r.denom().to_i128().expect("small denominator"));
            }
        }
        for j in 0..n {
            let e = p.entry(i, j);
            let scale = |r: &num_rational::BigRational| {
                r.numer().to_i128().expect("small numerator")
                    * (l / r.denom().to_i128().expect("small denominator"))
            };
            out.a[i][j] = scale(e.rational_part());
            out.b[i][j] = scale(e.radical_part());
        }
        out.l[i] = l;
    }
    out
}

/// Visits every nonzero `v ∈ [−bound, bound]ⁿ` whose first nonzero entry is
/// positive, stopping when `f` returns true.
fn search(n: usize, bound: i64, mut f: impl FnMut(&[i64]) -> bool) -> Option<Vec<i64>> {
    let mut v = vec![-bound; n];
    loop {
        if v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0) && f(&v) {
            return Some(v);
        }
        let mut i = n;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if v[i] < bound {
                v[i] += 1;
                break;
            }
            v[i] = -bound;
        }
    }
}

fn dot(row: &[i128], v: &[i64]) -> i128 {
    row.iter().zip(v).map(|(a, &x)| a * x as i128).sum()
}

/// Rank over ℚ by row reduction.
pub fn rational_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        for r in rank + 1..rows.len() {
            if !rows[r][c].is_zero() {
                let f = &rows[r][c] / &rows[rank][c];
                for j in c..cols {
                    let t = &f * &rows[rank][j];
                    rows[r][j] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn parts(p: &FrequencyMatrix, radical: bool) -> Vec<Vec<BigRational>> {
    (0..p.d())
        .map(|i| {
            (0..p.n())
                .map(|j| {
                    let e = p.entry(i, j);
                    if radical {
                        e.radical_part().clone()
                    } else {
                        e.rational_part().clone()
                    }
                })
                .collect()
        })
        .collect()
}

/// A ℚ-relation exists iff the stacked rational and radical parts have rank `< n`.
pub fn q_dependent_by_rank(p: &FrequencyMatrix) -> bool {
    let mut rows = parts(p, false);
    rows.extend(parts(p, true));
    rational_rank(rows) < p.n()
}

/// `Σ aⱼpⱼ ∈ ℤᵈ` has a solution `a ≠ 0` iff the radical parts have rank
/// `< n`: a rational kernel vector, scaled to clear denominators, is one.
pub fn z_dependent_by_rank(p: &FrequencyMatrix) -> bool {
    rational_rank(parts(p, true)) < p.n()
}

/// Some `r ≠ 0` with `|rⱼ| ≤ bound` and `Σ rⱼpⱼ = 0`, by exhaustive search.
pub fn brute_force_q_relation(p: &FrequencyMatrix, bound: i64) -> Option<Vec<i64>> {
    let c = clear(p);
    search(p.n(), bound, |v| {
        (0..p.d()).all(|i| dot(&c.a[i], v) == 0 && dot(&c.b[i], v) == 0)
    })
}

/// Some `a ≠ 0` with `|aⱼ| ≤ bound` and `Σ aⱼpⱼ ∈ ℤᵈ`, by exhaustive search.
pub fn brute_force_z_relation(p: &FrequencyMatrix, bound: i64) -> Option<Vec<i64>> {
    let c = clear(p);
    search(p.n(), bound, |v| {
        (0..p.d()).all(|i| dot(&c.b[i], v) == 0 && dot(&c.a[i], v).rem_euclid(c.l[i]) == 0)
    })
}

/// Exact check of `Σ rⱼpⱼ = 0`.
pub fn is_q_relation(p: &FrequencyMatrix, r: &[i64]) -> bool {
    r.iter().any(|&x| x != 0) && p.apply(r).iter().all(FieldScalar::is_zero)
}

/// Exact check of `Σ aⱼpⱼ ∈ ℤᵈ`.
pub fn is_z_relation(p: &FrequencyMatrix, a: &[i64]) -> bool {
    a.iter().any(|&x| x != 0) && p.apply(a).iter().all(FieldScalar::is_integer)
}

/// A rational `p/q` with `|p| ≤ height` and `1 ≤ q ≤ height`.
pub fn random_rational<R: Rng>(rng: &mut R, height: i64) -> (i64, i64) {
    (rng.gen_range(-height..=height), rng.gen_range(1..=height))
}

/// Random `a + b√m` of the given height; `m = 1` gives a rational.
pub fn random_scalar<R: Rng>(rng: &mut R, m: u64, height: i64) -> FieldScalar {
    let a = if rng.gen_bool(0.75) {
        random_rational(rng, height)
    } else {
        (0, 1)
    };
    let b = if m != RATIONAL_FIELD && rng.gen_bool(0.5) {
        random_rational(rng, height)
    } else {
        (0, 1)
    };
    FieldScalar::from_parts(a, b, m).expect("valid radicand")
}

/// A random `d×n` matrix over ℚ(√m). With probability 1/4 one column is
/// replaced by a small rational combination of the others, so dependent
/// instances are common.
pub fn random_matrix<R: Rng>(
    rng: &mut R,
    d: usize,
    n: usize,
    m: u64,
    height: i64,
) -> FrequencyMatrix {
    let mut cols: Vec<Vec<FieldScalar>> = (0..n)
        .map(|_| (0..d).map(|_| random_scalar(rng, m, height)).collect())
        .collect();
    if n >= 2 && rng.gen_bool(0.25) {
        let target = rng.gen_range(0..n);
        let mut combo = vec![FieldScalar::zero().with_context(m).expect("rational"); d];
        for (j, col) in cols.iter().enumerate() {
            if j == target {
                continue;
            }
            let (num, den) = (rng.gen_range(-2..=2), rng.gen_range(1..=2));
            let c = FieldScalar::from_ratio(num, den);
            for (acc, x) in combo.iter_mut().zip(col) {
                *acc = acc
                    .checked_add(&x.checked_mul(&c).expect("same field"))
                    .expect("same field");
            }
        }
        cols[target] = combo;
    }
    let rows = (0..d)
        .map(|i| cols.iter().map(|c| c[i].clone()).collect())
        .collect();
    FrequencyMatrix::from_rows(rows).expect("consistent field")
}

/// A random lattice point with entries in `[−radius, radius]`.
pub fn random_lattice_point<R: Rng>(rng: &mut R, n: usize, radius: i64) -> LatticeVec {
    (0..n).map(|_| rng.gen_range(-radius..=radius)).collect()
}

pub fn random_coefficient<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// A parent with up to `terms` random coefficients on `[−radius, radius]ⁿ`.
pub fn random_parent<R: Rng>(rng: &mut R, n: usize, terms: usize, radius: i64) -> ParentSpectrum {
    let t: Vec<_> = (0..terms)
        .map(|_| {
            (
                random_lattice_point(rng, n, radius),
                random_coefficient(rng),
            )
        })
        .collect();
    ParentSpectrum::new(n, t).expect("finite coefficients")
}

/// A random polynomial over `P`.
pub fn random_polynomial<R: Rng>(
    rng: &mut R,
    p: &FrequencyMatrix,
    terms: usize,
    radius: i64,
) -> TrigPolynomial {
    let t: Vec<_> = (0..terms)
        .map(|_| {
            (
                random_lattice_point(rng, p.n(), radius),
                random_coefficient(rng),
            )
        })
        .collect();
    TrigPolynomial::new(p.clone(), t).expect("finite coefficients")
}

/// `P = (1, √2)`.
pub fn p_sqrt2() -> FrequencyMatrix {
    FrequencyMatrix::row(vec![
        FieldScalar::one(),
        FieldScalar::sqrt_of(2).expect("square-free"),
    ])
    .expect("valid matrix")
}

/// A ℚ-independent `d×n` matrix over ℚ(√m), redrawn until independent.
pub fn random_independent_matrix<R: Rng>(
    rng: &mut R,
    d: usize,
    n: usize,
    m: u64,
    height: i64,
) -> FrequencyMatrix {
    let dim = if m == RATIONAL_FIELD { d } else { 2 * d };
    assert!(
        n <= dim,
        "{n} columns cannot be independent in a {dim}-dimensional Q-space"
    );
    loop {
        let p = random_matrix(rng, d, n, m, height);
        if crate::independence::q_independent(&p).independent {
            return p;
        }
    }
}
