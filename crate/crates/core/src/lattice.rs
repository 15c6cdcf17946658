//! Integer lattices: kernels by unimodular column reduction and Hermite
//! normal forms of row lattices, over arbitrary-precision integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type IntVec = Vec<BigInt>;

/// A ℤ-basis of `{x ∈ ℤⁿ : M x = 0}` for an integer matrix with `ncols` columns.
pub fn integer_kernel(rows: &[IntVec], ncols: usize) -> Vec<IntVec> {
    let mut a: Vec<IntVec> = rows.to_vec();
    // u holds the accumulated column operations; column j of u is u[..][j]
    let mut u: Vec<IntVec> = (0..ncols)
        .map(|i| {
            (0..ncols)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut piv = 0;
    for i in 0..a.len() {
        if piv >= ncols {
            break;
        }
        for j in piv + 1..ncols {
            if a[i][j].is_zero() {
                continue;
            }
            let x = a[i][piv].clone();
            let y = a[i][j].clone();
            let eg = x.extended_gcd(&y);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let xg = &x / &g;
            let yg = &y / &g;
            // [col_piv, col_j] <- [s·col_piv + t·col_j, −(y/g)·col_piv + (x/g)·col_j]
            combine_columns(&mut a, piv, j, &s, &t, &yg, &xg);
            combine_columns(&mut u, piv, j, &s, &t, &yg, &xg);
        }
        if !a[i][piv].is_zero() {
            piv += 1;
        }
    }
    (piv..ncols)
        .map(|j| u.iter().map(|row| row[j].clone()).collect())
        .collect()
}

fn combine_columns(
    m: &mut [IntVec],
    p: usize,
    j: usize,
    s: &BigInt,
    t: &BigInt,
    yg: &BigInt,
    xg: &BigInt,
) {
    for row in m.iter_mut() {
        let cp = row[p].clone();
        let cj = row[j].clone();
        row[p] = s * &cp + t * &cj;
        row[j] = xg * &cj - yg * &cp;
    }
}

/// Hermite normal form of the lattice spanned by `basis` (rows). Zero rows
/// are dropped; pivots are positive and entries above a pivot lie in
/// `[0, pivot)`.
pub fn row_hnf(basis: &[IntVec]) -> Vec<IntVec> {
    let mut rows: Vec<IntVec> = basis
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pr = 0;
    for c in 0..ncols {
        if pr >= rows.len() {
            break;
        }
        // gcd-combine column c over rows pr..
        loop {
            let mut best: Option<usize> = None;
            for r in pr..rows.len() {
                if !rows[r][c].is_zero()
                    && best.map_or(true, |b| rows[r][c].abs() < rows[b][c].abs())
                {
                    best = Some(r);
                }
            }
            let Some(b) = best else { break };
            rows.swap(pr, b);
            let mut done = true;
            for r in pr + 1..rows.len() {
                if rows[r][c].is_zero() {
                    continue;
                }
                let q = rows[r][c].div_floor(&rows[pr][c]);
                let pivot_row = rows[pr].clone();
                for (x, p) in rows[r].iter_mut().zip(&pivot_row) {
                    *x -= &q * p;
                }
                if !rows[r][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[pr][c].is_zero() {
            continue;
        }
        if rows[pr][c].is_negative() {
            for x in rows[pr].iter_mut() {
                *x = -x.clone();
            }
        }
        let pivot_row = rows[pr].clone();
        for r in 0..pr {
            let q = rows[r][c].div_floor(&pivot_row[c]);
            if !q.is_zero() {
                for (x, p) in rows[r].iter_mut().zip(&pivot_row) {
                    *x -= &q * p;
                }
            }
        }
        pr += 1;
    }
    rows.truncate(pr);
    rows
}

/// Flips the sign so the first nonzero entry is positive.
pub fn normalize_sign(v: &mut IntVec) {
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in v.iter_mut() {
                *x = -x.clone();
            }
        }
    }
}

/// Picks the vector with the smallest max-norm, ties broken
/// lexicographically, after sign normalisation.
pub fn smallest_witness(candidates: &[IntVec]) -> Option<IntVec> {
    candidates
        .iter()
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .map(|v| {
            let mut v = v.clone();
            normalize_sign(&mut v);
            v
        })
        .min_by(|x, y| max_norm(x).cmp(&max_norm(y)).then_with(|| x.cmp(y)))
}

pub fn max_norm(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(BigInt::zero)
}

/// Converts to machine integers; panics if an entry does not fit in `i64`.
pub fn to_i64_vec(v: &[BigInt]) -> Vec<i64> {
    v.iter()
        .map(|x| x.to_i64().expect("lattice vector entry exceeds i64"))
        .collect()
}

pub fn from_i64_rows(rows: &[Vec<i64>]) -> Vec<IntVec> {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}
