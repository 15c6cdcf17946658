//! Exact decision procedures for the arithmetic conditions behind unique
//! ergodicity: ℚ-independence of the columns of `P` (the ℝᵈ-action),
//! ℤ-independence modulo ℤᵈ (the ℤᵈ-action), and density of the module
//! `p₁ℤ + … + pₙℤ` in ℝ.
//!
//! Writing each entry as `a + b√m`, a rational relation `Σ rⱼpⱼ = 0` splits
//! into the two rational systems `A r = 0` and `B r = 0`, so everything
//! reduces to integer lattice computations (see [`crate::lattice`]).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{QpError, Result};
use crate::lattice::{integer_kernel, row_hnf, smallest_witness, to_i64_vec, IntVec};
use crate::number_field::{FieldScalar, FrequencyMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum VerdictKind {
    QRank,
    ZModZd,
    Density,
}

/// Outcome of an independence test. A dependent verdict always carries a
/// nonzero witness satisfying the relation exactly.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IndependenceVerdict {
    pub independent: bool,
    pub witness: Option<Vec<i64>>,
    pub kind: VerdictKind,
    /// For a non-dense module: `g` with `pⱼ = g·witnessⱼ`, so the group is `gℤ`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<FieldScalar>,
}

impl IndependenceVerdict {
    fn independent(kind: VerdictKind) -> Self {
        IndependenceVerdict {
            independent: true,
            witness: None,
            kind,
            generator: None,
        }
    }

    fn dependent(kind: VerdictKind, witness: Vec<i64>) -> Self {
        IndependenceVerdict {
            independent: false,
            witness: Some(witness),
            kind,
            generator: None,
        }
    }
}

/// The two rational d×n parts of `P = A + B√m`.
fn split_parts(p: &FrequencyMatrix) -> (Vec<Vec<BigRational>>, Vec<Vec<BigRational>>) {
    let part = |f: fn(&FieldScalar) -> &BigRational| -> Vec<Vec<BigRational>> {
        (0..p.d())
            .map(|i| (0..p.n()).map(|j| f(p.entry(i, j)).clone()).collect())
            .collect()
    };
    (
        part(FieldScalar::rational_part),
        part(FieldScalar::radical_part),
    )
}

/// Scales a rational row by the lcm of its denominators.
fn clear_row(row: &[BigRational]) -> IntVec {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

fn nonzero_rows(rows: Vec<IntVec>) -> Vec<IntVec> {
    rows.into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect()
}

/// Columns of `P` are ℚ-independent iff the stacked 2d×n rational matrix
/// `[A; B]` has full column rank.
pub fn q_independent(p: &FrequencyMatrix) -> IndependenceVerdict {
    let (a, b) = split_parts(p);
    let rows = nonzero_rows(a.iter().chain(b.iter()).map(|r| clear_row(r)).collect());
    let kernel = integer_kernel(&rows, p.n());
    if kernel.is_empty() {
        return IndependenceVerdict::independent(VerdictKind::QRank);
    }
    let w = smallest_witness(&row_hnf(&kernel)).expect("nonzero kernel basis");
    IndependenceVerdict::dependent(VerdictKind::QRank, to_i64_vec(&w))
}

/// Decides whether some nonzero `a ∈ ℤⁿ` has `Σ aⱼpⱼ ∈ ℤᵈ`.
///
/// The radical parts force `B a = 0`; on that integer kernel `K`, the
/// rational parts must satisfy `A K c ∈ ℤᵈ`, a congruence lattice computed
/// by clearing the common denominator.
pub fn z_independent_mod_zd(p: &FrequencyMatrix) -> IndependenceVerdict {
    match relation_lattice_mod_zd(p).as_deref() {
        None | Some([]) => IndependenceVerdict::independent(VerdictKind::ZModZd),
        Some(basis) => {
            let w = smallest_witness(basis).expect("nonzero lattice basis");
            IndependenceVerdict::dependent(VerdictKind::ZModZd, to_i64_vec(&w))
        }
    }
}

/// HNF basis of `{a ∈ ℤⁿ : Σ aⱼpⱼ ∈ ℤᵈ}`, or `None` if it is trivial.
pub fn relation_lattice_mod_zd(p: &FrequencyMatrix) -> Option<Vec<IntVec>> {
    let (a, b) = split_parts(p);
    let b_rows = nonzero_rows(b.iter().map(|r| clear_row(r)).collect());
    let kernel = integer_kernel(&b_rows, p.n());
    if kernel.is_empty() {
        return None;
    }
    let r = kernel.len();
    let d = p.d();
    // A K as rational d×r
    let ak: Vec<Vec<BigRational>> = a
        .iter()
        .map(|row| {
            kernel
                .iter()
                .map(|kv| {
                    row.iter().zip(kv).fold(BigRational::zero(), |acc, (x, y)| {
                        acc + x * BigRational::from_integer(y.clone())
                    })
                })
                .collect()
        })
        .collect();
    let den = ak
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    // G = [D·AK | D·I]; its kernel's first r coordinates span the admissible c
    let g: Vec<IntVec> = (0..d)
        .map(|i| {
            let mut row: IntVec = ak[i]
                .iter()
                .map(|x| x.numer() * (&den / x.denom()))
                .collect();
            row.extend((0..d).map(|l| if l == i { den.clone() } else { BigInt::zero() }));
            row
        })
        .collect();
    let gk = integer_kernel(&g, r + d);
    let relations: Vec<IntVec> = gk
        .iter()
        .map(|v| {
            (0..p.n())
                .map(|j| (0..r).map(|t| &v[t] * &kernel[t][j]).sum())
                .collect()
        })
        .collect();
    Some(row_hnf(&relations))
}

/// `p₁ℤ + … + pₙℤ` is dense in ℝ iff some ratio `pᵢ/pⱼ` is irrational.
/// Requires `d = 1` and nonzero entries.
pub fn module_dense_in_r(p: &FrequencyMatrix) -> Result<IndependenceVerdict> {
    if p.d() != 1 {
        return Err(QpError::InvalidParameter(format!(
            "density test needs d = 1, got d = {}",
            p.d()
        )));
    }
    let cols: Vec<FieldScalar> = (0..p.n()).map(|j| p.entry(0, j).clone()).collect();
    if cols.iter().any(FieldScalar::is_zero) {
        return Err(QpError::Domain(
            "density test needs nonzero generators".into(),
        ));
    }
    let ratios: Vec<FieldScalar> = cols
        .iter()
        .map(|x| x.checked_div(&cols[0]))
        .collect::<Result<_>>()?;
    if ratios.iter().any(|r| !r.is_rational()) {
        return Ok(IndependenceVerdict::independent(VerdictKind::Density));
    }
    // pⱼ = (p₁/t)·sⱼ with t the common denominator
    let t = ratios
        .iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.rational_part().denom()));
    let s: IntVec = ratios
        .iter()
        .map(|r| r.rational_part().numer() * (&t / r.rational_part().denom()))
        .collect();
    let g = s.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let witness: IntVec = s.iter().map(|x| x / &g).collect();
    let generator = cols[0].checked_mul(&FieldScalar::rational(BigRational::new(g, t)))?;
    Ok(IndependenceVerdict {
        independent: false,
        witness: Some(to_i64_vec(&witness)),
        kind: VerdictKind::Density,
        generator: Some(generator),
    })
}

/// Witnesses that break unique ergodicity, by action.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witnesses {
    pub r: Option<Vec<i64>>,
    pub z: Option<Vec<i64>>,
}

/// Unique ergodicity of both torus actions generated by `P`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErgodicityReport {
    pub d: usize,
    pub n: usize,
    pub r_action: bool,
    pub z_action: bool,
    pub witnesses: Witnesses,
    /// Exponent `a*` of a nontrivial character invariant under the ℤᵈ-action.
    pub invariant_character: Option<Vec<i64>>,
    pub notes: Vec<String>,
}

pub fn ergodicity_report(p: &FrequencyMatrix) -> ErgodicityReport {
    let q = q_independent(p);
    let z = z_independent_mod_zd(p);
    let mut notes = Vec::new();
    match &q.witness {
        None => notes.push("R^d-action uniquely ergodic: columns are Q-independent".to_string()),
        Some(w) => notes.push(format!(
            "R^d-action not uniquely ergodic: sum of r_j p_j = 0 for r = {w:?}"
        )),
    }
    match &z.witness {
        None => {
            notes.push("Z^d-action uniquely ergodic: columns are Z-independent mod Z^d".to_string())
        }
        Some(w) => notes.push(format!(
            "Z^d-action not uniquely ergodic: sum of a_j p_j lies in Z^d for a = {w:?}; \
             the character exp(2 pi i a.y) is invariant"
        )),
    }
    ErgodicityReport {
        d: p.d(),
        n: p.n(),
        r_action: q.independent,
        z_action: z.independent,
        invariant_character: z.witness.clone(),
        witnesses: Witnesses {
            r: q.witness,
            z: z.witness,
        },
        notes,
    }
}
