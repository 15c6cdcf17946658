//! Finite Fourier data on the torus and finite Bohr-Fourier series on ℝᵈ.

use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{QpError, Result};
use crate::independence::q_independent;
use crate::number_field::{EntryRepr, FieldRepr, FieldScalar, FrequencyMatrix};
use crate::numeric::{unit_phase, CompensatedSum};

/// A point of ℤⁿ.
pub type LatticeVec = Vec<i64>;

fn check_coeff(c: Complex64) -> Result<()> {
    if c.re.is_finite() && c.im.is_finite() {
        Ok(())
    } else {
        Err(QpError::InvalidParameter(format!(
            "non-finite coefficient {c}"
        )))
    }
}

fn accumulate(
    n: usize,
    terms: impl IntoIterator<Item = (LatticeVec, Complex64)>,
) -> Result<BTreeMap<LatticeVec, Complex64>> {
    let mut map: BTreeMap<LatticeVec, Complex64> = BTreeMap::new();
    for (k, c) in terms {
        if k.len() != n {
            return Err(QpError::DimensionMismatch {
                expected: n,
                got: k.len(),
            });
        }
        check_coeff(c)?;
        *map.entry(k).or_insert(Complex64::zero()) += c;
    }
    map.retain(|_, c| !c.is_zero());
    Ok(map)
}

/// Fourier coefficients `F̂(k)` of a trigonometric polynomial on 𝕋ⁿ.
#[derive(Clone, Debug, PartialEq)]
pub struct ParentSpectrum {
    n: usize,
    coeffs: BTreeMap<LatticeVec, Complex64>,
}

impl ParentSpectrum {
    pub fn zero(n: usize) -> Self {
        ParentSpectrum {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    /// Duplicate indices are summed; exact zeros are dropped.
    pub fn new(n: usize, terms: impl IntoIterator<Item = (LatticeVec, Complex64)>) -> Result<Self> {
        if n == 0 {
            return Err(QpError::InvalidParameter(
                "torus dimension must be positive".into(),
            ));
        }
        Ok(ParentSpectrum {
            n,
            coeffs: accumulate(n, terms)?,
        })
    }

    /// The character `e^{2πi k·y}`.
    pub fn character(k: LatticeVec) -> Self {
        let n = k.len();
        ParentSpectrum::new(n, [(k, Complex64::new(1.0, 0.0))]).expect("valid character")
    }

    pub fn constant(n: usize, c: Complex64) -> Self {
        ParentSpectrum::new(n, [(vec![0; n], c)]).expect("valid constant")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: &[i64]) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LatticeVec, &Complex64)> {
        self.coeffs.iter()
    }

    /// `max_j |k_j|` over the support (0 for an empty spectrum).
    pub fn max_index(&self) -> i64 {
        self.coeffs
            .keys()
            .flat_map(|k| k.iter().map(|x| x.abs()))
            .max()
            .unwrap_or(0)
    }

    /// `F(y) = Σ F̂(k) e^{2πi k·y}`.
    pub fn evaluate(&self, y: &[f64]) -> Complex64 {
        assert_eq!(y.len(), self.n, "torus point dimension");
        self.coeffs
            .iter()
            .map(|(k, c)| c * unit_phase(k.iter().zip(y).map(|(&kj, &yj)| kj as f64 * yj).sum()))
            .collect::<CompensatedSum>()
            .value()
    }

    /// `∫_{𝕋ⁿ} F = F̂(0)`.
    pub fn integral(&self) -> Complex64 {
        self.coeff(&vec![0; self.n])
    }

    /// Wiener norm `Σ |F̂(k)|`.
    pub fn wiener_norm(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).sum()
    }

    /// `Σ |F̂(k)|²` in key order.
    pub fn l2_norm_squared(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm_sqr()).sum()
    }

    /// Spectrum of the complex conjugate function: `k ↦ conj(F̂(−k))`.
    pub fn conj(&self) -> Self {
        ParentSpectrum {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, c)| (k.iter().map(|x| -x).collect(), c.conj()))
                .collect(),
        }
    }

    /// Spectrum of the pointwise product (coefficient convolution).
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(QpError::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let terms = self.coeffs.iter().flat_map(|(k1, c1)| {
            other.coeffs.iter().map(move |(k2, c2)| {
                (
                    k1.iter()
                        .zip(k2)
                        .map(|(a, b)| a + b)
                        .collect::<LatticeVec>(),
                    c1 * c2,
                )
            })
        });
        ParentSpectrum::new(self.n, terms)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        ParentSpectrum::new(self.n, self.coeffs.iter().map(|(k, c)| (k.clone(), c * s)))
            .expect("scaling keeps coefficients finite")
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(QpError::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        ParentSpectrum::new(
            self.n,
            self.coeffs
                .iter()
                .map(|(k, c)| (k.clone(), *c))
                .chain(other.coeffs.iter().map(|(k, c)| (k.clone(), -c))),
        )
    }

    /// Restriction to indices with Euclidean norm at most `radius`.
    pub fn truncated(&self, radius: f64) -> Self {
        ParentSpectrum {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(k, _)| euclidean(k) <= radius)
                .map(|(k, c)| (k.clone(), *c))
                .collect(),
        }
    }
}

pub(crate) fn euclidean(k: &[i64]) -> f64 {
    k.iter()
        .map(|&x| (x as f64) * (x as f64))
        .sum::<f64>()
        .sqrt()
}

/// A finite Bohr-Fourier series `f(x) = Σ f̂(Pk) e^{2πi (Pk)·x}` on ℝᵈ.
///
/// Terms are keyed by `k ∈ ℤⁿ`. When the columns of `P` are rationally
/// dependent, terms with equal frequency `Pk` are merged onto the smallest
/// key so frequencies stay pairwise distinct.
#[derive(Clone, Debug, PartialEq)]
pub struct TrigPolynomial {
    matrix: FrequencyMatrix,
    terms: BTreeMap<LatticeVec, Complex64>,
    independent: bool,
}

impl TrigPolynomial {
    pub fn new(
        matrix: FrequencyMatrix,
        terms: impl IntoIterator<Item = (LatticeVec, Complex64)>,
    ) -> Result<Self> {
        let independent = q_independent(&matrix).independent;
        let mut terms = accumulate(matrix.n(), terms)?;
        if !independent {
            terms = merge_equal_frequencies(&matrix, terms);
        }
        Ok(TrigPolynomial {
            matrix,
            terms,
            independent,
        })
    }

    pub fn zero(matrix: FrequencyMatrix) -> Self {
        TrigPolynomial::new(matrix, []).expect("empty polynomial")
    }

    /// Builds from explicit frequencies `λ`, solving `P k = λ` exactly.
    pub fn from_frequencies(
        matrix: FrequencyMatrix,
        terms: impl IntoIterator<Item = (Vec<FieldScalar>, Complex64)>,
    ) -> Result<Self> {
        let mut lattice_terms = Vec::new();
        for (lam, c) in terms {
            lattice_terms.push((solve_lattice_point(&matrix, &lam)?, c));
        }
        TrigPolynomial::new(matrix, lattice_terms)
    }

    pub fn matrix(&self) -> &FrequencyMatrix {
        &self.matrix
    }

    /// Whether the columns of `P` are ℚ-independent.
    pub fn has_independent_basis(&self) -> bool {
        self.independent
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LatticeVec, &Complex64)> {
        self.terms.iter()
    }

    pub fn coeff_at(&self, k: &[i64]) -> Complex64 {
        self.terms.get(k).copied().unwrap_or_default()
    }

    /// Exact frequency of the term keyed by `k`.
    pub fn frequency(&self, k: &[i64]) -> Vec<FieldScalar> {
        self.matrix.apply(k)
    }

    /// `max_j |k_j|` over the stored terms.
    pub fn max_index(&self) -> i64 {
        self.terms
            .keys()
            .flat_map(|k| k.iter().map(|x| x.abs()))
            .max()
            .unwrap_or(0)
    }

    /// Direct compensated summation of the finitely many terms.
    pub fn evaluate(&self, x: &[f64]) -> Complex64 {
        assert_eq!(x.len(), self.matrix.d(), "point dimension");
        self.terms
            .iter()
            .map(|(k, c)| {
                let lam = self.matrix.apply_f64(k);
                c * unit_phase(lam.iter().zip(x).map(|(l, xi)| l * xi).sum())
            })
            .collect::<CompensatedSum>()
            .value()
    }

    /// Pointwise product; both factors must share `P`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.matrix != other.matrix {
            return Err(QpError::InvalidParameter(
                "product needs a common frequency matrix".into(),
            ));
        }
        let terms = self.terms.iter().flat_map(|(k1, c1)| {
            other.terms.iter().map(move |(k2, c2)| {
                (
                    k1.iter()
                        .zip(k2)
                        .map(|(a, b)| a + b)
                        .collect::<LatticeVec>(),
                    c1 * c2,
                )
            })
        });
        TrigPolynomial::new(self.matrix.clone(), terms)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        TrigPolynomial {
            matrix: self.matrix.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c * s))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
            independent: self.independent,
        }
    }
}

fn merge_equal_frequencies(
    p: &FrequencyMatrix,
    terms: BTreeMap<LatticeVec, Complex64>,
) -> BTreeMap<LatticeVec, Complex64> {
    let mut owner: HashMap<Vec<FieldScalar>, LatticeVec> = HashMap::new();
    let mut merged: BTreeMap<LatticeVec, Complex64> = BTreeMap::new();
    // BTreeMap iteration is ascending, so the first key seen is the smallest
    for (k, c) in terms {
        let key = owner
            .entry(p.apply(&k))
            .or_insert_with(|| k.clone())
            .clone();
        *merged.entry(key).or_insert(Complex64::zero()) += c;
    }
    merged.retain(|_, c| !c.is_zero());
    merged
}

/// Solves `P k = λ` for `k ∈ ℤⁿ` by exact elimination on the stacked
/// rational system.
pub fn solve_lattice_point(p: &FrequencyMatrix, lambda: &[FieldScalar]) -> Result<LatticeVec> {
    if lambda.len() != p.d() {
        return Err(QpError::DimensionMismatch {
            expected: p.d(),
            got: lambda.len(),
        });
    }
    let n = p.n();
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(2 * p.d());
    for (i, l) in lambda.iter().enumerate() {
        if let Some(r) = l.radicand() {
            if p.radicand() != r {
                return Err(QpError::Domain(format!(
                    "frequency {l} is outside the module of P"
                )));
            }
        }
        let mut ra: Vec<BigRational> = (0..n)
            .map(|j| p.entry(i, j).rational_part().clone())
            .collect();
        ra.push(l.rational_part().clone());
        let mut rb: Vec<BigRational> = (0..n)
            .map(|j| p.entry(i, j).radical_part().clone())
            .collect();
        rb.push(l.radical_part().clone());
        rows.push(ra);
        rows.push(rb);
    }
    // reduced row echelon form of the augmented system
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let piv = rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = &*x / &piv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[n].is_zero()) {
        return Err(QpError::Domain(
            "frequency is not in the module generated by P".into(),
        ));
    }
    if pivots.len() < n {
        return Err(QpError::RationallyDependent {
            witness: q_independent(p).witness.unwrap_or_default(),
        });
    }
    rows[..n]
        .iter()
        .map(|row| {
            let v = &row[n];
            if !v.is_integer() {
                return Err(QpError::Domain(format!(
                    "frequency needs non-integer coordinate {v}"
                )));
            }
            v.to_integer()
                .to_i64()
                .ok_or_else(|| QpError::Domain("lattice coordinate exceeds i64".into()))
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
pub(crate) struct TermRepr {
    pub k: LatticeVec,
    pub re: f64,
    pub im: f64,
}

fn terms_repr<'a>(it: impl Iterator<Item = (&'a LatticeVec, &'a Complex64)>) -> Vec<TermRepr> {
    it.map(|(k, c)| TermRepr {
        k: k.clone(),
        re: c.re,
        im: c.im,
    })
    .collect()
}

fn terms_from_repr(terms: Vec<TermRepr>) -> impl Iterator<Item = (LatticeVec, Complex64)> {
    terms.into_iter().map(|t| (t.k, Complex64::new(t.re, t.im)))
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    field: FieldRepr,
    #[serde(rename = "P")]
    p: Vec<Vec<EntryRepr>>,
    terms: Vec<TermRepr>,
}

#[derive(Serialize, Deserialize)]
struct ParentRepr {
    n: usize,
    terms: Vec<TermRepr>,
}

/// `{"field": {"m": 2}, "P": [[…]], "terms": [{"k": [1,0], "re": 1.0, "im": 0.0}]}`
impl Serialize for TrigPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr {
            field: FieldRepr {
                m: self.matrix.radicand(),
            },
            p: self.matrix.to_repr_rows(),
            terms: terms_repr(self.terms.iter()),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TrigPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(deserializer)?;
        let p = FrequencyMatrix::from_repr_rows(repr.field.m, &repr.p)
            .map_err(serde::de::Error::custom)?;
        TrigPolynomial::new(p, terms_from_repr(repr.terms)).map_err(serde::de::Error::custom)
    }
}

/// `{"n": 2, "terms": [{"k": [1,0], "re": 1.0, "im": 0.0}]}`
impl Serialize for ParentSpectrum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ParentRepr {
            n: self.n,
            terms: terms_repr(self.coeffs.iter()),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ParentSpectrum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ParentRepr::deserialize(deserializer)?;
        ParentSpectrum::new(repr.n, terms_from_repr(repr.terms)).map_err(serde::de::Error::custom)
    }
}
