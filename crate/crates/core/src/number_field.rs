//! Exact arithmetic in ℚ and in real quadratic fields ℚ(√m).
//!
//! A [`FieldScalar`] is `a + b·√m` with arbitrary-precision rational `a`, `b`.
//! Pure rationals carry `b = 0` and may be combined with any field. Two
//! scalars with nonzero radical parts must share the same `m`; the checked
//! operations report a mix as [`QpError::MixedRadicals`], the operator
//! overloads panic on it.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{QpError, Result};

/// Marker radicand for the rational field.
pub const RATIONAL_FIELD: u64 = 1;

/// Returns true if `m >= 2` and no prime square divides `m`.
pub fn is_square_free(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    let mut rest = m;
    let mut p = 2u64;
    while p * p <= rest {
        if rest % p == 0 {
            rest /= p;
            if rest % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// An exact real number `a + b·√m`.
#[derive(Clone, Debug)]
pub struct FieldScalar {
    a: BigRational,
    b: BigRational,
    m: u64,
}

impl FieldScalar {
    /// Builds `a + b·√m`, validating the radicand when `b != 0`.
    pub fn new(a: BigRational, b: BigRational, m: u64) -> Result<Self> {
        if !b.is_zero() && !is_square_free(m) {
            return Err(QpError::InvalidRadicand(m));
        }
        if b.is_zero() && m != RATIONAL_FIELD && !is_square_free(m) {
            return Err(QpError::InvalidRadicand(m));
        }
        Ok(FieldScalar { a, b, m })
    }

    pub fn rational(a: BigRational) -> Self {
        FieldScalar {
            a,
            b: BigRational::zero(),
            m: RATIONAL_FIELD,
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(v)))
    }

    /// The rational `num/den`. Panics if `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `(a_num/a_den) + (b_num/b_den)·√m`.
    pub fn from_parts(a: (i64, i64), b: (i64, i64), m: u64) -> Result<Self> {
        if a.1 == 0 || b.1 == 0 {
            return Err(QpError::Domain("zero denominator".into()));
        }
        Self::new(
            BigRational::new(a.0.into(), a.1.into()),
            BigRational::new(b.0.into(), b.1.into()),
            m,
        )
    }

    /// √m itself.
    pub fn sqrt_of(m: u64) -> Result<Self> {
        Self::new(BigRational::zero(), BigRational::one(), m)
    }

    /// The golden ratio (1+√5)/2.
    pub fn golden_ratio() -> Self {
        Self::from_parts((1, 2), (1, 2), 5).expect("5 is square-free")
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn radical_part(&self) -> &BigRational {
        &self.b
    }

    /// The radicand of the context this value lives in (1 for plain ℚ).
    pub fn context(&self) -> u64 {
        self.m
    }

    /// The radicand if the value is irrational.
    pub fn radicand(&self) -> Option<u64> {
        if self.b.is_zero() {
            None
        } else {
            Some(self.m)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.b.is_zero() && self.a.is_integer()
    }

    /// Same value, tagged with field context `m`.
    pub fn with_context(&self, m: u64) -> Result<Self> {
        if !self.b.is_zero() && self.m != m {
            return Err(QpError::MixedRadicals(self.m, m));
        }
        Self::new(self.a.clone(), self.b.clone(), m)
    }

    fn join_context(&self, other: &Self) -> Result<u64> {
        match (self.b.is_zero(), other.b.is_zero()) {
            (false, false) if self.m != other.m => Err(QpError::MixedRadicals(self.m, other.m)),
            (false, _) => Ok(self.m),
            (true, false) => Ok(other.m),
            (true, true) => Ok(if self.m == RATIONAL_FIELD {
                other.m
            } else {
                self.m
            }),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let m = self.join_context(other)?;
        Ok(FieldScalar {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            m,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let m = self.join_context(other)?;
        Ok(FieldScalar {
            a: &self.a - &other.a,
            b: &self.b - &other.b,
            m,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let m = self.join_context(other)?;
        let rad = BigRational::from_integer(BigInt::from(m));
        let a = &self.a * &other.a + &self.b * &other.b * rad;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(FieldScalar { a, b, m })
    }

    /// `(a + b√m)⁻¹ = (a − b√m)/(a² − b²m)`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(QpError::Domain("inversion of zero".into()));
        }
        let norm = self.norm();
        Ok(FieldScalar {
            a: &self.a / &norm,
            b: -&self.b / &norm,
            m: self.m,
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inv()?)
    }

    /// Multiplies by an integer without touching the context.
    pub fn scale_int(&self, k: i64) -> Self {
        let k = BigRational::from_integer(BigInt::from(k));
        FieldScalar {
            a: &self.a * &k,
            b: &self.b * &k,
            m: self.m,
        }
    }

    /// Algebraic conjugate `a − b√m`.
    pub fn conjugate(&self) -> Self {
        FieldScalar {
            a: self.a.clone(),
            b: -self.b.clone(),
            m: self.m,
        }
    }

    /// Field norm `a² − b²m` (product with the conjugate).
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(BigInt::from(self.m))
    }

    /// Exact sign: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        sign_of(&self.a, &self.b, self.m)
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Exact comparison. Fails only on mixed radicals.
    pub fn checked_cmp(&self, other: &Self) -> Result<Ordering> {
        Ok(self.checked_sub(other)?.signum().cmp(&0))
    }

    /// Largest integer not exceeding the value, computed exactly.
    pub fn floor(&self) -> BigInt {
        if self.b.is_zero() {
            return self.a.floor().to_integer();
        }
        // x = (A + B√m)/D with integer A, B and D > 0
        let d = self.a.denom().lcm(self.b.denom());
        let big_a = self.a.numer() * (&d / self.a.denom());
        let big_b = self.b.numer() * (&d / self.b.denom());
        let root = (&big_b * &big_b * BigInt::from(self.m)).sqrt();
        let approx = if big_b.is_negative() {
            &big_a - &root
        } else {
            &big_a + &root
        };
        let mut c = approx.div_floor(&d);
        let one = BigInt::one();
        while sign_of(
            &(&self.a - BigRational::from_integer(c.clone())),
            &self.b,
            self.m,
        ) < 0
        {
            c -= &one;
        }
        while sign_of(
            &(&self.a - BigRational::from_integer(&c + &one)),
            &self.b,
            self.m,
        ) >= 0
        {
            c += &one;
        }
        c
    }

    /// Nearest integer, halves rounded up.
    pub fn round(&self) -> BigInt {
        let half = FieldScalar::from_ratio(1, 2);
        (self + &half).floor()
    }

    /// `x − round(x)`, exactly, in [−1/2, 1/2).
    pub fn centered_fraction(&self) -> Self {
        let r = FieldScalar::rational(BigRational::from_integer(self.round()));
        self - &r
    }

    /// `floor(x · 2^bits)`, exact.
    pub fn floor_scaled(&self, bits: u32) -> BigInt {
        let scale = BigRational::from_integer(BigInt::one() << bits);
        FieldScalar {
            a: &self.a * &scale,
            b: &self.b * &scale,
            m: self.m,
        }
        .floor()
    }

    /// Correctly rounded binary approximation with `precision` significant
    /// bits (ties to even). Precision is clamped to `1..=53`.
    pub fn to_float(&self, precision: u32) -> f64 {
        let p = precision.clamp(1, 53) as u64;
        let s = self.signum();
        if s == 0 {
            return 0.0;
        }
        let y = self.abs();
        let est = y.a.to_f64().unwrap_or(0.0) + y.b.to_f64().unwrap_or(0.0) * (y.m as f64).sqrt();
        let mut shift: i64 = if est.is_finite() && est > 0.0 {
            p as i64 + 2 - est.log2().floor() as i64
        } else {
            64
        };
        let (n, shift) = loop {
            let n = y.floor_at(shift);
            if n.bits() >= p + 2 {
                break (n, shift);
            }
            shift += (p + 2 - n.bits()) as i64 + 8;
        };
        let drop = n.bits() - p;
        let mut q: BigInt = &n >> drop;
        let rem: BigInt = &n - (&q << drop);
        let half = BigInt::one() << (drop - 1);
        let round_up = match rem.cmp(&half) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => y.exceeds_scaled(&n, shift) || q.is_odd(),
        };
        if round_up {
            q += 1;
        }
        let mant = q.to_f64().expect("mantissa fits in 54 bits");
        let v = mant * pow2(drop as i64 - shift);
        if s < 0 {
            -v
        } else {
            v
        }
    }

    /// Nearest `f64`.
    pub fn to_f64(&self) -> f64 {
        self.to_float(53)
    }

    fn floor_at(&self, shift: i64) -> BigInt {
        if shift >= 0 {
            self.floor_scaled(shift as u32)
        } else {
            let scale = BigRational::from_integer(BigInt::one() << ((-shift) as u32));
            FieldScalar {
                a: &self.a / &scale,
                b: &self.b / &scale,
                m: self.m,
            }
            .floor()
        }
    }

    /// True if `self · 2^shift > n` (strictly).
    fn exceeds_scaled(&self, n: &BigInt, shift: i64) -> bool {
        let lhs = if shift >= 0 {
            let scale = BigRational::from_integer(BigInt::one() << (shift as u32));
            FieldScalar {
                a: &self.a * &scale,
                b: &self.b * &scale,
                m: self.m,
            }
        } else {
            let scale = BigRational::from_integer(BigInt::one() << ((-shift) as u32));
            FieldScalar {
                a: &self.a / &scale,
                b: &self.b / &scale,
                m: self.m,
            }
        };
        sign_of(
            &(&lhs.a - BigRational::from_integer(n.clone())),
            &lhs.b,
            lhs.m,
        ) > 0
    }
}

fn pow2(e: i64) -> f64 {
    // split to stay within powi's exact range
    let mut v = 1.0f64;
    let mut e = e;
    while e > 1000 {
        v *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        v *= 2f64.powi(-1000);
        e += 1000;
    }
    v * 2f64.powi(e as i32)
}

/// Exact sign of `u + v√m`.
fn sign_of(u: &BigRational, v: &BigRational, m: u64) -> i32 {
    let su = signum_rat(u);
    let sv = signum_rat(v);
    if sv == 0 {
        return su;
    }
    if su == 0 || su == sv {
        return sv;
    }
    let u2 = u * u;
    let v2m = v * v * BigRational::from_integer(BigInt::from(m));
    if u2 > v2m {
        su
    } else {
        sv
    }
}

fn signum_rat(r: &BigRational) -> i32 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

impl PartialEq for FieldScalar {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.m == other.m)
    }
}

impl Eq for FieldScalar {}

impl Hash for FieldScalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.a.hash(state);
        self.b.hash(state);
        if !self.b.is_zero() {
            self.m.hash(state);
        }
    }
}

impl PartialOrd for FieldScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Panics when comparing values with different radicals.
impl Ord for FieldScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.checked_cmp(other)
            .expect("comparison across quadratic fields")
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a FieldScalar> for &'a FieldScalar {
            type Output = FieldScalar;
            fn $method(self, rhs: &'a FieldScalar) -> FieldScalar {
                self.$checked(rhs)
                    .expect(concat!("FieldScalar::", stringify!($method)))
            }
        }
        impl $trait<FieldScalar> for FieldScalar {
            type Output = FieldScalar;
            fn $method(self, rhs: FieldScalar) -> FieldScalar {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        FieldScalar {
            a: -self.a.clone(),
            b: -self.b.clone(),
            m: self.m,
        }
    }
}

impl Neg for FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        -&self
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt({})", self.b, self.m)
        } else if self.b.is_negative() {
            write!(f, "{} - {}*sqrt({})", self.a, -self.b.clone(), self.m)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.m)
        }
    }
}

/// Parses `"p"`, `"p/q"` or a decimal such as `"-0.5"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || QpError::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => parse_decimal(s).ok_or_else(bad),
    }
}

/// Exact value of a decimal literal such as `-0.125`.
fn parse_decimal(s: &str) -> Option<BigRational> {
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if frac.chars().any(|c| !c.is_ascii_digit())
        || (int.trim_start_matches(['+', '-']).is_empty() && frac.is_empty())
    {
        return None;
    }
    let neg = int.starts_with('-');
    let digits = format!("{}{}", int.trim_start_matches(['+', '-']), frac);
    if digits.is_empty() || digits.chars().any(|c| !c.is_ascii_digit()) {
        return None;
    }
    let v = BigRational::new(
        BigInt::from_str(&digits).ok()?,
        BigInt::from(10).pow(frac.len() as u32),
    );
    Some(if neg { -v } else { v })
}

pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Serialize, Deserialize)]
struct ScalarRepr {
    a: String,
    #[serde(default = "zero_string")]
    b: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    m: Option<u64>,
}

fn zero_string() -> String {
    "0".into()
}

impl Serialize for FieldScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ScalarRepr {
            a: format_rational(&self.a),
            b: format_rational(&self.b),
            m: Some(self.m),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FieldScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ScalarRepr::deserialize(deserializer)?;
        let a = parse_rational(&repr.a).map_err(serde::de::Error::custom)?;
        let b = parse_rational(&repr.b).map_err(serde::de::Error::custom)?;
        FieldScalar::new(a, b, repr.m.unwrap_or(RATIONAL_FIELD)).map_err(serde::de::Error::custom)
    }
}

/// The d×n matrix whose columns p₁…pₙ generate the frequency module.
#[derive(Clone, Debug)]
pub struct FrequencyMatrix {
    d: usize,
    n: usize,
    m: u64,
    entries: Vec<FieldScalar>,
    approx: Vec<f64>,
}

impl PartialEq for FrequencyMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d && self.n == other.n && self.entries == other.entries
    }
}

impl Eq for FrequencyMatrix {}

impl FrequencyMatrix {
    /// Row-major entries. All irrational entries must share one radicand.
    pub fn new(d: usize, n: usize, entries: Vec<FieldScalar>) -> Result<Self> {
        if d == 0 || n == 0 {
            return Err(QpError::InvalidParameter(
                "matrix dimensions must be positive".into(),
            ));
        }
        if entries.len() != d * n {
            return Err(QpError::DimensionMismatch {
                expected: d * n,
                got: entries.len(),
            });
        }
        let mut m = RATIONAL_FIELD;
        for e in &entries {
            if let Some(r) = e.radicand() {
                if m != RATIONAL_FIELD && m != r {
                    return Err(QpError::MixedRadicals(m, r));
                }
                m = r;
            }
        }
        if m == RATIONAL_FIELD {
            // keep a declared context if every entry agrees on one
            if let Some(e) = entries.first() {
                if entries.iter().all(|x| x.context() == e.context()) {
                    m = e.context();
                }
            }
        }
        let entries: Vec<FieldScalar> = entries
            .into_iter()
            .map(|e| e.with_context(m))
            .collect::<Result<_>>()?;
        let approx = entries.iter().map(FieldScalar::to_f64).collect();
        Ok(FrequencyMatrix {
            d,
            n,
            m,
            entries,
            approx,
        })
    }

    pub fn from_rows(rows: Vec<Vec<FieldScalar>>) -> Result<Self> {
        let d = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n) {
            return Err(QpError::InvalidParameter("ragged matrix rows".into()));
        }
        Self::new(d, n, rows.into_iter().flatten().collect())
    }

    /// A 1×n matrix (frequencies on the real line).
    pub fn row(entries: Vec<FieldScalar>) -> Result<Self> {
        let n = entries.len();
        Self::new(1, n, entries)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Radicand shared by the entries (1 when all are rational).
    pub fn radicand(&self) -> u64 {
        self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> &FieldScalar {
        &self.entries[i * self.n + j]
    }

    pub fn entry_f64(&self, i: usize, j: usize) -> f64 {
        self.approx[i * self.n + j]
    }

    pub fn column(&self, j: usize) -> Vec<FieldScalar> {
        (0..self.d).map(|i| self.entry(i, j).clone()).collect()
    }

    pub fn rows(&self) -> Vec<Vec<FieldScalar>> {
        (0..self.d)
            .map(|i| (0..self.n).map(|j| self.entry(i, j).clone()).collect())
            .collect()
    }

    /// Exact frequency vector `P k`.
    pub fn apply(&self, k: &[i64]) -> Vec<FieldScalar> {
        assert_eq!(k.len(), self.n, "lattice vector length");
        (0..self.d)
            .map(|i| {
                let mut acc = FieldScalar::zero().with_context(self.m).expect("rational");
                for (j, &kj) in k.iter().enumerate() {
                    if kj != 0 {
                        acc = &acc + &self.entry(i, j).scale_int(kj);
                    }
                }
                acc
            })
            .collect()
    }

    /// `P k` rounded after exact evaluation.
    pub fn apply_rounded(&self, k: &[i64]) -> Vec<f64> {
        self.apply(k).iter().map(FieldScalar::to_f64).collect()
    }

    /// `P k` in floating point from the rounded entries.
    pub fn apply_f64(&self, k: &[i64]) -> Vec<f64> {
        (0..self.d)
            .map(|i| {
                k.iter()
                    .enumerate()
                    .map(|(j, &kj)| self.entry_f64(i, j) * kj as f64)
                    .sum()
            })
            .collect()
    }

    /// `Pᵀ x` in floating point.
    pub fn transpose_apply(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.d, "point dimension");
        (0..self.n)
            .map(|j| (0..self.d).map(|i| self.entry_f64(i, j) * x[i]).sum())
            .collect()
    }

    /// Every entry multiplied by `c`.
    pub fn scaled(&self, c: &FieldScalar) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.checked_mul(c))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.d, self.n, entries)
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct FieldRepr {
    pub m: u64,
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    field: FieldRepr,
    #[serde(rename = "P")]
    p: Vec<Vec<EntryRepr>>,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct EntryRepr {
    a: String,
    #[serde(default = "zero_string")]
    b: String,
}

impl EntryRepr {
    pub(crate) fn from_scalar(x: &FieldScalar) -> Self {
        EntryRepr {
            a: format_rational(&x.a),
            b: format_rational(&x.b),
        }
    }

    pub(crate) fn to_scalar(&self, m: u64) -> Result<FieldScalar> {
        FieldScalar::new(parse_rational(&self.a)?, parse_rational(&self.b)?, m)
    }
}

impl FrequencyMatrix {
    pub(crate) fn to_repr_rows(&self) -> Vec<Vec<EntryRepr>> {
        (0..self.d)
            .map(|i| {
                (0..self.n)
                    .map(|j| EntryRepr::from_scalar(self.entry(i, j)))
                    .collect()
            })
            .collect()
    }

    pub(crate) fn from_repr_rows(m: u64, rows: &[Vec<EntryRepr>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|e| e.to_scalar(m)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }
}

/// JSON: `{"field": {"m": 2}, "P": [[{"a": "1", "b": "0"}, {"a": "0", "b": "1"}]]}`.
impl Serialize for FrequencyMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr {
            field: FieldRepr { m: self.m },
            p: self.to_repr_rows(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FrequencyMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(deserializer)?;
        FrequencyMatrix::from_repr_rows(repr.field.m, &repr.p).map_err(serde::de::Error::custom)
    }
}
