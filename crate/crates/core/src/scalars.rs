//! Exact coefficient rings.
//!
//! Every algebraic object in the crate is generic over a [`Ring`] context
//! value that owns the arithmetic; elements are plain data. The concrete
//! rings are the integers, the rationals, prime fields and the Laurent
//! polynomial ring `Z[q, q^-1]`. [`Scalar`] is the dynamically tagged
//! counterpart used for rendering and for mixed-ring checks.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Primes used when no explicit list is configured.
pub const DEFAULT_PRIMES: [u64; 4] = [2, 3, 5, 7];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("operands live in different rings ({0} vs {1})")]
    RingMismatch(&'static str, &'static str),
    #[error("{0} is not a unit of Z[q, q^-1]")]
    NotAUnit(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cannot parse field '{0}' (expected q or fp<prime>)")]
    BadFieldSpec(String),
    #[error("exponent overflow in Laurent polynomial")]
    ExponentOverflow,
}

/// Arithmetic context for a commutative ring with identity.
pub trait Ring: Clone + fmt::Debug + Send + Sync + PartialEq {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn to_scalar(&self, a: &Self::Elem) -> Scalar;
    fn name(&self) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn pow(&self, a: &Self::Elem, mut k: u32) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    fn render(&self, a: &Self::Elem) -> String {
        self.to_scalar(a).to_string()
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn characteristic(&self) -> u64;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|b| self.mul(a, &b))
    }

    /// Brings `rows` (each of length `cols`) into reduced row echelon form
    /// in place, dropping zero rows, and returns the pivot columns.
    fn rref_rows(&self, rows: &mut Vec<Vec<Self::Elem>>, cols: usize) -> Vec<usize> {
        gaussian_rref(self, rows, cols)
    }

    fn spec(&self) -> FieldSpec;
}

/// Plain Gauss-Jordan elimination: leftmost pivot column, first candidate row.
pub(crate) fn gaussian_rref<F: Field + ?Sized>(
    field: &F,
    rows: &mut Vec<Vec<F::Elem>>,
    cols: usize,
) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let Some(found) = (rank..rows.len()).find(|&r| !field.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(rank, found);
        let inv = field.inv(&rows[rank][col]).expect("pivot is nonzero");
        for x in rows[rank].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || field.is_zero(&row[col]) {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !field.is_zero(p) {
                    *x = field.sub(x, &field.mul(&factor, p));
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    pivots
}

// ---------------------------------------------------------------------------
// Integers

/// The ring of integers, backed by `i64`; overflow is a hard error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Integers;

impl Ring for Integers {
    type Elem = i64;

    fn zero(&self) -> i64 {
        0
    }
    fn one(&self) -> i64 {
        1
    }
    fn from_i64(&self, v: i64) -> i64 {
        v
    }
    fn add(&self, a: &i64, b: &i64) -> i64 {
        a.checked_add(*b).expect("integer overflow")
    }
    fn neg(&self, a: &i64) -> i64 {
        a.checked_neg().expect("integer overflow")
    }
    fn mul(&self, a: &i64, b: &i64) -> i64 {
        a.checked_mul(*b).expect("integer overflow")
    }
    fn is_zero(&self, a: &i64) -> bool {
        *a == 0
    }
    fn to_scalar(&self, a: &i64) -> Scalar {
        Scalar::Rational(BigRational::from_integer(BigInt::from(*a)))
    }
    fn name(&self) -> String {
        "Z".into()
    }
}

// ---------------------------------------------------------------------------
// Rationals

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn to_scalar(&self, a: &BigRational) -> Scalar {
        Scalar::Rational(a.clone())
    }
    fn name(&self) -> String {
        "Q".into()
    }
}

impl Field for Rationals {
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }

    /// Fraction-free elimination: rows are scaled to primitive integer
    /// vectors, eliminated with integer row operations and normalized to
    /// rationals only at the end.
    fn rref_rows(&self, rows: &mut Vec<Vec<BigRational>>, cols: usize) -> Vec<usize> {
        let mut int_rows: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| primitive_integer_row(r))
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..cols {
            if rank == int_rows.len() {
                break;
            }
            let Some(found) = (rank..int_rows.len()).find(|&r| !int_rows[r][col].is_zero())
            else {
                continue;
            };
            int_rows.swap(rank, found);
            let pivot_row = int_rows[rank].clone();
            let p = pivot_row[col].clone();
            for (r, row) in int_rows.iter_mut().enumerate() {
                if r == rank || row[col].is_zero() {
                    continue;
                }
                let g = p.gcd(&row[col]);
                let a = &p / &g;
                let b = &row[col] / &g;
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = &a * &*x - &b * y;
                }
                make_primitive(row);
            }
            pivots.push(col);
            rank += 1;
        }
        int_rows.truncate(rank);
        *rows = int_rows
            .into_iter()
            .zip(&pivots)
            .map(|(row, &c)| {
                let p = row[c].clone();
                row.into_iter()
                    .map(|x| BigRational::new(x, p.clone()))
                    .collect()
            })
            .collect();
        pivots
    }
}

fn primitive_integer_row(row: &[BigRational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut out: Vec<BigInt> = row
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

// ---------------------------------------------------------------------------
// Prime fields

/// The prime field `F_p`; elements are residues in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, ScalarError> {
        // keep products of two residues inside u64
        if !is_prime(p) || p >= (1 << 31) {
            return Err(ScalarError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduction of an integer into the field.
    pub fn reduce(&self, v: &BigInt) -> u64 {
        let r = v.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("residue fits")
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn to_scalar(&self, a: &u64) -> Scalar {
        Scalar::Prime {
            value: *a,
            modulus: self.p,
        }
    }
    fn name(&self) -> String {
        format!("F_{}", self.p)
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // Fermat
        Some(self.pow(a, (self.p - 2) as u32))
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::PrimeField(self.p)
    }
}

// ---------------------------------------------------------------------------
// Laurent polynomials

/// An element of `Z[q, q^-1]`: exponent to nonzero integer coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: i64, e: i32) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(e, c);
        }
        LaurentPoly { terms }
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    pub fn from_terms(pairs: impl IntoIterator<Item = (i32, i64)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in pairs {
            p.add_term(e, c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: i32, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(e).or_insert(0);
        *entry = entry.checked_add(c).expect("coefficient overflow");
        if *entry == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, &c)| (e, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("exponent overflow")
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        let mut out = Self::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                let e = e1.checked_add(e2).ok_or(ScalarError::ExponentOverflow)?;
                out.add_term(e, c1.checked_mul(c2).expect("coefficient overflow"));
            }
        }
        Ok(out)
    }

    /// Inverse in `Z[q, q^-1]`; only `±q^e` are units.
    pub fn inv(&self) -> Result<Self, ScalarError> {
        match self.terms.iter().next() {
            Some((&e, &c)) if self.terms.len() == 1 && (c == 1 || c == -1) => {
                let e = e.checked_neg().ok_or(ScalarError::ExponentOverflow)?;
                Ok(Self::monomial(c, e))
            }
            _ => Err(ScalarError::NotAUnit(self.to_string())),
        }
    }

    /// Image under `q -> 1`.
    pub fn specialize_q1(&self) -> i64 {
        self.terms.values().fold(0i64, |acc, &c| {
            acc.checked_add(c).expect("coefficient overflow")
        })
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| format!("{c}*q^{e}"))
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// Image of a Laurent polynomial under `q -> 1`.
pub fn specialize_q1(poly: &LaurentPoly) -> i64 {
    poly.specialize_q1()
}

/// The ring `Z[q, q^-1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LaurentRing;

impl Ring for LaurentRing {
    type Elem = LaurentPoly;

    fn zero(&self) -> LaurentPoly {
        LaurentPoly::zero()
    }
    fn one(&self) -> LaurentPoly {
        LaurentPoly::constant(1)
    }
    fn from_i64(&self, v: i64) -> LaurentPoly {
        LaurentPoly::constant(v)
    }
    fn add(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        a.add(b)
    }
    fn neg(&self, a: &LaurentPoly) -> LaurentPoly {
        a.neg()
    }
    fn mul(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        a.mul(b)
    }
    fn is_zero(&self, a: &LaurentPoly) -> bool {
        a.is_zero()
    }
    fn to_scalar(&self, a: &LaurentPoly) -> Scalar {
        Scalar::Laurent(a.clone())
    }
    fn name(&self) -> String {
        "Z[q,q^-1]".into()
    }
}

// ---------------------------------------------------------------------------
// Field specs

/// Which exact field a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, ScalarError> {
        PrimeField::new(p).map(|_| FieldSpec::PrimeField(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    /// `q` followed by one prime field per configured prime.
    pub fn all_with_primes(primes: &[u64]) -> Result<Vec<FieldSpec>, ScalarError> {
        let mut out = vec![FieldSpec::Rationals];
        for &p in primes {
            out.push(FieldSpec::prime(p)?);
        }
        Ok(out)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::PrimeField(p) => write!(f, "fp{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "q" || s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        let p: u64 = s
            .strip_prefix("fp")
            .and_then(|rest| rest.parse().ok())
            .ok_or_else(|| ScalarError::BadFieldSpec(s.to_string()))?;
        FieldSpec::prime(p)
    }
}

impl From<FieldSpec> for String {
    fn from(f: FieldSpec) -> String {
        f.to_string()
    }
}

impl TryFrom<String> for FieldSpec {
    type Error = ScalarError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// Runs `$body` with `$f` bound to the concrete field named by a [`FieldSpec`].
#[macro_export]
macro_rules! with_field {
    ($spec:expr, |$f:ident| $body:expr) => {
        match $spec {
            $crate::scalars::FieldSpec::Rationals => {
                let $f = $crate::scalars::Rationals;
                $body
            }
            $crate::scalars::FieldSpec::PrimeField(p) => {
                let $f = $crate::scalars::PrimeField::new(p).expect("FieldSpec holds a prime");
                $body
            }
        }
    };
}

// ---------------------------------------------------------------------------
// Dynamically tagged scalars

/// A tagged exact scalar, used for reports and mixed-ring bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { value: u64, modulus: u64 },
    Laurent(LaurentPoly),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Inv,
    Neg,
}

impl Scalar {
    pub fn rational(num: i64, den: i64) -> Result<Self, ScalarError> {
        if den == 0 {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::Rational(BigRational::new(num.into(), den.into())))
    }

    pub fn prime(value: i64, modulus: u64) -> Result<Self, ScalarError> {
        let f = PrimeField::new(modulus)?;
        Ok(Scalar::Prime {
            value: f.from_i64(value),
            modulus,
        })
    }

    fn kind(&self) -> &'static str {
        match self {
            Scalar::Rational(_) => "rational",
            Scalar::Prime { .. } => "prime field",
            Scalar::Laurent(_) => "Laurent polynomial",
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
            Scalar::Laurent(p) => p.is_zero(),
        }
    }

    fn binary(&self, other: &Scalar, op: ArithOp) -> Result<Scalar, ScalarError> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(match op {
                ArithOp::Add => a + b,
                _ => a * b,
            })),
            (
                Scalar::Prime { value: a, modulus: p },
                Scalar::Prime { value: b, modulus: p2 },
            ) => {
                if p != p2 {
                    return Err(ScalarError::ModulusMismatch(*p, *p2));
                }
                let f = PrimeField::new(*p)?;
                let value = match op {
                    ArithOp::Add => f.add(a, b),
                    _ => f.mul(a, b),
                };
                Ok(Scalar::Prime { value, modulus: *p })
            }
            (Scalar::Laurent(a), Scalar::Laurent(b)) => Ok(Scalar::Laurent(match op {
                ArithOp::Add => a.add(b),
                _ => a.try_mul(b)?,
            })),
            (a, b) => Err(ScalarError::RingMismatch(a.kind(), b.kind())),
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.binary(other, ArithOp::Add)
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.binary(other, ArithOp::Mul)
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime { value, modulus } => Scalar::Prime {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
            Scalar::Laurent(p) => Scalar::Laurent(p.neg()),
        }
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        match self {
            Scalar::Rational(a) if a.is_zero() => Err(ScalarError::DivisionByZero),
            Scalar::Rational(a) => Ok(Scalar::Rational(a.recip())),
            Scalar::Prime { value, modulus } => {
                let f = PrimeField::new(*modulus)?;
                f.inv(value)
                    .map(|value| Scalar::Prime {
                        value,
                        modulus: *modulus,
                    })
                    .ok_or(ScalarError::DivisionByZero)
            }
            Scalar::Laurent(p) if p.is_zero() => Err(ScalarError::DivisionByZero),
            Scalar::Laurent(p) => p.inv().map(Scalar::Laurent),
        }
    }
}

/// Applies `op` to `a` (and `b` for binary operations).
pub fn field_arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar, ScalarError> {
    match op {
        ArithOp::Add | ArithOp::Mul => a.binary(b, op),
        ArithOp::Neg => Ok(a.neg()),
        ArithOp::Inv => a.inv(),
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                let (n, d) = (r.numer(), r.denom());
                // BigRational keeps the denominator positive
                debug_assert!(d.is_positive());
                write!(f, "{n}/{d}")
            }
            Scalar::Prime { value, modulus } => write!(f, "{value} (mod {modulus})"),
            Scalar::Laurent(p) => write!(f, "{p}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn specialize_examples() {
        let p = LaurentPoly::from_terms([(1, 1), (-1, 1)]);
        assert_eq!(specialize_q1(&p), 2);
        let loop_value = LaurentPoly::constant(1).sub(&LaurentPoly::from_terms([
            (-2, 1),
            (0, 1),
            (2, 1),
        ]));
        assert_eq!(specialize_q1(&loop_value), -2);
        assert_eq!(specialize_q1(&LaurentPoly::zero()), 0);
    }

    #[test]
    fn arith_examples() {
        let half = Scalar::rational(2, 4).unwrap();
        assert_eq!(half.to_string(), "1/2");
        let two = Scalar::prime(2, 5).unwrap();
        assert_eq!(
            field_arith(&two, &two, ArithOp::Inv).unwrap(),
            Scalar::prime(3, 5).unwrap()
        );
        let m = Scalar::Laurent(LaurentPoly::monomial(-1, 3));
        assert_eq!(
            m.inv().unwrap(),
            Scalar::Laurent(LaurentPoly::monomial(-1, -3))
        );
    }

    #[test]
    fn arith_errors() {
        let zero = Scalar::rational(0, 1).unwrap();
        assert_eq!(zero.inv(), Err(ScalarError::DivisionByZero));
        assert_eq!(Scalar::rational(1, 0), Err(ScalarError::DivisionByZero));
        let a = Scalar::prime(1, 3).unwrap();
        let b = Scalar::prime(1, 5).unwrap();
        assert_eq!(a.add(&b), Err(ScalarError::ModulusMismatch(3, 5)));
        let two_q = Scalar::Laurent(LaurentPoly::monomial(2, 1));
        assert!(matches!(two_q.inv(), Err(ScalarError::NotAUnit(_))));
        assert!(matches!(
            a.mul(&zero),
            Err(ScalarError::RingMismatch(_, _))
        ));
        assert_eq!(PrimeField::new(4), Err(ScalarError::NotPrime(4)));
    }

    #[test]
    fn rendering() {
        assert_eq!(Scalar::rational(-3, 1).unwrap().to_string(), "-3/1");
        assert_eq!(Scalar::prime(-1, 7).unwrap().to_string(), "6 (mod 7)");
        let p = LaurentPoly::from_terms([(2, 3), (-1, -1)]);
        assert_eq!(p.to_string(), "-1*q^-1+3*q^2");
    }

    #[test]
    fn field_spec_parsing() {
        assert_eq!("q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("fp5".parse::<FieldSpec>().unwrap(), FieldSpec::PrimeField(5));
        assert!("fp6".parse::<FieldSpec>().is_err());
        assert!("r".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn fraction_free_rref_matches_gauss() {
        let q = Rationals;
        let rows: Vec<Vec<BigRational>> = [[2, 4, 1], [1, 2, 3], [3, 6, 4]]
            .iter()
            .map(|r| r.iter().map(|&x| q.from_i64(x)).collect())
            .collect();
        let mut a = rows.clone();
        let mut b = rows;
        let pa = q.rref_rows(&mut a, 3);
        let pb = gaussian_rref(&q, &mut b, 3);
        assert_eq!(pa, pb);
        assert_eq!(a, b);
    }

    fn small_laurent() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-4i32..5, -5i64..6), 0..4).prop_map(LaurentPoly::from_terms)
    }

    proptest! {
        #[test]
        fn laurent_ring_axioms(a in small_laurent(), b in small_laurent(), c in small_laurent()) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
        }

        #[test]
        fn specialization_is_a_homomorphism(a in small_laurent(), b in small_laurent()) {
            prop_assert_eq!(a.mul(&b).specialize_q1(), a.specialize_q1() * b.specialize_q1());
            prop_assert_eq!(a.add(&b).specialize_q1(), a.specialize_q1() + b.specialize_q1());
        }

        #[test]
        fn prime_field_axioms(a in 0u64..1000, b in 0u64..1000, c in 0u64..1000) {
            for p in DEFAULT_PRIMES {
                let f = PrimeField::new(p).unwrap();
                let (a, b, c) = (a % p, b % p, c % p);
                prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
                prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
                if a != 0 {
                    prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
                }
            }
        }

        #[test]
        fn rational_ring_axioms(a in -50i64..50, b in 1i64..50, c in -50i64..50, d in 1i64..50) {
            let q = Rationals;
            let x = BigRational::new(a.into(), b.into());
            let y = BigRational::new(c.into(), d.into());
            let z = q.add(&x, &y);
            prop_assert_eq!(q.mul(&z, &x), q.add(&q.mul(&x, &x), &q.mul(&y, &x)));
        }

        #[test]
        fn reduction_commutes_with_arithmetic(a in -1000i64..1000, b in -1000i64..1000) {
            for p in DEFAULT_PRIMES {
                let f = PrimeField::new(p).unwrap();
                prop_assert_eq!(f.from_i64(a * b), f.mul(&f.from_i64(a), &f.from_i64(b)));
                prop_assert_eq!(f.from_i64(a + b), f.add(&f.from_i64(a), &f.from_i64(b)));
                prop_assert_eq!(f.reduce(&BigInt::from(a)), f.from_i64(a));
            }
        }
    }
}
