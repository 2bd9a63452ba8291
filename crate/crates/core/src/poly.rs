//! Sparse multivariate polynomials and the standard order function.
//!
//! All functions live on the unit polydisk/ball with basepoint fixed at the
//! origin, so the order of vanishing of `p` is the smallest total degree among
//! its stored terms. Callers that care about another basepoint translate
//! coordinates before building the polynomial.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{ParseError, PolyError};
use crate::scalar::{format_rational, parse_rational, rational_from_f64, rational_to_f64, Scalar, C64, QI};

/// Default relative prune threshold for float arithmetic.
pub const DEFAULT_PRUNE: f64 = 1e-12;

/// Exponent tuple of a monomial `z^k = z_1^{k_1} ... z_n^{k_n}`.
///
/// Ordering is graded lexicographic: total degree first, then the exponent
/// tuple in descending lexicographic order, so `z1` precedes `z2` and `z1^2`
/// precedes `z1 z2`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// Unit vector `e_i`, the exponent of the coordinate function `z_i`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        MultiIndex(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn plus(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `true` if `other - self` has non-negative entries.
    pub fn divides(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn factorial(&self) -> f64 {
        self.0.iter().map(|&k| factorial_f64(k)).product()
    }

    /// All multi-indices of length `n` and total degree exactly `d`, in graded-lex order.
    pub fn of_degree(n: usize, d: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            let n = cur.len();
            if pos + 1 == n {
                cur[pos] = left;
                out.push(MultiIndex(cur.clone()));
                return;
            }
            for v in (0..=left).rev() {
                cur[pos] = v;
                rec(pos + 1, left - v, cur, out);
            }
        }
        if n == 0 {
            return out;
        }
        rec(0, d, &mut cur, &mut out);
        out
    }

    /// All multi-indices with total degree at most `max_degree`, graded-lex order.
    pub fn up_to_degree(n: usize, max_degree: u32) -> Vec<MultiIndex> {
        (0..=max_degree).flat_map(|d| MultiIndex::of_degree(n, d)).collect()
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &k) in self.0.iter().enumerate() {
            if k == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if k == 1 {
                write!(f, "z{}", i + 1)?;
            } else {
                write!(f, "z{}^{}", i + 1, k)?;
            }
        }
        Ok(())
    }
}

pub(crate) fn factorial_f64(k: u32) -> f64 {
    (1..=k).map(|v| v as f64).product()
}

/// Value of the order function: a non-negative integer or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OrderValue {
    Finite(u32),
    Infinity,
}

impl OrderValue {
    pub fn is_infinite(self) -> bool {
        matches!(self, OrderValue::Infinity)
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            OrderValue::Finite(v) => Some(v),
            OrderValue::Infinity => None,
        }
    }
}

impl Add for OrderValue {
    type Output = OrderValue;

    fn add(self, rhs: OrderValue) -> OrderValue {
        match (self, rhs) {
            (OrderValue::Finite(a), OrderValue::Finite(b)) => OrderValue::Finite(a + b),
            _ => OrderValue::Infinity,
        }
    }
}

impl fmt::Display for OrderValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderValue::Finite(v) => write!(f, "{v}"),
            OrderValue::Infinity => write!(f, "inf"),
        }
    }
}

/// Serialized as an integer, or the string `"inf"`.
impl Serialize for OrderValue {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        match self {
            OrderValue::Finite(v) => s.serialize_u32(*v),
            OrderValue::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for OrderValue {
    fn deserialize<De: serde::Deserializer<'de>>(d: De) -> Result<Self, De::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u32),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(OrderValue::Finite(v)),
            Raw::Text(t) if t == "inf" => Ok(OrderValue::Infinity),
            Raw::Text(t) => Err(serde::de::Error::custom(format!("invalid order value `{t}`"))),
        }
    }
}

/// Sparse polynomial in `n` complex variables.
///
/// Terms are kept in graded-lex order and no stored coefficient is zero
/// (exact) or below the prune threshold (float).
#[derive(Clone, PartialEq)]
pub struct Polynomial<S: Scalar> {
    dim: usize,
    terms: BTreeMap<MultiIndex, S>,
}

pub type FloatPoly = Polynomial<C64>;
pub type ExactPoly = Polynomial<QI>;

impl<S: Scalar> Polynomial<S> {
    pub fn zero(dim: usize) -> Self {
        Polynomial { dim, terms: BTreeMap::new() }
    }

    pub fn one(dim: usize) -> Self {
        Self::monomial(MultiIndex::zero(dim), S::one())
    }

    pub fn monomial(k: MultiIndex, c: S) -> Self {
        let dim = k.dim();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        Polynomial { dim, terms }
    }

    /// The coordinate function `z_i` (0-based `i`).
    pub fn coordinate(dim: usize, i: usize) -> Self {
        Self::monomial(MultiIndex::unit(dim, i), S::one())
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs; repeated
    /// exponents are summed and exact zeros dropped.
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (MultiIndex, S)>,
    {
        let mut p = Polynomial::zero(dim);
        for (k, c) in terms {
            if k.dim() != dim {
                return Err(PolyError::IndexLength { got: k.dim(), expected: dim });
            }
            p.add_term(k, c);
        }
        p.terms.retain(|_, c| !c.is_zero());
        Ok(p)
    }

    fn add_term(&mut self, k: MultiIndex, c: S) {
        match self.terms.get_mut(&k) {
            Some(v) => *v = v.clone() + c,
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &S)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, k: &MultiIndex) -> S {
        self.terms.get(k).cloned().unwrap_or_else(S::zero)
    }

    /// Largest total degree among stored terms (`None` for zero).
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(MultiIndex::degree)
    }

    /// Order of vanishing at the origin: minimal total degree of a stored term.
    pub fn ord(&self) -> OrderValue {
        match self.terms.keys().next() {
            Some(k) => OrderValue::Finite(k.degree()),
            None => OrderValue::Infinity,
        }
    }

    pub fn max_modulus(&self) -> f64 {
        self.terms.values().map(|c| c.modulus()).fold(0.0, f64::max)
    }

    /// Drops terms with `|c| <= rel * reference` (float) or exact zeros.
    pub fn prune(&mut self, rel: f64, reference: f64) {
        let threshold = rel * reference;
        self.terms.retain(|_, c| !c.negligible(threshold));
    }

    fn check_dim(&self, other: &Self) -> Result<(), PolyError> {
        if self.dim != other.dim {
            return Err(PolyError::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.add_pruned(other, DEFAULT_PRUNE)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.add_pruned(&other.scale(&-S::one()), DEFAULT_PRUNE)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.mul_pruned(other, DEFAULT_PRUNE)
    }

    /// Sum with a configurable relative prune threshold.
    pub fn add_pruned(&self, other: &Self, rel: f64) -> Result<Self, PolyError> {
        self.check_dim(other)?;
        let reference = self.max_modulus().max(other.max_modulus());
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out.prune(rel, reference);
        Ok(out)
    }

    /// Product with a configurable relative prune threshold.
    pub fn mul_pruned(&self, other: &Self, rel: f64) -> Result<Self, PolyError> {
        self.check_dim(other)?;
        let mut out = Polynomial::zero(self.dim);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.plus(b), ca.clone() * cb.clone());
            }
        }
        let reference = self.max_modulus() * other.max_modulus();
        out.prune(rel, reference);
        Ok(out)
    }

    pub fn scale(&self, lambda: &S) -> Self {
        let mut out = Polynomial::zero(self.dim);
        if lambda.is_zero() {
            return out;
        }
        for (k, c) in &self.terms {
            let v = c.clone() * lambda.clone();
            if !v.is_zero() {
                out.terms.insert(k.clone(), v);
            }
        }
        out
    }

    /// Multiplies by the monomial `z^m`.
    pub fn shift(&self, m: &MultiIndex) -> Self {
        Polynomial {
            dim: self.dim,
            terms: self.terms.iter().map(|(k, c)| (k.plus(m), c.clone())).collect(),
        }
    }

    /// Sum of the terms of total degree exactly `k`.
    pub fn homogeneous_part(&self, k: u32) -> Self {
        Polynomial {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drops terms of total degree above `max_degree`; the flag reports
    /// whether any nonzero term was dropped.
    pub fn truncate(&self, max_degree: u32) -> (Self, bool) {
        let kept: BTreeMap<_, _> = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() <= max_degree)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        let dropped = kept.len() != self.terms.len();
        (Polynomial { dim: self.dim, terms: kept }, dropped)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Polynomial<T> {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            let v = f(c);
            if !v.is_zero() {
                terms.insert(k.clone(), v);
            }
        }
        Polynomial { dim: self.dim, terms }
    }

    pub fn to_float(&self) -> FloatPoly {
        self.map(|c| c.to_c64())
    }

    /// Evaluates at a point of `C^n`.
    pub fn eval(&self, z: &[C64]) -> C64 {
        self.terms
            .iter()
            .map(|(k, c)| {
                let mono: C64 = k
                    .exponents()
                    .iter()
                    .zip(z)
                    .map(|(&e, zi)| zi.powu(e))
                    .product();
                c.to_c64() * mono
            })
            .sum()
    }
}

impl<S: Scalar> fmt::Debug for Polynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(k, c)| format!("({c:?})*{k}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<S: Scalar> Add for &Polynomial<S> {
    type Output = Polynomial<S>;

    /// Panics on dimension mismatch; use [`Polynomial::try_add`] for a checked sum.
    fn add(self, rhs: &Polynomial<S>) -> Polynomial<S> {
        self.try_add(rhs).expect("polynomial dimension mismatch")
    }
}

impl<S: Scalar> Sub for &Polynomial<S> {
    type Output = Polynomial<S>;

    fn sub(self, rhs: &Polynomial<S>) -> Polynomial<S> {
        self.try_sub(rhs).expect("polynomial dimension mismatch")
    }
}

impl<S: Scalar> Mul for &Polynomial<S> {
    type Output = Polynomial<S>;

    fn mul(self, rhs: &Polynomial<S>) -> Polynomial<S> {
        self.try_mul(rhs).expect("polynomial dimension mismatch")
    }
}

impl<S: Scalar> Neg for &Polynomial<S> {
    type Output = Polynomial<S>;

    fn neg(self) -> Polynomial<S> {
        self.scale(&-S::one())
    }
}

/// Standard order function.
pub fn ord<S: Scalar>(p: &Polynomial<S>) -> OrderValue {
    p.ord()
}

/// Sum of the terms of `p` with total degree exactly `k`.
pub fn homogeneous_part<S: Scalar>(p: &Polynomial<S>, k: u32) -> Polynomial<S> {
    p.homogeneous_part(k)
}

/// Scalar component in the polynomial text format: a JSON number (float
/// mode) or a decimal rational string `"p/q"` (exact mode).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarText {
    Float(f64),
    Exact(String),
}

impl ScalarText {
    pub fn to_f64(&self) -> Result<f64, ParseError> {
        match self {
            ScalarText::Float(v) => Ok(*v),
            ScalarText::Exact(s) => Ok(rational_to_f64(&parse_rational(s)?)),
        }
    }

    pub fn to_rational(&self) -> Result<BigRational, ParseError> {
        match self {
            ScalarText::Float(v) => rational_from_f64(*v).ok_or_else(|| ParseError::Rational(v.to_string())),
            ScalarText::Exact(s) => parse_rational(s),
        }
    }
}

/// One term `{exponents, re, im}` of the polynomial text format.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermRecord {
    pub exponents: Vec<u32>,
    pub re: ScalarText,
    #[serde(default = "zero_text")]
    pub im: ScalarText,
}

fn zero_text() -> ScalarText {
    ScalarText::Float(0.0)
}

fn check_records(records: &[TermRecord]) -> Result<usize, ParseError> {
    let n = records.first().map(|r| r.exponents.len()).unwrap_or(0);
    if let Some(r) = records.iter().find(|r| r.exponents.len() != n) {
        return Err(ParseError::Record(format!("exponent tuple {:?} has length != {n}", r.exponents)));
    }
    Ok(n)
}

impl FloatPoly {
    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms()
            .map(|(k, c)| TermRecord {
                exponents: k.exponents().to_vec(),
                re: ScalarText::Float(c.re),
                im: ScalarText::Float(c.im),
            })
            .collect()
    }

    /// Parses records; `dim` is used for the empty list.
    pub fn from_records(records: &[TermRecord], dim: usize) -> Result<Self, ParseError> {
        let n = if records.is_empty() { dim } else { check_records(records)? };
        if n != dim {
            return Err(ParseError::Record(format!("polynomial has {n} variables, expected {dim}")));
        }
        let terms = records
            .iter()
            .map(|r| Ok((MultiIndex::new(r.exponents.clone()), C64::new(r.re.to_f64()?, r.im.to_f64()?))))
            .collect::<Result<Vec<_>, ParseError>>()?;
        Polynomial::from_terms(n, terms).map_err(|e| ParseError::Record(e.to_string()))
    }
}

impl ExactPoly {
    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms()
            .map(|(k, c)| TermRecord {
                exponents: k.exponents().to_vec(),
                re: ScalarText::Exact(format_rational(&c.re)),
                im: ScalarText::Exact(format_rational(&c.im)),
            })
            .collect()
    }

    pub fn from_records(records: &[TermRecord], dim: usize) -> Result<Self, ParseError> {
        let n = if records.is_empty() { dim } else { check_records(records)? };
        if n != dim {
            return Err(ParseError::Record(format!("polynomial has {n} variables, expected {dim}")));
        }
        let terms = records
            .iter()
            .map(|r| Ok((MultiIndex::new(r.exponents.clone()), QI::new(r.re.to_rational()?, r.im.to_rational()?))))
            .collect::<Result<Vec<_>, ParseError>>()?;
        Polynomial::from_terms(n, terms).map_err(|e| ParseError::Record(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{qi_int, rational};

    fn mi(e: &[u32]) -> MultiIndex {
        MultiIndex::new(e.to_vec())
    }

    fn ep(dim: usize, terms: &[(&[u32], i64)]) -> ExactPoly {
        Polynomial::from_terms(dim, terms.iter().map(|(e, c)| (mi(e), qi_int(*c, 0)))).unwrap()
    }

    #[test]
    fn graded_lex_order() {
        let all = MultiIndex::up_to_degree(2, 2);
        let shown: Vec<String> = all.iter().map(|m| m.to_string()).collect();
        assert_eq!(shown, ["1", "z1", "z2", "z1^2", "z1*z2", "z2^2"]);
        assert_eq!(MultiIndex::up_to_degree(3, 4).len(), 35);
    }

    #[test]
    fn ord_examples() {
        assert_eq!(ep(2, &[]).ord(), OrderValue::Infinity);
        assert_eq!(ep(2, &[(&[1, 1], 1), (&[0, 3], 1)]).ord(), OrderValue::Finite(2));
        assert_eq!(ep(2, &[(&[1, 1], 1), (&[0, 2], 1)]).ord(), OrderValue::Finite(2));
    }

    #[test]
    fn arithmetic_examples() {
        let z1 = ExactPoly::coordinate(2, 0);
        let z2 = ExactPoly::coordinate(2, 1);
        assert_eq!(&z1 * &z2, ep(2, &[(&[1, 1], 1)]));

        let one_plus = ep(1, &[(&[0], 1), (&[1], 1)]);
        let one_minus = ep(1, &[(&[0], 1), (&[1], -1)]);
        assert_eq!(&one_plus * &one_minus, ep(1, &[(&[0], 1), (&[2], -1)]));

        let p = ep(2, &[(&[1, 0], 1), (&[0, 2], 1)]);
        let q = ep(2, &[(&[2, 0], 1)]);
        assert_eq!((&p * &q).ord(), OrderValue::Finite(3));
        assert_eq!(p.ord() + q.ord(), OrderValue::Finite(3));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = ExactPoly::coordinate(1, 0);
        let b = ExactPoly::coordinate(2, 0);
        assert!(matches!(a.try_mul(&b), Err(PolyError::DimensionMismatch { .. })));
        assert!(a.try_add(&b).is_err());
    }

    #[test]
    fn homogeneous_part_examples() {
        let p = ep(2, &[(&[0, 0], 1), (&[1, 0], 1), (&[1, 1], 1)]);
        assert_eq!(p.homogeneous_part(1), ep(2, &[(&[1, 0], 1)]));
        let f = ep(2, &[(&[1, 1], 1), (&[0, 2], 1)]);
        assert_eq!(f.homogeneous_part(2), f);
    }

    #[test]
    fn cancellation_gives_infinite_order() {
        let z = ExactPoly::coordinate(1, 0);
        let s = &z - &z;
        assert!(s.is_zero());
        assert_eq!(s.ord(), OrderValue::Infinity);
    }

    #[test]
    fn float_pruning_drops_roundoff() {
        let a = FloatPoly::from_terms(1, [(mi(&[0]), C64::new(1.0, 0.0)), (mi(&[1]), C64::new(0.1, 0.0))]).unwrap();
        let b = FloatPoly::from_terms(1, [(mi(&[0]), C64::new(-1.0, 0.0)), (mi(&[1]), C64::new(-0.1 + 1e-17, 0.0))])
            .unwrap();
        let s = a.try_add(&b).unwrap();
        assert!(s.is_zero(), "{s:?}");
        assert_eq!(s.ord(), OrderValue::Infinity);
    }

    #[test]
    fn truncation_reports_dropped_terms() {
        let p = ep(1, &[(&[1], 1), (&[3], 2)]);
        let (t, dropped) = p.truncate(2);
        assert!(dropped);
        assert_eq!(t, ep(1, &[(&[1], 1)]));
        assert!(!p.truncate(3).1);
    }

    #[test]
    fn records_round_trip() {
        let p = ep(2, &[(&[1, 1], 3), (&[0, 2], -1)]);
        let r = p.to_records();
        assert_eq!(r[0].exponents, vec![1, 1]);
        assert_eq!(ExactPoly::from_records(&r, 2).unwrap(), p);
        let json = r#"[{"exponents":[0,1],"re":"1/2","im":0}]"#;
        let recs: Vec<TermRecord> = serde_json::from_str(json).unwrap();
        let f = FloatPoly::from_records(&recs, 2).unwrap();
        assert_eq!(f.coeff(&mi(&[0, 1])), C64::new(0.5, 0.0));
        assert!(ExactPoly::from_records(&recs, 3).is_err());
    }

    #[test]
    fn exact_scale_by_gaussian_rational() {
        let r = ep(2, &[(&[2, 0], 1)]);
        let lambda = qi_int(2, 1);
        assert_eq!(r.scale(&lambda).ord(), OrderValue::Finite(2));
        let half = crate::scalar::qi(rational(1, 2), rational(0, 1));
        assert_eq!(r.scale(&half).coeff(&mi(&[2, 0])), half);
    }
}
