//! Monomial-orthogonal Hilbert-module models.
//!
//! A model is determined by a positive weight `w(k) = ||z^k||^2` for every
//! multi-index of total degree at most `D`; distinct monomials are orthogonal.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::io::Write;

use num::{BigInt, BigRational, One};
use serde::{Deserialize, Serialize};

use crate::error::SpaceError;
use crate::poly::{factorial_f64, ExactPoly, FloatPoly, MultiIndex, Polynomial};
use crate::quadrature::{beta_moment, integrate, sphere_moment};
use crate::scalar::{Scalar, C64, QI};

/// Radial moments `mu_m = int r^{2m} dnu(r)`, `m = 0..=D`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentTable {
    pub moments: Vec<f64>,
}

impl MomentTable {
    /// Validates positivity and log-convexity `mu_m^2 <= mu_{m-1} mu_{m+1}`.
    pub fn new(moments: Vec<f64>) -> Result<Self, SpaceError> {
        if moments.is_empty() {
            return Err(SpaceError::InvalidParameter("empty moment table".into()));
        }
        if let Some((m, v)) = moments.iter().enumerate().find(|(_, v)| !(**v > 0.0) || !v.is_finite()) {
            return Err(SpaceError::InvalidParameter(format!("moment {m} is not positive: {v}")));
        }
        for m in 1..moments.len().saturating_sub(1) {
            let lhs = moments[m] * moments[m];
            let rhs = moments[m - 1] * moments[m + 1];
            if lhs > rhs * (1.0 + 1e-12) {
                return Err(SpaceError::InvalidParameter(format!(
                    "moments are not log-convex at m = {m}: {lhs} > {rhs}"
                )));
            }
        }
        Ok(MomentTable { moments })
    }

    /// Moments of the radial density `rho` on the disk with area element
    /// `2 r dr` (normalized so that `rho = 1` gives `mu_m = 1 / (m + 1)`).
    pub fn from_density<F: Fn(f64) -> f64>(rho: F, max_degree: usize) -> Result<Self, SpaceError> {
        let moments = (0..=max_degree)
            .map(|m| integrate(|r| r.powi(2 * m as i32) * rho(r) * 2.0 * r, 0.0, 1.0, 1e-12).value)
            .collect();
        MomentTable::new(moments)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SpaceKind {
    H2Polydisk,
    H2Ball,
    H2Polyball { blocks: Vec<usize> },
    A2Ball,
    A2DiskAlpha { alpha: f64 },
    A2Radial { moments: MomentTable },
}

impl SpaceKind {
    pub fn name(&self) -> &'static str {
        match self {
            SpaceKind::H2Polydisk => "H2_POLYDISK",
            SpaceKind::H2Ball => "H2_BALL",
            SpaceKind::H2Polyball { .. } => "H2_POLYBALL",
            SpaceKind::A2Ball => "A2_BALL",
            SpaceKind::A2DiskAlpha { .. } => "A2_DISK_ALPHA",
            SpaceKind::A2Radial { .. } => "A2_RADIAL",
        }
    }
}

/// Truncated monomial-orthogonal space: dimension `n`, truncation degree `D`,
/// and the weight table for every `|k| <= D` in graded-lex order.
#[derive(Clone, Debug)]
pub struct SpaceModel {
    n: usize,
    degree: usize,
    kind: SpaceKind,
    monomials: Vec<MultiIndex>,
    index: HashMap<MultiIndex, usize>,
    weights: Vec<f64>,
    exact_weights: Option<Vec<BigRational>>,
}

/// Builds the weight table for `kind` on `C^n` truncated at degree `D`.
pub fn make_space(kind: SpaceKind, n: usize, degree: usize) -> Result<SpaceModel, SpaceError> {
    if n == 0 {
        return Err(SpaceError::InvalidParameter("dimension n must be at least 1".into()));
    }
    if degree == 0 {
        return Err(SpaceError::InvalidParameter("truncation degree D must be at least 1".into()));
    }
    match &kind {
        SpaceKind::H2Polyball { blocks } => {
            if blocks.is_empty() || blocks.contains(&0) || blocks.iter().sum::<usize>() != n {
                return Err(SpaceError::InvalidParameter(format!(
                    "polyball blocks {blocks:?} must be positive and sum to n = {n}"
                )));
            }
        }
        SpaceKind::A2DiskAlpha { alpha } => {
            if n != 1 {
                return Err(SpaceError::Unsupported("A2_DISK_ALPHA requires n = 1".into()));
            }
            if !(*alpha >= 0.0) || !alpha.is_finite() {
                return Err(SpaceError::InvalidParameter(format!("alpha must be >= 0, got {alpha}")));
            }
        }
        SpaceKind::A2Radial { moments } => {
            if n != 1 {
                return Err(SpaceError::Unsupported("A2_RADIAL requires n = 1".into()));
            }
            MomentTable::new(moments.moments.clone())?;
            if moments.moments.len() <= degree {
                return Err(SpaceError::InvalidParameter(format!(
                    "moment table has {} entries, need D + 1 = {}",
                    moments.moments.len(),
                    degree + 1
                )));
            }
        }
        _ => {}
    }
    let monomials = MultiIndex::up_to_degree(n, degree as u32);
    let index = monomials.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    let mut beta_cache: HashMap<u32, f64> = HashMap::new();
    let weights: Vec<f64> = monomials
        .iter()
        .map(|k| match &kind {
            SpaceKind::H2Polydisk => 1.0,
            SpaceKind::H2Ball => sphere_moment(k),
            SpaceKind::H2Polyball { blocks } => polyball_weight(k, blocks),
            SpaceKind::A2Ball => 1.0 / bergman_ball_coefficient(k),
            SpaceKind::A2DiskAlpha { alpha } => {
                let m = k.degree();
                *beta_cache.entry(m).or_insert_with(|| beta_moment(m, *alpha))
            }
            SpaceKind::A2Radial { moments } => moments.moments[k.degree() as usize],
        })
        .collect();
    if let Some((i, w)) = weights.iter().enumerate().find(|(_, w)| !(**w > 0.0) || !w.is_finite()) {
        return Err(SpaceError::InvalidParameter(format!("weight of {} is not positive: {w}", monomials[i])));
    }
    let exact_weights = exact_weight_table(&kind, &monomials);
    Ok(SpaceModel { n, degree, kind, monomials, index, weights, exact_weights })
}

fn polyball_weight(k: &MultiIndex, blocks: &[usize]) -> f64 {
    let e = k.exponents();
    let mut start = 0;
    let mut w = 1.0;
    for &b in blocks {
        w *= sphere_moment(&MultiIndex::new(e[start..start + b].to_vec()));
        start += b;
    }
    w
}

/// Coefficient of `z^k conj(w)^k` in `n!/pi^n (1 - <z, w>)^{-(n+1)}`:
/// the negative binomial series contributes `C(n + |k|, n)` at degree `|k|`
/// and the multinomial expansion of `<z, w>^{|k|}` contributes `|k|! / k!`.
fn bergman_ball_coefficient(k: &MultiIndex) -> f64 {
    let n = k.dim() as u32;
    let d = k.degree();
    let prefactor = factorial_f64(n) / PI.powi(n as i32);
    let binom = (1..=n).map(|i| (d + i) as f64 / i as f64).product::<f64>();
    let multinomial = factorial_f64(d) / k.factorial();
    prefactor * binom * multinomial
}

/// Closed form `n!/pi^n (1 - <z, w>)^{-(n+1)}` of the ball Bergman kernel.
pub fn bergman_kernel_closed_form(z: &[C64], w: &[C64]) -> C64 {
    let n = z.len() as u32;
    let dot: C64 = z.iter().zip(w).map(|(a, b)| a * b.conj()).sum();
    let prefactor = factorial_f64(n) / PI.powi(n as i32);
    (C64::new(1.0, 0.0) - dot).powi(-(n as i32 + 1)) * prefactor
}

fn exact_weight_table(kind: &SpaceKind, monomials: &[MultiIndex]) -> Option<Vec<BigRational>> {
    match kind {
        SpaceKind::H2Polydisk => Some(vec![BigRational::one(); monomials.len()]),
        SpaceKind::A2DiskAlpha { alpha } if alpha.fract() == 0.0 && *alpha <= 64.0 => {
            let a = *alpha as u64;
            Some(monomials.iter().map(|k| exact_beta(k.degree() as u64, a)).collect())
        }
        _ => None,
    }
}

/// `m! a! / (m + a + 1)!`
fn exact_beta(m: u64, a: u64) -> BigRational {
    let fact = |v: u64| (1..=v).fold(BigInt::one(), |acc, i| acc * BigInt::from(i));
    BigRational::new(fact(m) * fact(a), fact(m + a + 1))
}

impl SpaceModel {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Truncation degree `D`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn kind(&self) -> &SpaceKind {
        &self.kind
    }

    /// All monomials of degree `<= D` in graded-lex order.
    pub fn monomials(&self) -> &[MultiIndex] {
        &self.monomials
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn index_of(&self, k: &MultiIndex) -> Option<usize> {
        self.index.get(k).copied()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, k: &MultiIndex) -> Option<f64> {
        self.index_of(k).map(|i| self.weights[i])
    }

    pub fn exact_weights(&self) -> Option<&[BigRational]> {
        self.exact_weights.as_deref()
    }

    /// Range of ambient indices holding monomials of total degree `d`.
    pub fn degree_range(&self, d: usize) -> std::ops::Range<usize> {
        let start = self.monomials.partition_point(|k| (k.degree() as usize) < d);
        let end = self.monomials.partition_point(|k| (k.degree() as usize) <= d);
        start..end
    }

    pub fn check_fits<S: Scalar>(&self, p: &Polynomial<S>) -> Result<(), SpaceError> {
        if p.dim() != self.n {
            return Err(crate::error::PolyError::DimensionMismatch { left: p.dim(), right: self.n }.into());
        }
        match p.degree() {
            Some(d) if d as usize > self.degree => Err(SpaceError::DegreeExceedsTruncation { degree: d, max: self.degree }),
            _ => Ok(()),
        }
    }

    pub fn norm(&self, f: &FloatPoly) -> Result<f64, SpaceError> {
        Ok(inner_product(f, f, self)?.re.max(0.0).sqrt())
    }

    /// Weight table as CSV rows `exponents,weight`.
    pub fn write_weights_csv<W: Write>(&self, out: W) -> Result<(), csv::Error> {
        let mut wtr = csv::Writer::from_writer(out);
        wtr.write_record(["multi_index", "degree", "weight"])?;
        for (k, w) in self.monomials.iter().zip(&self.weights) {
            let e: Vec<String> = k.exponents().iter().map(u32::to_string).collect();
            wtr.write_record([e.join(" "), k.degree().to_string(), format!("{w:.17e}")])?;
        }
        wtr.flush()?;
        Ok(())
    }
}

/// `sum_k f_k conj(g_k) w(k)`.
pub fn inner_product(f: &FloatPoly, g: &FloatPoly, space: &SpaceModel) -> Result<C64, SpaceError> {
    space.check_fits(f)?;
    space.check_fits(g)?;
    let mut s = C64::new(0.0, 0.0);
    for (k, c) in f.terms() {
        let d = g.coeff(k);
        if d != C64::new(0.0, 0.0) {
            s += c * d.conj() * space.weights[space.index[k]];
        }
    }
    Ok(s)
}

/// Exact inner product; requires a space with rational weights.
pub fn inner_product_exact(f: &ExactPoly, g: &ExactPoly, space: &SpaceModel) -> Result<QI, SpaceError> {
    space.check_fits(f)?;
    space.check_fits(g)?;
    let w = space.exact_weights().ok_or(SpaceError::NoExactWeights)?;
    let mut s = QI::new(BigRational::from_integer(0.into()), BigRational::from_integer(0.into()));
    for (k, c) in f.terms() {
        let d = g.coeff(k);
        if !num::Zero::is_zero(&d) {
            let wk = &w[space.index[k]];
            s += c.clone() * d.conjugate() * QI::new(wk.clone(), BigRational::from_integer(0.into()));
        }
    }
    Ok(s)
}

/// `sum_{|k| <= K} z^k conj(w)^k / w(k)` for the ball Bergman space.
pub fn kernel_partial_sum(space: &SpaceModel, z: &[C64], w: &[C64], max_degree: usize) -> Result<C64, SpaceError> {
    if !matches!(space.kind, SpaceKind::A2Ball) {
        return Err(SpaceError::Unsupported(format!(
            "kernel partial sums need A2_BALL, got {}",
            space.kind.name()
        )));
    }
    if max_degree > space.degree {
        return Err(SpaceError::DegreeExceedsTruncation { degree: max_degree as u32, max: space.degree });
    }
    if z.len() != space.n || w.len() != space.n {
        return Err(crate::error::PolyError::DimensionMismatch { left: z.len().max(w.len()), right: space.n }.into());
    }
    for p in [z, w] {
        let r2: f64 = p.iter().map(|c| c.norm_sqr()).sum();
        if r2 >= 1.0 {
            return Err(SpaceError::OutsideBall(r2));
        }
    }
    let mut s = C64::new(0.0, 0.0);
    for (k, wk) in space.monomials.iter().zip(&space.weights) {
        if k.degree() as usize > max_degree {
            break;
        }
        let term: C64 = k
            .exponents()
            .iter()
            .zip(z.iter().zip(w))
            .map(|(&e, (a, b))| (a * b.conj()).powu(e))
            .product();
        s += term / *wk;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    fn mi(e: &[u32]) -> MultiIndex {
        MultiIndex::new(e.to_vec())
    }

    #[test]
    fn polydisk_weights_are_one() {
        let s = make_space(SpaceKind::H2Polydisk, 2, 3).unwrap();
        assert_eq!(s.dim(), 10);
        assert!(s.weights().iter().all(|&w| w == 1.0));
        assert_eq!(s.degree_range(2), 3..6);
    }

    #[test]
    fn disk_alpha_weights() {
        let s = make_space(SpaceKind::A2DiskAlpha { alpha: 0.0 }, 1, 4).unwrap();
        assert!((s.weight(&mi(&[1])).unwrap() - 0.5).abs() < 1e-14);
        let e = s.exact_weights().unwrap();
        assert_eq!(e[1], rational(1, 2));
        let s = make_space(SpaceKind::A2DiskAlpha { alpha: 2.0 }, 1, 4).unwrap();
        assert_eq!(s.exact_weights().unwrap()[3], rational(12, 720));
        assert!(make_space(SpaceKind::A2DiskAlpha { alpha: 0.5 }, 1, 4).unwrap().exact_weights().is_none());
    }

    #[test]
    fn bergman_kernel_at_origin() {
        let s = make_space(SpaceKind::A2Ball, 1, 3).unwrap();
        let z = [C64::new(0.0, 0.0)];
        let k = kernel_partial_sum(&s, &z, &z, 3).unwrap();
        assert!((k.re - 1.0 / PI).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(make_space(SpaceKind::A2DiskAlpha { alpha: 1.0 }, 2, 3).is_err());
        assert!(make_space(SpaceKind::H2Polyball { blocks: vec![1, 2] }, 2, 3).is_err());
        assert!(MomentTable::new(vec![1.0, 0.1, 1.0, 0.0]).is_err());
        assert!(MomentTable::new(vec![1.0, 0.9, 0.1]).is_err());
    }

    #[test]
    fn radial_density_moments() {
        let t = MomentTable::from_density(|_| 1.0, 4).unwrap();
        for (m, v) in t.moments.iter().enumerate() {
            assert!((v - 1.0 / (m as f64 + 1.0)).abs() < 1e-13);
        }
    }
}
