//! Exact-rational oracle for small instances (`n <= 2`, `D <= 4`).
//!
//! Subspaces are stored as spans of Gaussian-rational coefficient vectors
//! (no orthonormalization, so no square roots). Orthogonal complements are
//! Gram-matrix kernels in the weighted inner product, and every decision is a
//! rank test. Verdicts carry no tolerance.

pub mod exact;

use std::collections::HashMap;
use std::sync::Arc;

use num::{BigInt, BigRational, Integer, Zero};
use serde::{Deserialize, Serialize};

use crate::beurling::{self, r1_monomials, CheckOutcome, CheckReport, Mode, Verdict, Witness, MAX_WITNESSES};
use crate::error::{OracleError, SpaceError};
use crate::poly::{ExactPoly, FloatPoly, MultiIndex, OrderValue, Polynomial};
use crate::scalar::{Scalar, QI};
use crate::space::SpaceModel;
use crate::subspace::{orthonormalize, Ambient};
use crate::Tolerances;

use exact::{bareiss, combine, integral_row, is_zero_vec, nullspace, qzero, rank, solve, transpose, QMatrix};

/// Size bounds of the oracle.
pub const MAX_N: usize = 2;
pub const MAX_D: usize = 4;

/// Exact counterpart of [`Ambient`]: unscaled coefficient coordinates with
/// rational weights.
#[derive(Clone, Debug)]
pub struct ExactAmbient {
    n: usize,
    degree: usize,
    monomials: Vec<MultiIndex>,
    index: HashMap<MultiIndex, usize>,
    weights: Vec<BigRational>,
    layers: Vec<std::ops::Range<usize>>,
}

impl ExactAmbient {
    /// Enforces the oracle size bounds.
    pub fn new(space: &SpaceModel) -> Result<Self, OracleError> {
        if space.n() > MAX_N || space.degree() > MAX_D {
            return Err(OracleError::SizeBound(format!(
                "n = {}, D = {} (bounds n <= {MAX_N}, D <= {MAX_D})",
                space.n(),
                space.degree()
            )));
        }
        Self::unbounded(space)
    }

    /// No size bound; for exact computations on larger one-variable examples.
    pub fn unbounded(space: &SpaceModel) -> Result<Self, OracleError> {
        let weights = space.exact_weights().ok_or(SpaceError::NoExactWeights)?.to_vec();
        let monomials = space.monomials().to_vec();
        let index = monomials.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let layers = (0..=space.degree()).map(|d| space.degree_range(d)).collect();
        Ok(ExactAmbient { n: space.n(), degree: space.degree(), monomials, index, weights, layers })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn layer(&self, d: usize) -> std::ops::Range<usize> {
        self.layers[d].clone()
    }

    /// Indices of degree `<= m`; empty for `m < 0`.
    pub fn low(&self, m: isize) -> std::ops::Range<usize> {
        if m < 0 {
            0..0
        } else {
            0..self.layers[m as usize].end
        }
    }

    pub fn to_vec(&self, p: &ExactPoly) -> Result<Vec<QI>, SpaceError> {
        if p.dim() != self.n {
            return Err(crate::error::PolyError::DimensionMismatch { left: p.dim(), right: self.n }.into());
        }
        let mut v = vec![qzero(); self.dim()];
        for (k, c) in p.terms() {
            let i = *self
                .index
                .get(k)
                .ok_or(SpaceError::DegreeExceedsTruncation { degree: k.degree(), max: self.degree })?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn to_poly(&self, v: &[QI]) -> ExactPoly {
        Polynomial::from_terms(self.n, self.monomials.iter().cloned().zip(v.iter().cloned()))
            .expect("ambient indices have length n")
    }

    /// `sum_k x_k conj(y_k) w(k)`.
    pub fn inner(&self, x: &[QI], y: &[QI]) -> QI {
        let mut s = qzero();
        for ((a, b), w) in x.iter().zip(y).zip(&self.weights) {
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let p = a.clone() * b.conjugate();
            s += QI::new(p.re * w, p.im * w);
        }
        s
    }

    /// `trunc_D(z^r v)` and whether a nonzero coefficient was dropped.
    pub fn shift(&self, r: &MultiIndex, v: &[QI]) -> (Vec<QI>, bool) {
        let mut out = vec![qzero(); self.dim()];
        let mut touched = false;
        for (i, k) in self.monomials.iter().enumerate() {
            if v[i].is_zero() {
                continue;
            }
            match self.index.get(&k.plus(r)) {
                Some(&t) => out[t] = v[i].clone(),
                None => touched = true,
            }
        }
        (out, touched)
    }

    fn gram(&self, a: &[Vec<QI>], b: &[Vec<QI>]) -> QMatrix {
        // entry (j, i) = <a_i, b_j>
        b.iter().map(|bj| a.iter().map(|ai| self.inner(ai, bj)).collect()).collect()
    }

    /// Orthogonal projection of `t` onto `span(vectors)` (independent vectors).
    pub fn project(&self, vectors: &[Vec<QI>], t: &[QI]) -> Vec<QI> {
        if vectors.is_empty() {
            return vec![qzero(); t.len()];
        }
        let g = self.gram(vectors, vectors);
        let rhs: QMatrix = vectors.iter().map(|b| vec![self.inner(t, b)]).collect();
        let a = solve(&g, &rhs, 1).expect("independent vectors have an invertible Gram matrix");
        let coeffs: Vec<QI> = a.into_iter().map(|r| r[0].clone()).collect();
        combine(vectors, &coeffs, t.len())
    }

    fn float_norm(&self, v: &[QI]) -> f64 {
        crate::scalar::rational_to_f64(&self.inner(v, v).re).max(0.0).sqrt()
    }
}

/// Divides a vector by the content of its Gaussian-integer scaling, keeping
/// entries small.
fn primitive(v: &[QI]) -> Vec<QI> {
    let row = integral_row(v);
    let mut g = BigInt::zero();
    for z in &row {
        g = g.gcd(&z.re).gcd(&z.im);
    }
    if g.is_zero() {
        return v.to_vec();
    }
    row.into_iter()
        .map(|z| QI::new(BigRational::new(z.re, g.clone()), BigRational::new(z.im, g.clone())))
        .collect()
}

/// Subspace given by independent spanning vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactSubspace {
    pub basis: Vec<Vec<QI>>,
}

impl ExactSubspace {
    /// Span of generators truncated to degree `D` is not applied here:
    /// generators must already fit.
    pub fn span(amb: &ExactAmbient, gens: &[ExactPoly]) -> Result<Self, SpaceError> {
        let rows = gens.iter().map(|g| amb.to_vec(g)).collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_vectors(&rows, amb.dim()))
    }

    pub fn from_vectors(rows: &[Vec<QI>], len: usize) -> Self {
        let e = bareiss(rows, len);
        let basis = e
            .rows
            .iter()
            .map(|r| {
                primitive(&r.iter().map(|z| QI::new(BigRational::from_integer(z.re.clone()), BigRational::from_integer(z.im.clone()))).collect::<Vec<_>>())
            })
            .collect();
        ExactSubspace { basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[QI]) -> bool {
        if is_zero_vec(v) {
            return true;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rank(&rows, v.len()) == self.dim()
    }

    pub fn contains_all(&self, vs: &[Vec<QI>], len: usize) -> bool {
        let mut rows = self.basis.clone();
        rows.extend(vs.iter().cloned());
        rank(&rows, len) == self.dim()
    }
}

/// Exact series `V_0 ⊇ ... ⊇ V_{D+1}` and components `W_0..W_D`.
#[derive(Clone, Debug)]
pub struct ExactDecomposition {
    pub levels: Vec<ExactSubspace>,
    pub components: Vec<ExactSubspace>,
}

impl ExactDecomposition {
    pub fn dims(&self) -> Vec<usize> {
        self.components.iter().map(ExactSubspace::dim).collect()
    }
}

pub fn exact_decomposition(amb: &ExactAmbient, v: &ExactSubspace) -> ExactDecomposition {
    let mut levels = vec![v.clone()];
    let mut components = Vec::new();
    let mut q = v.basis.clone();
    for k in 0..=amb.degree {
        let layer = amb.layer(k);
        let m: QMatrix = layer.clone().map(|i| q.iter().map(|col| col[i].clone()).collect()).collect();
        let null = nullspace(&m, q.len());
        let next: Vec<Vec<QI>> = null.iter().map(|c| primitive(&combine(&q, c, amb.dim()))).collect();
        let w = if next.is_empty() {
            q.clone()
        } else {
            let g = amb.gram(&q, &next);
            nullspace(&g, q.len()).iter().map(|c| primitive(&combine(&q, c, amb.dim()))).collect()
        };
        components.push(ExactSubspace { basis: w });
        levels.push(ExactSubspace { basis: next.clone() });
        q = next;
    }
    ExactDecomposition { levels, components }
}

fn exact_records(amb: &ExactAmbient, v: &[QI]) -> Vec<crate::poly::TermRecord> {
    amb.to_poly(v).to_records()
}

fn fail(out: &mut CheckOutcome, norm: f64, witness: impl FnOnce() -> Witness) {
    out.holds = false;
    out.verdict = Verdict::Fail;
    out.max_residual = out.max_residual.max(norm);
    if out.witnesses.len() < MAX_WITNESSES {
        out.witnesses.push(witness());
    }
}

fn empty_outcome() -> CheckOutcome {
    CheckOutcome {
        verdict: Verdict::Pass,
        holds: true,
        max_residual: 0.0,
        truncation_touched: false,
        cases: 0,
        witnesses: Vec::new(),
    }
}

/// Exact invariance with the same three-valued semantics as
/// [`beurling::is_invariant`].
pub fn exact_invariant(amb: &ExactAmbient, v: &ExactSubspace) -> CheckOutcome {
    let n = amb.n;
    let len = amb.dim();
    let top = amb.layer(amb.degree);
    let mut out = empty_outcome();

    let mut shifted = Vec::new();
    for q in &v.basis {
        for i in 0..n {
            let (s, t) = amb.shift(&MultiIndex::unit(n, i), q);
            out.truncation_touched |= t;
            shifted.push(s);
        }
    }
    out.cases = shifted.len();
    let module_ok = v.contains_all(&shifted, len);

    let m: QMatrix = top.clone().map(|i| v.basis.iter().map(|b| b[i].clone()).collect()).collect();
    let low: Vec<Vec<QI>> = nullspace(&m, v.dim()).iter().map(|c| combine(&v.basis, c, len)).collect();
    let low_shifted: Vec<Vec<QI>> = low
        .iter()
        .flat_map(|l| (0..n).map(move |i| (l, i)))
        .map(|(l, i)| amb.shift(&MultiIndex::unit(n, i), l).0)
        .collect();
    let low_ok = v.contains_all(&low_shifted, len);

    out.holds = module_ok;
    out.verdict = if !low_ok {
        Verdict::Fail
    } else if module_ok {
        Verdict::Pass
    } else {
        Verdict::TruncationLimited
    };
    if out.verdict == Verdict::Pass {
        return out;
    }
    let push = |out: &mut CheckOutcome, h: &[QI], i: usize, s: &[QI]| {
        let res: Vec<QI> = s.iter().zip(amb.project(&v.basis, s)).map(|(a, b)| a.clone() - b).collect();
        let norm = amb.float_norm(&res);
        out.max_residual = out.max_residual.max(norm);
        if out.witnesses.len() < MAX_WITNESSES {
            out.witnesses.push(Witness {
                r: MultiIndex::unit(n, i).exponents().to_vec(),
                h: exact_records(amb, h),
                k: None,
                m: None,
                residual: exact_records(amb, &res),
                residual_norm: norm,
            });
        }
    };
    for (j, q) in v.basis.iter().enumerate() {
        if !top.clone().all(|t| q[t].is_zero()) {
            continue;
        }
        for i in 0..n {
            let s = &shifted[j * n + i];
            if !v.contains(s) {
                push(&mut out, q, i, s);
            }
        }
    }
    if out.witnesses.is_empty() {
        let source: Vec<(&Vec<QI>, usize, Vec<QI>)> = if !low_ok {
            low.iter()
                .flat_map(|l| (0..n).map(move |i| (l, i)))
                .map(|(l, i)| (l, i, amb.shift(&MultiIndex::unit(n, i), l).0))
                .collect()
        } else {
            v.basis
                .iter()
                .flat_map(|q| (0..n).map(move |i| (q, i)))
                .map(|(q, i)| (q, i, amb.shift(&MultiIndex::unit(n, i), q).0))
                .collect()
        };
        if let Some((h, i, s)) = source.into_iter().find(|(_, _, s)| !v.contains(s)) {
            push(&mut out, h, i, &s);
        }
    }
    out
}

/// Per-`j` data for "some `u in U_j` matches `x` on degrees `<= j`".
struct Trigger {
    /// `U_j` basis, grouped by component.
    u: Vec<Vec<QI>>,
    rows: std::ops::Range<usize>,
    /// Left annihilator of `low(U_j)`.
    annihilator: QMatrix,
    /// Independent rows of `low(U_j)` and the inverse of that square block.
    selected: Vec<usize>,
    inverse: QMatrix,
}

impl Trigger {
    fn new(amb: &ExactAmbient, dec: &ExactDecomposition, j: isize) -> Self {
        let u: Vec<Vec<QI>> = if j < 0 {
            Vec::new()
        } else {
            dec.components[..=j as usize].iter().flat_map(|w| w.basis.iter().cloned()).collect()
        };
        let rows = amb.low(j);
        let low_u: QMatrix = rows.clone().map(|i| u.iter().map(|c| c[i].clone()).collect()).collect();
        let annihilator = nullspace(&transpose(&low_u, u.len()), rows.len());
        let selected = bareiss(&transpose(&low_u, u.len()), rows.len()).pivots;
        assert_eq!(selected.len(), u.len(), "low-degree coefficients are injective on U_j");
        let block: QMatrix = selected.iter().map(|&s| low_u[s].clone()).collect();
        let identity: QMatrix = (0..u.len())
            .map(|i| (0..u.len()).map(|l| if i == l { exact::qone() } else { qzero() }).collect())
            .collect();
        let inverse = if u.is_empty() { Vec::new() } else { solve(&block, &identity, u.len()).expect("invertible block") };
        Trigger { u, rows, annihilator, selected, inverse }
    }

    /// Basis of trigger coefficient vectors `c` for the columns `x`, each with
    /// the matching `U_j` coefficients.
    fn solve(&self, x: &[Vec<QI>]) -> Vec<(Vec<QI>, Vec<QI>)> {
        let low_x: QMatrix = self.rows.clone().map(|i| x.iter().map(|c| c[i].clone()).collect()).collect();
        let px = exact::matmul(&self.annihilator, &low_x, x.len());
        let cs = nullspace(&px, x.len());
        cs.into_iter()
            .map(|c| {
                let y: Vec<QI> = self.selected.iter().map(|&s| {
                    low_x[s].iter().zip(&c).fold(qzero(), |acc, (a, b)| if a.is_zero() || b.is_zero() { acc } else { acc + a.clone() * b.clone() })
                }).collect();
                let a: Vec<QI> = self
                    .inverse
                    .iter()
                    .map(|row| row.iter().zip(&y).fold(qzero(), |acc, (p, q)| if p.is_zero() || q.is_zero() { acc } else { acc + p.clone() * q.clone() }))
                    .collect();
                (c, a)
            })
            .collect()
    }
}

/// Exact look-ahead condition; see [`beurling::is_r1_inner_decomposition`].
pub fn exact_r1_inner(amb: &ExactAmbient, dec: &ExactDecomposition) -> CheckOutcome {
    let d = amb.degree;
    let len = amb.dim();
    let triggers: Vec<Trigger> = (0..=d as isize).map(|j| Trigger::new(amb, dec, j)).collect();
    let mut out = empty_outcome();
    for (k, wk) in dec.components.iter().enumerate() {
        if wk.dim() == 0 {
            continue;
        }
        for r in r1_monomials(amb.n, d - k) {
            let mut x = Vec::new();
            for w in &wk.basis {
                let (s, t) = amb.shift(&r, w);
                out.truncation_touched |= t;
                x.push(s);
            }
            for m in 0..=d {
                out.cases += 1;
                let wm = &dec.components[m].basis;
                if wm.is_empty() {
                    continue;
                }
                let trig = &triggers[m];
                let offset = trig.u.len() - wm.len();
                for (c, a) in trig.solve(&x) {
                    let xc = combine(&x, &c, len);
                    let um = combine(wm, &a[offset..], len);
                    let diff: Vec<QI> = xc.iter().zip(&um).map(|(p, q)| p.clone() - q.clone()).collect();
                    if wm.iter().all(|w| amb.inner(&diff, w).is_zero()) {
                        continue;
                    }
                    let res = amb.project(wm, &diff);
                    let norm = amb.float_norm(&res);
                    fail(&mut out, norm, || Witness {
                        r: r.exponents().to_vec(),
                        h: exact_records(amb, &combine(&wk.basis, &c, len)),
                        k: Some(k),
                        m: Some(m),
                        residual: exact_records(amb, &res),
                        residual_norm: norm,
                    });
                }
            }
        }
    }
    out
}

/// Exact full projection property; see [`beurling::has_full_projection`].
pub fn exact_full_projection(amb: &ExactAmbient, dec: &ExactDecomposition) -> CheckOutcome {
    let d = amb.degree;
    let len = amb.dim();
    let triggers: Vec<Trigger> = (-1..d as isize).map(|j| Trigger::new(amb, dec, j)).collect();
    let layer_parts: Vec<Vec<Vec<QI>>> = (0..=d)
        .map(|m| {
            let layer = amb.layer(m);
            let parts: Vec<Vec<QI>> = dec.components[m]
                .basis
                .iter()
                .map(|w| (0..len).map(|i| if layer.contains(&i) { w[i].clone() } else { qzero() }).collect())
                .collect();
            ExactSubspace::from_vectors(&parts, len).basis
        })
        .collect();
    let mut out = empty_outcome();
    for (k, wk) in dec.components.iter().enumerate() {
        if wk.dim() == 0 {
            continue;
        }
        for r in r1_monomials(amb.n, d - k) {
            let mut x = Vec::new();
            for w in &wk.basis {
                let (s, t) = amb.shift(&r, w);
                out.truncation_touched |= t;
                x.push(s);
            }
            for m in 0..=d {
                out.cases += 1;
                let trig = &triggers[m];
                let layer = amb.layer(m);
                let target_space = ExactSubspace { basis: layer_parts[m].clone() };
                for (c, a) in trig.solve(&x) {
                    let xc = combine(&x, &c, len);
                    let u = combine(&trig.u, &a, len);
                    let t: Vec<QI> = (0..len)
                        .map(|i| if layer.contains(&i) { xc[i].clone() - u[i].clone() } else { qzero() })
                        .collect();
                    if target_space.contains(&t) {
                        continue;
                    }
                    let proj = amb.project(&target_space.basis, &t);
                    let res: Vec<QI> = t.iter().zip(proj).map(|(p, q)| p.clone() - q).collect();
                    let norm = amb.float_norm(&res);
                    fail(&mut out, norm, || Witness {
                        r: r.exponents().to_vec(),
                        h: exact_records(amb, &combine(&wk.basis, &c, len)),
                        k: Some(k),
                        m: Some(m),
                        residual: exact_records(amb, &res),
                        residual_norm: norm,
                    });
                }
            }
        }
    }
    out
}

/// Exact verdicts for the span of `gens` in `space`.
pub fn oracle_verdicts(space: &SpaceModel, gens: &[ExactPoly]) -> Result<CheckReport, OracleError> {
    let amb = ExactAmbient::new(space)?;
    let v = ExactSubspace::span(&amb, gens)?;
    Ok(oracle_verdicts_for(&amb, &v))
}

pub fn oracle_verdicts_for(amb: &ExactAmbient, v: &ExactSubspace) -> CheckReport {
    let dec = exact_decomposition(amb, v);
    let inv = exact_invariant(amb, v);
    let r1 = exact_r1_inner(amb, &dec);
    let fp = exact_full_projection(amb, &dec);
    CheckReport::assemble(Mode::Exact, v.dim(), dec.dims(), inv, r1, fp)
}

/// `P_{W_k}(h)` for every `k`; errors when `h` is not in `V`.
pub fn exact_decompose_element(
    amb: &ExactAmbient,
    v: &ExactSubspace,
    dec: &ExactDecomposition,
    h: &ExactPoly,
) -> Result<Vec<ExactPoly>, OracleError> {
    let x = amb.to_vec(h)?;
    if !v.contains(&x) {
        return Err(crate::error::SubspaceError::NotInSubspace(f64::NAN).into());
    }
    Ok(dec.components.iter().map(|w| amb.to_poly(&amb.project(&w.basis, &x))).collect())
}

/// Exact minimum value index: the first `k` with `P_{W_k}(h) != 0`.
pub fn exact_minimum_value_index(
    amb: &ExactAmbient,
    v: &ExactSubspace,
    dec: &ExactDecomposition,
    h: &ExactPoly,
) -> Result<OrderValue, OracleError> {
    let parts = exact_decompose_element(amb, v, dec, h)?;
    Ok(parts
        .iter()
        .position(|p| !p.is_zero())
        .map(|k| OrderValue::Finite(k as u32))
        .unwrap_or(OrderValue::Infinity))
}

/// `M = V ⊖ span{ trunc(z_i v) }`, exactly.
pub fn exact_wandering_subspace(amb: &ExactAmbient, v: &ExactSubspace) -> ExactSubspace {
    let mut images = Vec::new();
    for q in &v.basis {
        for i in 0..amb.n {
            images.push(amb.shift(&MultiIndex::unit(amb.n, i), q).0);
        }
    }
    let g = amb.gram(&v.basis, &images);
    let null = nullspace(&g, v.dim());
    ExactSubspace { basis: null.iter().map(|c| primitive(&combine(&v.basis, c, amb.dim()))).collect() }
}

/// Result of the exhaustive monomial-subspace sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnumerationReport {
    pub n: usize,
    pub degree: usize,
    pub subsets: usize,
    pub invariant_subsets: usize,
    /// Subsets where float verdicts, exact verdicts and the up-set test all agree.
    pub agreements: usize,
    pub mismatches: Vec<String>,
}

/// `S` is closed under `k -> k + e_i` for every `k in S` of degree `<= D - 1`.
pub fn is_up_set(set: &[MultiIndex], degree: usize) -> bool {
    set.iter().filter(|k| (k.degree() as usize) < degree).all(|k| {
        (0..k.dim()).all(|i| {
            let next = k.plus(&MultiIndex::unit(k.dim(), i));
            set.contains(&next)
        })
    })
}

/// Every subset of the monomials of degree `<= D` (`n <= 2`, `D <= 3`):
/// compares the up-set test with float and exact verdicts.
pub fn enumerate_monomial_subspaces(n: usize, degree: usize, tol: &Tolerances) -> Result<EnumerationReport, OracleError> {
    if n > 2 || degree > 3 || n == 0 || degree == 0 {
        return Err(OracleError::SizeBound(format!("enumeration needs 1 <= n <= 2 and 1 <= D <= 3, got n = {n}, D = {degree}")));
    }
    let space = crate::space::make_space(crate::space::SpaceKind::H2Polydisk, n, degree)?;
    let ambient: Arc<Ambient> = Ambient::new(space.clone());
    let amb = ExactAmbient::new(&space)?;
    let monos = space.monomials().to_vec();
    let total = 1usize << monos.len();
    let mut report = EnumerationReport { n, degree, subsets: total, invariant_subsets: 0, agreements: 0, mismatches: Vec::new() };
    for mask in 0..total {
        let set: Vec<MultiIndex> = monos.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, k)| k.clone()).collect();
        let up = is_up_set(&set, degree);
        report.invariant_subsets += usize::from(up);
        let gens = crate::presets::monomial_span(&set);
        let fgens: Vec<FloatPoly> = gens.iter().map(ExactPoly::to_float).collect();
        let fv = orthonormalize(&fgens, &ambient, tol)?;
        let float = beurling::beurling_verdict(&fv, tol)?;
        let ev = ExactSubspace::span(&amb, &gens)?;
        let exact = oracle_verdicts_for(&amb, &ev);
        let ok = float.invariant.holds == up
            && exact.invariant.holds == up
            && float.consistent
            && exact.consistent
            && float.verdicts() == exact.verdicts();
        if ok {
            report.agreements += 1;
        } else {
            let names: Vec<String> = set.iter().map(|k| k.to_string()).collect();
            report.mismatches.push(format!(
                "{{{}}}: up-set {up}, float {:?}, exact {:?}",
                names.join(", "),
                float.verdicts(),
                exact.verdicts()
            ));
        }
    }
    Ok(report)
}
