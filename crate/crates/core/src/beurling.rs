//! Float implementation of the invariance criterion: invariance under `R1`,
//! R1-inner subspaces and decompositions, the full projection property, the
//! minimum value index, the combined verdict and the constructive
//! reconstruction of `r h` from homogeneous pieces.
//!
//! `R1` is swept through monomials `z^r` with `|r| >= 1`; by linearity this
//! covers all of `R1` acting on the truncated module. All quantifiers over
//! `h in W_k` and `g in V` are handled jointly by linear algebra, so verdicts
//! do not depend on the chosen bases.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::CheckError;
use crate::linalg::{self, Mat, Vector};
use crate::poly::{FloatPoly, MultiIndex, OrderValue, TermRecord};
use crate::scalar::C64;
use crate::subspace::{decompose_element, series_and_decomposition, Ambient, Decomposition, Subspace};
use crate::Tolerances;

/// Maximum number of witnesses kept per check.
pub const MAX_WITNESSES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    /// The condition fails only through products that leave degree `<= D`.
    TruncationLimited,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::TruncationLimited => "TRUNCATION_LIMITED",
        })
    }
}

/// A failing instance `(r, h, m)` with its residual.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    /// Exponent of the monomial `r = z^r`.
    pub r: Vec<u32>,
    pub h: Vec<TermRecord>,
    /// Order `k` of the component holding `h`, when it matters.
    pub k: Option<usize>,
    pub m: Option<usize>,
    pub residual: Vec<TermRecord>,
    pub residual_norm: f64,
}

impl Witness {
    pub fn h_poly(&self, n: usize) -> FloatPoly {
        FloatPoly::from_records(&self.h, n).expect("witness records are well formed")
    }

    pub fn residual_poly(&self, n: usize) -> FloatPoly {
        FloatPoly::from_records(&self.residual, n).expect("witness records are well formed")
    }
}

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub verdict: Verdict,
    /// The condition holds in the truncated module.
    pub holds: bool,
    /// Largest relative residual seen over the sweep.
    pub max_residual: f64,
    /// Some product had terms above degree `D` that were dropped.
    pub truncation_touched: bool,
    /// Number of `(k, r, m)` (or `(h, r)`) cases examined.
    pub cases: usize,
    pub witnesses: Vec<Witness>,
}

impl CheckOutcome {
    fn new() -> Self {
        CheckOutcome {
            verdict: Verdict::Pass,
            holds: true,
            max_residual: 0.0,
            truncation_touched: false,
            cases: 0,
            witnesses: Vec::new(),
        }
    }

    fn record(&mut self, residual: f64, tol: f64, witness: impl FnOnce() -> Witness) {
        self.cases += 1;
        self.max_residual = self.max_residual.max(residual);
        if residual > tol {
            self.holds = false;
            self.verdict = Verdict::Fail;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness());
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Float,
    Exact,
}

/// The three verdicts together with the biconditional check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub mode: Mode,
    pub dim: usize,
    pub component_dims: Vec<usize>,
    pub invariant: CheckOutcome,
    pub r1_inner: CheckOutcome,
    pub full_projection: CheckOutcome,
    /// `invariant <=> (r1_inner and full_projection)` on the `holds` flags.
    pub consistent: bool,
    pub inconsistency: Option<String>,
}

impl CheckReport {
    pub(crate) fn assemble(
        mode: Mode,
        dim: usize,
        component_dims: Vec<usize>,
        invariant: CheckOutcome,
        r1_inner: CheckOutcome,
        full_projection: CheckOutcome,
    ) -> Self {
        let rhs = r1_inner.holds && full_projection.holds;
        let consistent = invariant.holds == rhs;
        let inconsistency = (!consistent).then(|| {
            format!(
                "invariant = {} but r1_inner = {} and full_projection = {} (residuals {:e}, {:e}, {:e})",
                invariant.holds,
                r1_inner.holds,
                full_projection.holds,
                invariant.max_residual,
                r1_inner.max_residual,
                full_projection.max_residual
            )
        });
        CheckReport { mode, dim, component_dims, invariant, r1_inner, full_projection, consistent, inconsistency }
    }

    pub fn verdicts(&self) -> (Verdict, Verdict, Verdict) {
        (self.invariant.verdict, self.r1_inner.verdict, self.full_projection.verdict)
    }

    pub fn holds(&self) -> (bool, bool, bool) {
        (self.invariant.holds, self.r1_inner.holds, self.full_projection.holds)
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts() == (Verdict::Pass, Verdict::Pass, Verdict::Pass)
    }
}

fn vec_poly(a: &Ambient, v: &Vector, tol: &Tolerances) -> Vec<TermRecord> {
    a.to_poly(v, tol.prune).to_records()
}

fn unit_vector(mut v: Vector) -> Vector {
    let n = v.norm();
    if n > 0.0 {
        v /= C64::new(n, 0.0);
    }
    linalg::normalize_phase(&mut v);
    v
}

/// Top right singular direction of `m` (unit vector, phase normalized).
fn top_direction(m: &Mat) -> Vector {
    let (_, v) = linalg::svd_right(m);
    let mut c: Vector = v.column(0).into_owned();
    linalg::normalize_phase(&mut c);
    c
}

fn ratio(num: f64, den: f64) -> f64 {
    if num == 0.0 {
        0.0
    } else if den <= f64::MIN_POSITIVE {
        f64::INFINITY
    } else {
        num / den
    }
}

/// All monomials `z^r` with `1 <= |r| <= max_degree`.
pub fn r1_monomials(n: usize, max_degree: usize) -> Vec<MultiIndex> {
    (1..=max_degree as u32).flat_map(|d| MultiIndex::of_degree(n, d)).collect()
}

/// Invariance `R1 V ⊆ V` in the truncated module.
///
/// Two tests are run: the module test `trunc(z_i v) in V` for all `v in V`,
/// and the low-part test `z_i v in V` for `v in V` of degree `<= D - 1`,
/// where no truncation happens. The verdict is FAIL when the low-part test
/// fails, PASS when both pass, TRUNCATION_LIMITED otherwise. `holds` is the
/// module test. Witnesses come from literal basis elements of degree
/// `<= D - 1` when possible.
pub fn is_invariant(v: &Subspace, tol: &Tolerances) -> CheckOutcome {
    let a = v.ambient();
    let n = a.n();
    let d = a.degree();
    let q = v.basis_matrix();
    let mut out = CheckOutcome::new();

    let mut shifted = Vec::with_capacity(n);
    for i in 0..n {
        let (s, touched) = a.shift(&MultiIndex::unit(n, i), q);
        out.truncation_touched |= touched;
        shifted.push(s);
    }
    let residual_of = |z: &Mat| -> Mat { z - q * (q.adjoint() * z) };

    // literal witnesses on basis elements that need no truncation
    let top = linalg::rows(q, a.layer(d));
    for j in 0..q.ncols() {
        if top.column(j).iter().any(|c| c.norm() > tol.rank) {
            continue;
        }
        for (i, s) in shifted.iter().enumerate() {
            let z: Vector = s.column(j).into_owned();
            let res = &z - q * (q.adjoint() * &z);
            let rel = ratio(res.norm(), z.norm());
            if rel > tol.membership && out.witnesses.len() < MAX_WITNESSES {
                out.witnesses.push(Witness {
                    r: MultiIndex::unit(n, i).exponents().to_vec(),
                    h: vec_poly(a, &q.column(j).into_owned(), tol),
                    k: None,
                    m: None,
                    residual: vec_poly(a, &res, tol),
                    residual_norm: res.norm(),
                });
            }
        }
    }

    // module test
    let refs: Vec<&Mat> = shifted.iter().collect();
    let z_all = linalg::hstack(&refs, a.dim());
    let res_all = residual_of(&z_all);
    let module_residual = ratio(linalg::sigma_max(&res_all), linalg::sigma_max(&z_all));

    // low-part test on V ∩ P_{<= D-1}
    let (_, null, _) = linalg::split_right(&top, tol.rank, 1.0);
    let low_basis = q * null;
    let mut low_parts = Vec::new();
    for i in 0..n {
        low_parts.push(a.shift(&MultiIndex::unit(n, i), &low_basis).0);
    }
    let refs: Vec<&Mat> = low_parts.iter().collect();
    let z_low = linalg::hstack(&refs, a.dim());
    let res_low = residual_of(&z_low);
    let low_residual = ratio(linalg::sigma_max(&res_low), linalg::sigma_max(&z_low));

    out.cases = n * q.ncols();
    out.max_residual = module_residual.max(low_residual);
    let module_ok = module_residual <= tol.membership;
    let low_ok = low_residual <= tol.membership;
    out.holds = module_ok;
    out.verdict = if !low_ok {
        Verdict::Fail
    } else if module_ok {
        Verdict::Pass
    } else {
        Verdict::TruncationLimited
    };
    if out.verdict != Verdict::Pass && out.witnesses.is_empty() {
        let (zm, rm, basis) = if !low_ok { (&z_low, &res_low, &low_basis) } else { (&z_all, &res_all, q) };
        let c = top_direction(rm);
        let cols = basis.ncols();
        let (i, j) = {
            // locate the dominant (coordinate, element) block of c
            let mut best = (0, 0.0);
            for blk in 0..n {
                let s: f64 = (0..cols).map(|t| c[blk * cols + t].norm_sqr()).sum();
                if s > best.1 {
                    best = (blk, s);
                }
            }
            (best.0, best.0 * cols)
        };
        let coeffs: Vector = c.rows(j, cols).into_owned();
        let h = unit_vector(basis * &coeffs);
        let z = zm.columns(j, cols) * &coeffs;
        let res = &z - q * (q.adjoint() * &z);
        out.witnesses.push(Witness {
            r: MultiIndex::unit(n, i).exponents().to_vec(),
            h: vec_poly(a, &h, tol),
            k: None,
            m: None,
            residual: vec_poly(a, &res, tol),
            residual_norm: res.norm(),
        });
    }
    if out.verdict == Verdict::Pass {
        out.witnesses.clear();
    }
    out
}

/// `R1 · W ⊥ W`: `|<z^r h, g>| <= tau` for orthonormal basis elements and
/// all `1 <= |r| <= D`. Only coefficients of degree `<= D` enter the inner
/// products, so truncation does not affect the result.
pub fn is_r1_inner_subspace(w: &Subspace, tol: &Tolerances) -> CheckOutcome {
    let a = w.ambient();
    let q = w.basis_matrix();
    let mut out = CheckOutcome::new();
    if q.ncols() == 0 {
        return out;
    }
    for r in r1_monomials(a.n(), a.degree()) {
        let (s, touched) = a.shift(&r, q);
        out.truncation_touched |= touched;
        let g = q.adjoint() * &s;
        let residual = linalg::sigma_max(&g);
        out.record(residual, tol.membership, || {
            let c = top_direction(&g);
            let h = q * &c;
            let res = q * (&g * &c);
            Witness {
                r: r.exponents().to_vec(),
                h: vec_poly(a, &h, tol),
                k: None,
                m: None,
                residual: vec_poly(a, &res, tol),
                residual_norm: res.norm(),
            }
        });
    }
    out
}

/// Per-subspace data shared by the decomposition checks.
struct Context<'a> {
    a: &'a Arc<Ambient>,
    /// `U_m` bases, `m = 0..=D`.
    prefix: Vec<Mat>,
}

impl<'a> Context<'a> {
    fn new(a: &'a Arc<Ambient>, dec: &'a Decomposition) -> Self {
        let d = a.degree();
        let prefix = (0..=d as isize).map(|m| dec.prefix_basis(m)).collect();
        Context { a, prefix }
    }

    fn u(&self, m: isize) -> Mat {
        if m < 0 {
            Mat::zeros(self.a.dim(), 0)
        } else {
            self.prefix[m as usize].clone()
        }
    }

    fn low_rows(&self, m: isize) -> std::ops::Range<usize> {
        if m < 0 {
            0..0
        } else {
            self.a.low(m as usize)
        }
    }

    /// Trigger directions: coefficient vectors `c` for which some
    /// `u in U_mm` matches `X c` on all rows of degree `<= mm`, together with
    /// the matching `U_mm` coefficients.
    fn trigger(&self, x: &Mat, mm: isize, tol: &Tolerances) -> (Mat, Mat) {
        let rows = self.low_rows(mm);
        let u = self.u(mm);
        let low_x = linalg::rows(x, rows.clone());
        let low_u = linalg::rows(&u, rows);
        let y = linalg::range_basis(&low_u, tol.rank, 1.0);
        let r = &low_x - &y * (y.adjoint() * &low_x);
        let scale = linalg::sigma_max(x);
        let (sigmas, v) = linalg::svd_right(&r);
        let t = tol.trigger * sigmas.first().copied().unwrap_or(0.0).max(scale);
        let rank = sigmas.iter().filter(|&&s| s > t).count();
        let c = v.columns(rank, v.ncols() - rank).into_owned();
        let coeffs = linalg::pinv_solve(&low_u, &(&low_x * &c), tol.rank, 1.0);
        (c, coeffs)
    }
}

/// Look-ahead condition: for `h in W_k`, `r in R1`, `g in V` with
/// `ord(r h - g) > m`, `r h - g ⊥ W_m`.
///
/// Writing `g = u + v` with `u in U_m = W_0 ⊕ ... ⊕ W_m` and `v in V_{m+1}`,
/// the trigger fixes `u` uniquely and the condition reads
/// `P_{W_m}(r h) = u_m`, the `W_m` part of `u`.
pub fn is_r1_inner_decomposition(v: &Subspace, dec: &Decomposition, tol: &Tolerances) -> Result<CheckOutcome, CheckError> {
    check_decomposition(v, dec)?;
    let a = v.ambient();
    let ctx = Context::new(a, dec);
    let d = a.degree();
    let mut out = CheckOutcome::new();
    for (k, wk) in dec.components.iter().enumerate() {
        if wk.dim() == 0 {
            continue;
        }
        for r in r1_monomials(a.n(), d - k) {
            let (x, touched) = a.shift(&r, wk.basis_matrix());
            out.truncation_touched |= touched;
            for m in 0..=d {
                let wm = dec.components[m].basis_matrix();
                if wm.ncols() == 0 {
                    out.cases += 1;
                    continue;
                }
                let (c, coeffs) = ctx.trigger(&x, m as isize, tol);
                if c.ncols() == 0 {
                    out.cases += 1;
                    continue;
                }
                let xc = &x * &c;
                let um = ctx.u(m as isize);
                let off = um.ncols() - wm.ncols();
                let am = coeffs.rows(off, wm.ncols()).into_owned();
                let e = wm.adjoint() * &xc - &am;
                let scale = linalg::sigma_max(&xc).max(linalg::sigma_max(&coeffs));
                let residual = ratio(linalg::sigma_max(&e), scale);
                out.record(residual, tol.membership, || {
                    let dir = top_direction(&e);
                    let h = wk.basis_matrix() * (&c * &dir);
                    let res = wm * (&e * &dir);
                    Witness {
                        r: r.exponents().to_vec(),
                        h: vec_poly(a, &h, tol),
                        k: Some(k),
                        m: Some(m),
                        residual: vec_poly(a, &res, tol),
                        residual_norm: res.norm(),
                    }
                });
            }
        }
    }
    Ok(out)
}

/// Full projection property: for `h in W_k`, `r in R1`, `g in V` with
/// `ord(r h - g) >= m`, `P_m^H(r h - g) in P_m^H(W_m)`.
///
/// The trigger fixes the `U_{m-1}` part `u'` of `g`; the `V_m` part only
/// moves `P_m^H(r h - g)` inside `P_m^H(W_m)`, so it suffices to test
/// `P_m^H(r h - u')`.
pub fn has_full_projection(v: &Subspace, dec: &Decomposition, tol: &Tolerances) -> Result<CheckOutcome, CheckError> {
    check_decomposition(v, dec)?;
    let a = v.ambient();
    let ctx = Context::new(a, dec);
    let d = a.degree();
    let layer_bases: Vec<Mat> = dec
        .components
        .iter()
        .enumerate()
        .map(|(m, w)| linalg::range_basis(&linalg::rows(w.basis_matrix(), a.layer(m)), tol.rank, 1.0))
        .collect();
    let mut out = CheckOutcome::new();
    for (k, wk) in dec.components.iter().enumerate() {
        if wk.dim() == 0 {
            continue;
        }
        for r in r1_monomials(a.n(), d - k) {
            let (x, touched) = a.shift(&r, wk.basis_matrix());
            out.truncation_touched |= touched;
            for m in 0..=d {
                let (c, coeffs) = ctx.trigger(&x, m as isize - 1, tol);
                if c.ncols() == 0 {
                    out.cases += 1;
                    continue;
                }
                let xc = &x * &c;
                let u = ctx.u(m as isize - 1) * &coeffs;
                let layer = a.layer(m);
                let t = linalg::rows(&(&xc - &u), layer.clone());
                let z = &layer_bases[m];
                let f = &t - z * (z.adjoint() * &t);
                let scale = linalg::sigma_max(&xc).max(linalg::sigma_max(&u));
                let residual = ratio(linalg::sigma_max(&f), scale);
                out.record(residual, tol.membership, || {
                    let dir = top_direction(&f);
                    let h = wk.basis_matrix() * (&c * &dir);
                    let mut res = Vector::zeros(a.dim());
                    res.rows_mut(layer.start, layer.len()).copy_from(&(&f * &dir));
                    Witness {
                        r: r.exponents().to_vec(),
                        h: vec_poly(a, &h, tol),
                        k: Some(k),
                        m: Some(m),
                        residual: vec_poly(a, &res, tol),
                        residual_norm: res.norm(),
                    }
                });
            }
        }
    }
    Ok(out)
}

fn check_decomposition(v: &Subspace, dec: &Decomposition) -> Result<(), CheckError> {
    let d = v.ambient().degree();
    if dec.components.len() != d + 1 || dec.total_dim() != v.dim() {
        return Err(crate::error::SubspaceError::InconsistentDecomposition(format!(
            "{} components with total dimension {}, expected {} components and dimension {}",
            dec.components.len(),
            dec.total_dim(),
            d + 1,
            v.dim()
        ))
        .into());
    }
    Ok(())
}

/// Least `k` with `||P_{W_k} h|| > tau ||h||`; errors if it differs from
/// `ord(h)`, which the minimum value theorem rules out.
pub fn minimum_value_index(
    h: &FloatPoly,
    v: &Subspace,
    dec: &Decomposition,
    tol: &Tolerances,
) -> Result<OrderValue, CheckError> {
    let parts = decompose_element(h, v, dec, tol)?;
    let a = v.ambient();
    let norm = a.to_vector(h)?.norm();
    let mut index = OrderValue::Infinity;
    for (k, p) in parts.iter().enumerate() {
        if a.to_vector(p)?.norm() > tol.membership * norm {
            index = OrderValue::Finite(k as u32);
            break;
        }
    }
    let mut pruned = h.clone();
    pruned.prune(tol.prune, h.max_modulus());
    let ord = pruned.ord();
    if index != ord {
        return Err(CheckError::Integrity(format!("minimum value index {index} differs from ord(h) = {ord}")));
    }
    Ok(index)
}

/// Runs the three checks and the biconditional.
pub fn beurling_verdict(v: &Subspace, tol: &Tolerances) -> Result<CheckReport, CheckError> {
    let (_, dec) = series_and_decomposition(v, tol);
    beurling_verdict_with(v, &dec, tol)
}

pub fn beurling_verdict_with(v: &Subspace, dec: &Decomposition, tol: &Tolerances) -> Result<CheckReport, CheckError> {
    let invariant = is_invariant(v, tol);
    let r1 = is_r1_inner_decomposition(v, dec, tol)?;
    let fp = has_full_projection(v, dec, tol)?;
    Ok(CheckReport::assemble(Mode::Float, v.dim(), dec.dims(), invariant, r1, fp))
}

/// One step `m` of the reconstruction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReconstructionStep {
    pub m: usize,
    pub g_norm: f64,
    /// `||f_m||^2 = ||g_0||^2 + ... + ||g_m||^2`.
    pub partial_norm_sq: f64,
    /// Largest coefficient norm of `r h - f_m` in degrees `<= m`, relative to `||r h||`.
    pub low_residual: f64,
    /// Smallest singular value of `L_{W_m}` (infinite when `W_m = {0}`).
    pub sigma_min: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Reconstruction {
    pub r: Vec<u32>,
    pub k: usize,
    pub rh_norm: f64,
    pub components: Vec<Vec<TermRecord>>,
    pub steps: Vec<ReconstructionStep>,
    /// `||r h - f_D|| / ||r h||`.
    pub final_residual: f64,
    pub bessel_holds: bool,
    pub truncation_touched: bool,
}

/// Rebuilds `r h` as `g_0 + g_1 + ... + g_D` with `g_m in W_m`, each `g_m`
/// the preimage under `L_{W_m}` of the degree-`m` part of `r h - f_{m-1}`.
///
/// Requires `V` invariant, `h` in a single `W_k`, and `1 <= |r| <= D - k`.
pub fn beurling_reconstruct(
    v: &Subspace,
    dec: &Decomposition,
    r: &MultiIndex,
    h: &FloatPoly,
    tol: &Tolerances,
) -> Result<Reconstruction, CheckError> {
    check_decomposition(v, dec)?;
    let a = v.ambient();
    let d = a.degree();
    if r.degree() == 0 {
        return Err(CheckError::Precondition("r must vanish at the origin".into()));
    }
    if !is_invariant(v, tol).holds {
        return Err(CheckError::Precondition("V is not R1 invariant".into()));
    }
    let x = a.to_vector(h)?;
    let hn = x.norm();
    let k = dec
        .components
        .iter()
        .position(|w| w.dim() > 0 && (&x - w.project_vec(&x)).norm() <= tol.membership * hn.max(f64::MIN_POSITIVE))
        .ok_or_else(|| CheckError::Precondition("h is not in a single homogeneous component".into()))?;
    if r.degree() as usize + k > d {
        return Err(CheckError::Precondition(format!("|r| + k = {} exceeds D = {d}", r.degree() as usize + k)));
    }
    let xm = Mat::from_column_slice(a.dim(), 1, x.as_slice());
    let (rh, touched) = a.shift(r, &xm);
    let rh: Vector = rh.column(0).into_owned();
    let rh_norm = rh.norm();
    let mut f = Vector::zeros(a.dim());
    let mut steps = Vec::with_capacity(d + 1);
    let mut components = Vec::with_capacity(d + 1);
    let mut partial = 0.0;
    for m in 0..=d {
        let layer = a.layer(m);
        let target: Vector = (&rh - &f).rows(layer.start, layer.len()).into_owned();
        let wm = dec.components[m].basis_matrix();
        let (g, sigma_min) = if wm.ncols() == 0 {
            if target.norm() > tol.reconstruct * rh_norm {
                return Err(CheckError::ReconstructionStep {
                    m,
                    reason: "W_m = {0} but the degree-m target is nonzero".into(),
                    residual: target.norm() / rh_norm,
                });
            }
            (Vector::zeros(a.dim()), f64::INFINITY)
        } else {
            let l = linalg::rows(wm, layer.clone());
            let (sigmas, _) = linalg::svd_right(&l);
            let smin = if l.nrows() < wm.ncols() { 0.0 } else { sigmas[wm.ncols() - 1] };
            if smin <= tol.rank {
                return Err(CheckError::ReconstructionStep {
                    m,
                    reason: format!("L_W is numerically singular (sigma_min = {smin:e})"),
                    residual: target.norm() / rh_norm,
                });
            }
            let t = Mat::from_column_slice(target.len(), 1, target.as_slice());
            let coeff = linalg::pinv_solve(&l, &t, tol.rank, 1.0);
            let g: Vector = (wm * coeff).column(0).into_owned();
            (g, smin)
        };
        f += &g;
        let g_norm = g.norm();
        partial += g_norm * g_norm;
        let low = a.low(m);
        let low_residual = ratio((&rh - &f).rows(0, low.end).norm(), rh_norm);
        if low_residual > tol.reconstruct {
            return Err(CheckError::ReconstructionStep {
                m,
                reason: "ord(r h - f_m) > m fails".into(),
                residual: low_residual,
            });
        }
        if partial > rh_norm * rh_norm * (1.0 + tol.reconstruct) {
            return Err(CheckError::ReconstructionStep {
                m,
                reason: "Bessel bound sum ||g_j||^2 <= ||r h||^2 fails".into(),
                residual: partial / (rh_norm * rh_norm) - 1.0,
            });
        }
        components.push(a.to_poly(&g, tol.prune).to_records());
        steps.push(ReconstructionStep { m, g_norm, partial_norm_sq: partial, low_residual, sigma_min });
    }
    let final_residual = ratio((&rh - &f).norm(), rh_norm);
    if final_residual > tol.reconstruct {
        return Err(CheckError::ReconstructionStep { m: d, reason: "final residual too large".into(), residual: final_residual });
    }
    Ok(Reconstruction {
        r: r.exponents().to_vec(),
        k,
        rh_norm,
        components,
        steps,
        final_residual,
        bessel_holds: true,
        truncation_touched: touched,
    })
}
