//! Float subspace linear algebra in a truncated monomial-orthogonal space.
//!
//! Vectors are stored in weight-scaled coordinates `x~_k = sqrt(w(k)) x_k`,
//! where `x_k` is the coefficient of `z^k`. In these coordinates the space's
//! inner product is the Euclidean one, so orthonormal bases are plain unitary
//! columns and the orthogonal projection onto the degree-`m` layer `H_m` is a
//! row selection.

use std::sync::Arc;

use nalgebra::DMatrix;

use crate::error::{SpaceError, SubspaceError};
use crate::linalg::{self, Mat, Vector};
use crate::poly::{FloatPoly, MultiIndex, Polynomial};
use crate::scalar::C64;
use crate::space::SpaceModel;
use crate::Tolerances;

/// The full truncated ambient space: all monomials of degree `<= D`.
#[derive(Clone, Debug)]
pub struct Ambient {
    space: SpaceModel,
    sqrt_w: Vec<f64>,
}

impl Ambient {
    pub fn new(space: SpaceModel) -> Arc<Self> {
        let sqrt_w = space.weights().iter().map(|w| w.sqrt()).collect();
        Arc::new(Ambient { space, sqrt_w })
    }

    pub fn space(&self) -> &SpaceModel {
        &self.space
    }

    pub fn n(&self) -> usize {
        self.space.n()
    }

    /// Truncation degree `D`.
    pub fn degree(&self) -> usize {
        self.space.degree()
    }

    /// `N = C(n + D, n)`.
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Ambient indices of the degree-`d` layer `H_d`.
    pub fn layer(&self, d: usize) -> std::ops::Range<usize> {
        self.space.degree_range(d)
    }

    /// Ambient indices of all monomials of degree `<= m`.
    pub fn low(&self, m: usize) -> std::ops::Range<usize> {
        0..self.space.degree_range(m).end
    }

    pub fn to_vector(&self, p: &FloatPoly) -> Result<Vector, SpaceError> {
        self.space.check_fits(p)?;
        let mut v = Vector::zeros(self.dim());
        for (k, c) in p.terms() {
            let i = self.space.index_of(k).expect("degree checked");
            v[i] = c * self.sqrt_w[i];
        }
        Ok(v)
    }

    pub fn to_matrix(&self, ps: &[FloatPoly]) -> Result<Mat, SpaceError> {
        let mut m = Mat::zeros(self.dim(), ps.len());
        for (j, p) in ps.iter().enumerate() {
            m.set_column(j, &self.to_vector(p)?);
        }
        Ok(m)
    }

    /// Polynomial with scaled coordinates `v`, pruned relative to its largest
    /// coefficient.
    pub fn to_poly(&self, v: &Vector, prune: f64) -> FloatPoly {
        let terms = self
            .space
            .monomials()
            .iter()
            .zip(v.iter().zip(&self.sqrt_w))
            .map(|(k, (c, s))| (k.clone(), c / *s));
        let mut p = Polynomial::from_terms(self.n(), terms).expect("ambient indices have length n");
        let reference = p.max_modulus();
        p.prune(prune, reference);
        p
    }

    /// Multiplies every column by `z^r` and truncates to degree `D`. The flag
    /// reports whether a coefficient above `1e-14` of its column norm was dropped.
    pub fn shift(&self, r: &MultiIndex, m: &Mat) -> (Mat, bool) {
        let mut out = Mat::zeros(self.dim(), m.ncols());
        let mut touched = false;
        let col_norms: Vec<f64> = m.column_iter().map(|c| c.norm()).collect();
        for (i, k) in self.space.monomials().iter().enumerate() {
            let target = k.plus(r);
            match self.space.index_of(&target) {
                Some(t) => {
                    let factor = self.sqrt_w[t] / self.sqrt_w[i];
                    for j in 0..m.ncols() {
                        out[(t, j)] = m[(i, j)] * factor;
                    }
                }
                None => {
                    for j in 0..m.ncols() {
                        if m[(i, j)].norm() > 1e-14 * col_norms[j] {
                            touched = true;
                        }
                    }
                }
            }
        }
        (out, touched)
    }
}

/// A subspace of the truncated ambient space, stored as orthonormal columns
/// in scaled coordinates.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: Arc<Ambient>,
    basis: Mat,
}

impl Subspace {
    pub fn zero(ambient: &Arc<Ambient>) -> Self {
        Subspace { ambient: ambient.clone(), basis: Mat::zeros(ambient.dim(), 0) }
    }

    pub fn full(ambient: &Arc<Ambient>) -> Self {
        Subspace { ambient: ambient.clone(), basis: Mat::identity(ambient.dim(), ambient.dim()) }
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    /// Orthonormal basis in scaled coordinates (one column per vector).
    pub fn basis_matrix(&self) -> &DMatrix<C64> {
        &self.basis
    }

    pub fn basis_polys(&self, prune: f64) -> Vec<FloatPoly> {
        self.basis.column_iter().map(|c| self.ambient.to_poly(&c.into_owned(), prune)).collect()
    }

    /// Orthogonal projection of scaled coordinates.
    pub(crate) fn project_vec(&self, v: &Vector) -> Vector {
        &self.basis * (self.basis.adjoint() * v)
    }

    /// `||h - P_V h|| / max(||h||, tiny)`.
    pub fn relative_residual(&self, h: &FloatPoly) -> Result<f64, SubspaceError> {
        let v = self.ambient.to_vector(h)?;
        let n = v.norm();
        if n == 0.0 {
            return Ok(0.0);
        }
        Ok((&v - self.project_vec(&v)).norm() / n)
    }

    pub fn contains(&self, h: &FloatPoly, tol: &Tolerances) -> Result<bool, SubspaceError> {
        Ok(self.relative_residual(h)? <= tol.membership)
    }

    /// Largest deviation of `B* B` from the identity.
    pub fn orthonormality_defect(&self) -> f64 {
        let g = self.basis.adjoint() * &self.basis;
        let id = Mat::identity(g.nrows(), g.ncols());
        (g - id).iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

/// Orthonormal basis of `span(gens)`.
///
/// Modified Gram–Schmidt with one reorthogonalization pass keeps generator
/// order; the rank is decided by singular values of the column-normalized
/// generator matrix against `tol.rank * sigma_max`. If the two disagree the
/// leading left singular vectors are used instead.
pub fn orthonormalize(gens: &[FloatPoly], ambient: &Arc<Ambient>, tol: &Tolerances) -> Result<Subspace, SubspaceError> {
    let mut cols = Vec::new();
    for g in gens {
        let v = ambient.to_vector(g)?;
        let n = v.norm();
        if n > 0.0 {
            cols.push(v / C64::new(n, 0.0));
        }
    }
    if cols.is_empty() {
        return Ok(Subspace::zero(ambient));
    }
    let gm = Mat::from_columns(&cols);
    let (sigmas, u) = linalg::svd_left(&gm);
    let t = linalg::threshold(&sigmas, tol.rank, 0.0);
    let rank = sigmas.iter().filter(|&&s| s > t).count();

    let mut basis: Vec<Vector> = Vec::new();
    for v in &cols {
        let mut w = v.clone();
        for _ in 0..2 {
            for q in &basis {
                let c = q.dotc(&w);
                w -= q * c;
            }
        }
        let n = w.norm();
        if n > t.max(tol.rank) {
            basis.push(w / C64::new(n, 0.0));
        }
    }
    let basis = if basis.len() == rank {
        Mat::from_columns(&basis)
    } else {
        u.columns(0, rank).into_owned()
    };
    Ok(Subspace { ambient: ambient.clone(), basis })
}

/// Best approximation of `h` in `V`.
pub fn project(h: &FloatPoly, v: &Subspace, tol: &Tolerances) -> Result<FloatPoly, SubspaceError> {
    let x = v.ambient.to_vector(h)?;
    Ok(v.ambient.to_poly(&v.project_vec(&x), tol.prune))
}

/// The nested chain `V = V_0 ⊇ V_1 ⊇ ... ⊇ V_{D+1} = {0}`,
/// `V_k = { h in V : ord(h) >= k }`.
#[derive(Clone, Debug)]
pub struct SubspaceSeries {
    pub levels: Vec<Subspace>,
}

/// Homogeneous components `W_0, ..., W_D`, `W_k = V_k ⊖ V_{k+1}`, kept with
/// explicit zero-dimensional placeholders so that index `k` is the order.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub components: Vec<Subspace>,
}

impl Decomposition {
    pub fn dims(&self) -> Vec<usize> {
        self.components.iter().map(Subspace::dim).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.components.iter().map(Subspace::dim).sum()
    }

    /// Orthonormal basis of `U_m = W_0 ⊕ ... ⊕ W_m` (empty for `m < 0`),
    /// columns grouped by component.
    pub(crate) fn prefix_basis(&self, m: isize) -> Mat {
        let nrows = self.components.first().map(|w| w.ambient.dim()).unwrap_or(0);
        if m < 0 {
            return Mat::zeros(nrows, 0);
        }
        let parts: Vec<&Mat> = self.components[..=(m as usize)].iter().map(|w| &w.basis).collect();
        linalg::hstack(&parts, nrows)
    }

    /// Largest `|<w_i, w_j>|` between basis vectors of distinct components.
    pub fn max_cross_inner_product(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, a) in self.components.iter().enumerate() {
            for b in &self.components[i + 1..] {
                let g = a.basis.adjoint() * &b.basis;
                worst = g.iter().map(|c| c.norm()).fold(worst, f64::max);
            }
        }
        worst
    }
}

/// Series and decomposition in one sweep.
///
/// With `Q_k` an orthonormal basis of `V_k`, the degree-`k` rows of `Q_k`
/// have right singular vectors splitting `V_k` into `W_k = Q_k V_range` and
/// `V_{k+1} = Q_k V_null`. Rows of degree `<= k` of `V_{k+1}` are below the
/// rank threshold and are set to zero so that orders read off exactly.
pub fn series_and_decomposition(v: &Subspace, tol: &Tolerances) -> (SubspaceSeries, Decomposition) {
    let a = &v.ambient;
    let d = a.degree();
    let mut levels = vec![v.clone()];
    let mut components = Vec::with_capacity(d + 1);
    let mut q = v.basis.clone();
    for k in 0..=d {
        let layer = a.layer(k);
        let rk = linalg::rows(&q, layer.clone());
        let (range, null, _) = linalg::split_right(&rk, tol.rank, 1.0);
        let w = &q * range;
        let mut next = &q * null;
        for r in a.low(k) {
            for c in 0..next.ncols() {
                next[(r, c)] = C64::new(0.0, 0.0);
            }
        }
        components.push(Subspace { ambient: a.clone(), basis: w });
        levels.push(Subspace { ambient: a.clone(), basis: next.clone() });
        q = next;
    }
    (SubspaceSeries { levels }, Decomposition { components })
}

pub fn subspace_series(v: &Subspace, tol: &Tolerances) -> SubspaceSeries {
    series_and_decomposition(v, tol).0
}

pub fn homogeneous_decomposition(v: &Subspace, tol: &Tolerances) -> Decomposition {
    series_and_decomposition(v, tol).1
}

/// `(P_{W_k} h)_k`; errors when `h` is not in `V`.
pub fn decompose_element(
    h: &FloatPoly,
    v: &Subspace,
    dec: &Decomposition,
    tol: &Tolerances,
) -> Result<Vec<FloatPoly>, SubspaceError> {
    let residual = v.relative_residual(h)?;
    if residual > tol.membership {
        return Err(SubspaceError::NotInSubspace(residual));
    }
    if dec.total_dim() != v.dim() {
        return Err(SubspaceError::InconsistentDecomposition(format!(
            "component dimensions sum to {}, subspace has dimension {}",
            dec.total_dim(),
            v.dim()
        )));
    }
    let x = v.ambient.to_vector(h)?;
    Ok(dec
        .components
        .iter()
        .map(|w| v.ambient.to_poly(&w.project_vec(&x), tol.prune))
        .collect())
}

/// `M = V ⊖ span{ trunc(z_i v) : v in V, i = 1..n }`.
#[derive(Clone, Debug)]
pub struct WanderingSubspace {
    pub subspace: Subspace,
    /// Some product `z_i v` had terms above degree `D` that were dropped.
    pub truncation_touched: bool,
}

pub fn wandering_subspace(v: &Subspace, tol: &Tolerances) -> WanderingSubspace {
    let a = &v.ambient;
    let mut parts = Vec::new();
    let mut touched = false;
    for i in 0..a.n() {
        let (s, t) = a.shift(&MultiIndex::unit(a.n(), i), &v.basis);
        touched |= t;
        parts.push(s);
    }
    let refs: Vec<&Mat> = parts.iter().collect();
    let z = linalg::hstack(&refs, a.dim());
    let gram = z.adjoint() * &v.basis;
    let (_, null, _) = linalg::split_right(&gram, tol.rank, 1.0);
    WanderingSubspace { subspace: Subspace { ambient: a.clone(), basis: &v.basis * null }, truncation_touched: touched }
}

/// Matrix of `P_m^H` restricted to a homogeneous `W` of order `m`.
#[derive(Clone, Debug)]
pub struct RestrictedProjection {
    /// `None` when `W = {0}`.
    pub order: Option<usize>,
    /// Degree-`m` rows of the orthonormal basis of `W` (orthonormal coordinates on both sides).
    pub matrix: DMatrix<C64>,
    pub sigma_min: f64,
    pub invertible: bool,
    /// `W = {0}`: invertibility holds vacuously.
    pub degenerate: bool,
}

pub fn restricted_projection_lw(w: &Subspace, tol: &Tolerances) -> Result<RestrictedProjection, SubspaceError> {
    let a = &w.ambient;
    if w.dim() == 0 {
        return Ok(RestrictedProjection {
            order: None,
            matrix: Mat::zeros(0, 0),
            sigma_min: f64::INFINITY,
            invertible: true,
            degenerate: true,
        });
    }
    let mut order = None;
    for m in 0..=a.degree() {
        let rm = linalg::rows(&w.basis, a.layer(m));
        if rm.iter().any(|c| c.norm() > tol.rank) {
            order = Some(m);
            break;
        }
    }
    let m = order.ok_or_else(|| SubspaceError::NotHomogeneous("basis has no nonzero coefficient".into()))?;
    let l = linalg::rows(&w.basis, a.layer(m));
    let (sigmas, _) = linalg::svd_right(&l);
    let sigma_min = if l.nrows() < w.dim() { 0.0 } else { sigmas[w.dim() - 1] };
    if sigma_min <= tol.rank {
        return Err(SubspaceError::NotHomogeneous(format!(
            "some nonzero element has order above {m} (sigma_min = {sigma_min:e})"
        )));
    }
    Ok(RestrictedProjection { order: Some(m), matrix: l, sigma_min, invertible: sigma_min > tol.rank, degenerate: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::OrderValue;
    use crate::space::{make_space, SpaceKind};

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn poly(n: usize, terms: &[(&[u32], f64)]) -> FloatPoly {
        Polynomial::from_terms(n, terms.iter().map(|(e, v)| (MultiIndex::new(e.to_vec()), c(*v)))).unwrap()
    }

    fn ambient(n: usize, d: usize) -> Arc<Ambient> {
        Ambient::new(make_space(SpaceKind::H2Polydisk, n, d).unwrap())
    }

    #[test]
    fn orthonormalize_examples() {
        let a = ambient(1, 3);
        let tol = Tolerances::default();
        let v = orthonormalize(&[poly(1, &[(&[1], 1.0)]), poly(1, &[(&[1], 2.0)])], &a, &tol).unwrap();
        assert_eq!(v.dim(), 1);
        let v = orthonormalize(&[poly(1, &[(&[0], 1.0), (&[1], 1.0)]), poly(1, &[(&[0], 1.0), (&[1], -1.0)])], &a, &tol)
            .unwrap();
        assert_eq!(v.dim(), 2);
        let s = 1.0 / 2f64.sqrt();
        assert!((v.basis_matrix()[(0, 0)] - c(s)).norm() < 1e-15);
        assert!((v.basis_matrix()[(1, 0)] - c(s)).norm() < 1e-15);
        let v = orthonormalize(&[FloatPoly::zero(1)], &a, &tol).unwrap();
        assert_eq!(v.dim(), 0);
    }

    #[test]
    fn series_of_span_one_z() {
        let a = ambient(1, 3);
        let tol = Tolerances::default();
        let v = orthonormalize(&[poly(1, &[(&[0], 1.0)]), poly(1, &[(&[1], 1.0)])], &a, &tol).unwrap();
        let s = subspace_series(&v, &tol);
        let dims: Vec<usize> = s.levels.iter().map(Subspace::dim).collect();
        assert_eq!(dims, [2, 1, 0, 0, 0]);
    }

    #[test]
    fn wandering_subspace_of_full_space() {
        let a = ambient(1, 4);
        let tol = Tolerances::default();
        let m = wandering_subspace(&Subspace::full(&a), &tol);
        assert_eq!(m.subspace.dim(), 1);
        let b = m.subspace.basis_polys(1e-12);
        assert_eq!(b[0].ord(), OrderValue::Finite(0));
        assert_eq!(b[0].degree(), Some(0));
    }

    #[test]
    fn restricted_projection_of_monomial() {
        let a = ambient(2, 3);
        let tol = Tolerances::default();
        let w = orthonormalize(&[poly(2, &[(&[2, 0], 1.0)])], &a, &tol).unwrap();
        let l = restricted_projection_lw(&w, &tol).unwrap();
        assert_eq!(l.order, Some(2));
        assert!((l.sigma_min - 1.0).abs() < 1e-14);
        let z = restricted_projection_lw(&Subspace::zero(&a), &tol).unwrap();
        assert!(z.degenerate && z.invertible);
        let mixed = orthonormalize(&[poly(2, &[(&[1, 0], 1.0)]), poly(2, &[(&[2, 0], 1.0)])], &a, &tol).unwrap();
        assert!(restricted_projection_lw(&mixed, &tol).is_err());
    }
}
