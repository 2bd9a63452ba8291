//! Small dense complex linear-algebra helpers on top of `nalgebra`.

use nalgebra::{DMatrix, DVector};

use crate::scalar::C64;

pub(crate) type Mat = DMatrix<C64>;
pub(crate) type Vector = DVector<C64>;

/// Full SVD through `faer`: singular values in descending order with the
/// matching columns of `U` (`p x p`) and `V` (`c x c`). `nalgebra`'s SVD is
/// not used because it can return inaccurate factors when the bidiagonal
/// form has exact zeros, which truncated monomial matrices produce routinely.
fn full_svd(m: &Mat) -> (Vec<f64>, Mat, Mat) {
    let (p, c) = m.shape();
    let f = faer::Mat::<C64>::from_fn(p, c, |i, j| m[(i, j)]);
    let svd = f.svd().expect("SVD iteration converges");
    let s = svd.S().column_vector();
    let mut order: Vec<usize> = (0..p.min(c)).collect();
    order.sort_by(|&a, &b| s[b].re.total_cmp(&s[a].re));
    let sigmas: Vec<f64> = order.iter().map(|&i| s[i].re).collect();
    let (fu, fv) = (svd.U(), svd.V());
    let perm = |k: usize, n: usize| if k < order.len() { order[k] } else { k.min(n - 1) };
    let u = Mat::from_fn(p, p, |i, k| fu[(i, perm(k, p))]);
    let v = Mat::from_fn(c, c, |i, k| fv[(i, perm(k, c))]);
    (sigmas, u, v)
}

/// Singular values (descending, padded with zeros to length `c`) and a full
/// set of right singular vectors (columns of a `c x c` unitary matrix in the
/// same order; trailing columns span the remaining null directions).
pub(crate) fn svd_right(m: &Mat) -> (Vec<f64>, Mat) {
    let (p, c) = m.shape();
    if c == 0 {
        return (Vec::new(), Mat::zeros(0, 0));
    }
    if p == 0 {
        return (vec![0.0; c], Mat::identity(c, c));
    }
    let (mut sigmas, _, v) = full_svd(m);
    sigmas.resize(c, 0.0);
    (sigmas, v)
}

/// Singular values (descending) and the matching left singular vectors.
pub(crate) fn svd_left(m: &Mat) -> (Vec<f64>, Mat) {
    let (p, c) = m.shape();
    if p == 0 || c == 0 {
        return (Vec::new(), Mat::zeros(p, 0));
    }
    let (sigmas, u, _) = full_svd(m);
    let k = sigmas.len();
    (sigmas, u.columns(0, k).into_owned())
}

pub(crate) fn sigma_max(m: &Mat) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    full_svd(m).0.first().copied().unwrap_or(0.0)
}

/// Rank threshold `tau * max(sigma_max, floor)`.
pub(crate) fn threshold(sigmas: &[f64], tau: f64, floor: f64) -> f64 {
    tau * sigmas.first().copied().unwrap_or(0.0).max(floor)
}

/// Splits the right singular basis into (range, null) parts.
pub(crate) fn split_right(m: &Mat, tau: f64, floor: f64) -> (Mat, Mat, Vec<f64>) {
    let (sigmas, v) = svd_right(m);
    let t = threshold(&sigmas, tau, floor);
    let rank = sigmas.iter().filter(|&&s| s > t).count();
    let c = v.ncols();
    let range = v.columns(0, rank).into_owned();
    let null = v.columns(rank, c - rank).into_owned();
    (range, null, sigmas)
}

/// Orthonormal basis of the column space.
pub(crate) fn range_basis(m: &Mat, tau: f64, floor: f64) -> Mat {
    let (sigmas, u) = svd_left(m);
    let t = threshold(&sigmas, tau, floor);
    let rank = sigmas.iter().filter(|&&s| s > t).count();
    u.columns(0, rank).into_owned()
}

pub(crate) fn rows(m: &Mat, range: std::ops::Range<usize>) -> Mat {
    m.rows(range.start, range.len()).into_owned()
}

pub(crate) fn hstack(parts: &[&Mat], nrows: usize) -> Mat {
    let cols: usize = parts.iter().map(|p| p.ncols()).sum();
    let mut out = Mat::zeros(nrows, cols);
    let mut at = 0;
    for p in parts {
        out.view_mut((0, at), (nrows, p.ncols())).copy_from(*p);
        at += p.ncols();
    }
    out
}

/// Least-squares solution `a` of `A a = b` through the pseudo-inverse with
/// singular values below `tau * max(sigma_max, floor)` discarded.
pub(crate) fn pinv_solve(a: &Mat, b: &Mat, tau: f64, floor: f64) -> Mat {
    let (p, c) = a.shape();
    if c == 0 {
        return Mat::zeros(0, b.ncols());
    }
    if p == 0 {
        return Mat::zeros(c, b.ncols());
    }
    let (sigmas, u, v) = full_svd(a);
    let eps = threshold(&sigmas, tau, floor);
    let mut x = Mat::zeros(c, b.ncols());
    for (i, &s) in sigmas.iter().enumerate().filter(|(_, &s)| s > eps) {
        let coeff = u.column(i).adjoint() * b / C64::new(s, 0.0);
        x += v.column(i) * coeff;
    }
    x
}

/// Rotates the phase of `v` so its first entry with modulus above `1e-12`
/// of the maximum is real and positive.
pub(crate) fn normalize_phase(v: &mut Vector) {
    let max = v.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return;
    }
    if let Some(lead) = v.iter().find(|c| c.norm() > 1e-12 * max).copied() {
        let phase = lead.conj() / lead.norm();
        for c in v.iter_mut() {
            *c *= phase;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn right_svd_is_full_and_sorted() {
        let m = Mat::from_row_slice(1, 3, &[C64::new(0.0, 0.0), C64::new(3.0, 0.0), C64::new(4.0, 0.0)]);
        let (range, null, sigmas) = split_right(&m, 1e-9, 1.0);
        assert!((sigmas[0] - 5.0).abs() < 1e-12);
        assert_eq!(range.ncols(), 1);
        assert_eq!(null.ncols(), 2);
        assert!((&m * &null).norm() < 1e-12);
    }

    /// Tall matrix with exact zeros and a repeated singular value 1, taken
    /// from the low rows of a truncated submodule in the Hardy space of the
    /// ball; `nalgebra`'s SVD reconstructs it with error near 7e-2.
    fn awkward() -> Mat {
        let mut m = Mat::zeros(10, 3);
        m[(4, 0)] = C64::new(-0.33688330921210097, 0.0);
        m[(8, 0)] = C64::new(-0.43147919531310086, 0.0);
        m[(9, 0)] = C64::new(0.8251922104298949, 0.0);
        m[(7, 1)] = C64::new(-1.0, 0.0);
        m[(8, 2)] = C64::new(-0.3071475584169757, 0.0);
        m
    }

    #[test]
    fn svd_reconstructs_awkward_matrix() {
        let m = awkward();
        let (sigmas, u, v) = full_svd(&m);
        let s = Mat::from_fn(10, 3, |i, j| if i == j { C64::new(sigmas[i], 0.0) } else { C64::new(0.0, 0.0) });
        assert!((&u * s * v.adjoint() - &m).norm() < 1e-14);
        assert!((sigmas[0] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn pinv_solve_recovers_unique_solution() {
        let m = awkward();
        let mut b = Mat::zeros(10, 1);
        b[(7, 0)] = C64::new(-0.25, 0.0);
        let x = pinv_solve(&m, &b, 1e-9, 1.0);
        assert!((x[(0, 0)]).norm() < 1e-14 && (x[(2, 0)]).norm() < 1e-14);
        assert!((x[(1, 0)] - C64::new(0.25, 0.0)).norm() < 1e-14);
    }
}
