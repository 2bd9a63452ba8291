//! Exact linear algebra over the Gaussian rationals.
//!
//! Rank and nullspace computations clear denominators row by row and run
//! fraction-free (Bareiss) elimination over the Gaussian integers `Z[i]`;
//! every intermediate entry is a minor of the input, so each division is
//! exact. Small square solves use Gauss–Jordan over `Q(i)` directly.

use num::{BigInt, BigRational, Complex, Integer, One, Signed, Zero};

use crate::scalar::QI;

pub type GaussInt = Complex<BigInt>;

/// Dense row-major matrix.
pub type QMatrix = Vec<Vec<QI>>;

pub fn qzero() -> QI {
    QI::new(BigRational::zero(), BigRational::zero())
}

pub fn qone() -> QI {
    QI::new(BigRational::one(), BigRational::zero())
}

fn lcm_denominators(row: &[QI]) -> BigInt {
    let mut l = BigInt::one();
    for z in row {
        for part in [&z.re, &z.im] {
            if !part.is_zero() {
                l = l.lcm(part.denom());
            }
        }
    }
    l
}

/// Scales a rational row to Gaussian integers.
pub fn integral_row(row: &[QI]) -> Vec<GaussInt> {
    let l = lcm_denominators(row);
    row.iter()
        .map(|z| {
            let re = (&z.re * BigRational::from_integer(l.clone())).to_integer();
            let im = (&z.im * BigRational::from_integer(l.clone())).to_integer();
            GaussInt::new(re, im)
        })
        .collect()
}

/// Exact quotient `a / b` in `Z[i]`; panics if `b` does not divide `a`.
fn exact_div(a: &GaussInt, b: &GaussInt) -> GaussInt {
    let norm = &b.re * &b.re + &b.im * &b.im;
    let num = a * GaussInt::new(b.re.clone(), -b.im.clone());
    let (qre, rre) = num.re.div_rem(&norm);
    let (qim, rim) = num.im.div_rem(&norm);
    assert!(rre.is_zero() && rim.is_zero(), "fraction-free elimination produced an inexact division");
    GaussInt::new(qre, qim)
}

fn gi_is_zero(z: &GaussInt) -> bool {
    z.re.is_zero() && z.im.is_zero()
}

/// Row echelon form produced by fraction-free elimination.
#[derive(Clone, Debug)]
pub struct Echelon {
    /// Nonzero rows, in pivot order.
    pub rows: Vec<Vec<GaussInt>>,
    /// Pivot column of each row.
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Bareiss elimination of `m` (`ncols` columns; rows may be empty).
pub fn bareiss(m: &[Vec<QI>], ncols: usize) -> Echelon {
    let mut a: Vec<Vec<GaussInt>> = m.iter().map(|r| integral_row(r)).collect();
    let nrows = a.len();
    let mut prev = GaussInt::new(BigInt::one(), BigInt::zero());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !gi_is_zero(&a[i][c])) else { continue };
        a.swap(r, p);
        let (top, bottom) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let piv = pivot_row[c].clone();
        for row in bottom.iter_mut() {
            let lead = row[c].clone();
            for j in c + 1..ncols {
                let v = &piv * &row[j] - &lead * &pivot_row[j];
                row[j] = exact_div(&v, &prev);
            }
            row[c] = GaussInt::new(BigInt::zero(), BigInt::zero());
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Echelon { rows: a, pivots, ncols }
}

pub fn rank(m: &[Vec<QI>], ncols: usize) -> usize {
    bareiss(m, ncols).rank()
}

fn gi_to_qi(z: &GaussInt) -> QI {
    QI::new(BigRational::from_integer(z.re.clone()), BigRational::from_integer(z.im.clone()))
}

/// Basis of `{ x : m x = 0 }` (each vector has length `ncols`).
pub fn nullspace(m: &[Vec<QI>], ncols: usize) -> Vec<Vec<QI>> {
    let e = bareiss(m, ncols);
    let rows: Vec<Vec<QI>> = e.rows.iter().map(|r| r.iter().map(gi_to_qi).collect()).collect();
    let mut is_pivot = vec![false; ncols];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for f in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut x = vec![qzero(); ncols];
        x[f] = qone();
        for (i, &p) in e.pivots.iter().enumerate().rev() {
            let mut s = qzero();
            for j in p + 1..ncols {
                if !rows[i][j].is_zero() && !x[j].is_zero() {
                    s += rows[i][j].clone() * x[j].clone();
                }
            }
            if !s.is_zero() {
                x[p] = -s / rows[i][p].clone();
            }
        }
        out.push(x);
    }
    out
}

pub fn transpose(m: &[Vec<QI>], ncols: usize) -> QMatrix {
    (0..ncols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// `a * b` with `a` of shape `p x q` and `b` given as `q` rows of length `s`.
pub fn matmul(a: &[Vec<QI>], b: &[Vec<QI>], s: usize) -> QMatrix {
    a.iter()
        .map(|row| {
            let mut out = vec![qzero(); s];
            for (l, x) in row.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (o, y) in out.iter_mut().zip(&b[l]) {
                    if !y.is_zero() {
                        *o = o.clone() + x.clone() * y.clone();
                    }
                }
            }
            out
        })
        .collect()
}

/// `sum_j c_j v_j` for vectors `v_j` of length `len`.
pub fn combine(vectors: &[Vec<QI>], coeffs: &[QI], len: usize) -> Vec<QI> {
    let mut out = vec![qzero(); len];
    for (v, c) in vectors.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            if !x.is_zero() {
                *o = o.clone() + x.clone() * c.clone();
            }
        }
    }
    out
}

/// Solves `a x = b` for square invertible `a` (Gauss–Jordan with partial
/// pivoting on nonzero entries); `b` has `s` columns. Returns `None` if `a`
/// is singular.
pub fn solve(a: &[Vec<QI>], b: &[Vec<QI>], s: usize) -> Option<QMatrix> {
    let n = a.len();
    let mut m: Vec<Vec<QI>> = a.iter().zip(b).map(|(ra, rb)| ra.iter().chain(rb).cloned().collect()).collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let inv = qone() / m[c][c].clone();
        for x in m[c].iter_mut() {
            if !x.is_zero() {
                *x = x.clone() * inv.clone();
            }
        }
        for i in 0..n {
            if i == c || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..n + s {
                if !m[c][j].is_zero() {
                    m[i][j] = m[i][j].clone() - f.clone() * m[c][j].clone();
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn is_zero_vec(v: &[QI]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// `|re| + |im|` upper bound used for ordering witness candidates.
pub fn approx_norm(v: &[QI]) -> f64 {
    v.iter()
        .map(|z| {
            let re = crate::scalar::rational_to_f64(&z.re.abs());
            let im = crate::scalar::rational_to_f64(&z.im.abs());
            (re * re + im * im).sqrt()
        })
        .fold(0.0, |a, b| a + b * b)
        .sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{qi_int, rational};

    fn q(v: i64) -> QI {
        qi_int(v, 0)
    }

    #[test]
    fn rank_and_nullspace() {
        let m = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)], vec![q(1), q(0), q(1)]];
        assert_eq!(rank(&m, 3), 2);
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 1);
        for row in &m {
            let s = row.iter().zip(&ns[0]).fold(qzero(), |acc, (a, b)| acc + a.clone() * b.clone());
            assert!(s.is_zero());
        }
    }

    #[test]
    fn gaussian_entries() {
        let half = QI::new(rational(1, 2), rational(0, 1));
        let m = vec![vec![qi_int(1, 1), half.clone()], vec![qi_int(2, 0), qi_int(0, -1) * half.clone() * qi_int(2, 0)]];
        // second row = (1 - i) * first row
        let scaled: Vec<QI> = m[0].iter().map(|x| x.clone() * qi_int(1, -1)).collect();
        let m2 = vec![m[0].clone(), scaled];
        assert_eq!(rank(&m2, 2), 1);
        assert_eq!(rank(&m, 2), 2);
    }

    #[test]
    fn solve_square() {
        let a = vec![vec![q(2), q(1)], vec![q(1), q(3)]];
        let b = vec![vec![q(3)], vec![q(4)]];
        let x = solve(&a, &b, 1).unwrap();
        assert_eq!(x[0][0], q(1));
        assert_eq!(x[1][0], q(1));
        assert!(solve(&[vec![q(1), q(1)], vec![q(2), q(2)]], &b, 1).is_none());
    }
}
