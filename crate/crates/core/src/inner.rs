//! Inner functions: the R1-inner test for a single function, the weighted
//! Bergman inner condition on the disk computed by quadrature and by moments,
//! their equivalence, and boundary sampling on the torus and the sphere.

use std::f64::consts::PI;
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::beurling::{r1_monomials, Verdict};
use crate::error::{CheckError, SpaceError};
use crate::poly::{FloatPoly, MultiIndex};
use crate::quadrature::integrate_with_floor;
use crate::scalar::C64;
use crate::space::{inner_product, make_space, SpaceKind, SpaceModel};
use crate::Tolerances;

/// Largest `|<z^m f, f>| / ||f||^2` and where it occurs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InnerFunctionReport {
    pub verdict: Verdict,
    pub max_relative: f64,
    pub cases: usize,
    /// Exponent `m` attaining `max_relative` when the check fails.
    pub witness_m: Option<Vec<u32>>,
    /// `<z^m f, f>` at the witness, as `[re, im]`.
    pub witness_value: Option<[f64; 2]>,
}

/// `f` spans an R1-inner line: `<z^m f, f> = 0` for every `1 <= |m| <= D`.
///
/// Monomials with `|m| > D - deg f` are included; the truncated product still
/// gives the exact inner product because `f` has no terms above degree `D`.
pub fn is_r1_inner_function(f: &FloatPoly, space: &SpaceModel, tol: &Tolerances) -> Result<InnerFunctionReport, CheckError> {
    space.check_fits(f)?;
    let norm_sq = inner_product(f, f, space)?.re;
    let mut report = InnerFunctionReport { verdict: Verdict::Pass, max_relative: 0.0, cases: 0, witness_m: None, witness_value: None };
    if f.is_zero() {
        return Ok(report);
    }
    let d = space.degree() as u32;
    for m in r1_monomials(space.n(), space.degree()) {
        report.cases += 1;
        let zf = f.shift(&m).truncate(d).0;
        let v = inner_product(&zf, f, space)?;
        let rel = v.norm() / norm_sq;
        if rel > report.max_relative {
            report.max_relative = rel;
            if rel > tol.membership {
                report.witness_m = Some(m.exponents().to_vec());
                report.witness_value = Some([v.re, v.im]);
            }
        }
    }
    if report.max_relative > tol.membership {
        report.verdict = Verdict::Fail;
    }
    Ok(report)
}

/// Both routes of the weighted Bergman inner condition
/// `int |f|^2 z^m (1 - |z|^2)^alpha dA/pi = delta_{m0}`, `m = 0..=sweep`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct A2AlphaReport {
    pub alpha: f64,
    pub sweep: usize,
    pub quadrature_values: Vec<[f64; 2]>,
    pub moment_values: Vec<[f64; 2]>,
    pub quadrature_verdict: Verdict,
    pub moment_verdict: Verdict,
    /// `max_m |quadrature - moment|`, relative to `max(1, ||f||^2)`.
    pub discrepancy: f64,
}

fn check_values(values: &[C64], tau: f64) -> Verdict {
    let ok = values
        .iter()
        .enumerate()
        .all(|(m, v)| if m == 0 { (v - C64::new(1.0, 0.0)).norm() <= tau } else { v.norm() <= tau });
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

/// Polar quadrature: the trapezoid rule in `theta` with more nodes than the
/// highest frequency (exact for trigonometric polynomials) and, radially,
/// `rho^2 = 1 - s^4`, which turns `(1 - rho^2)^alpha rho d rho` into the smooth
/// `2 s^(4 alpha + 3) ds`.
fn quadrature_values(f: &FloatPoly, alpha: f64, sweep: usize, rel_tol: f64) -> Vec<C64> {
    // bound for |f|^2 on the closed disk
    let sup: f64 = f.terms().map(|(_, c)| c.norm()).sum::<f64>().powi(2);
    let floor = 1e-15 * sup.max(f64::MIN_POSITIVE);
    let deg = f.degree().unwrap_or(0) as usize;
    let nt = 2 * deg + sweep + 2;
    let angles: Vec<C64> = (0..nt).map(|j| C64::from_polar(1.0, 2.0 * PI * j as f64 / nt as f64)).collect();
    let angular_mean = move |rho: f64, m: usize| -> C64 {
        let mut s = C64::new(0.0, 0.0);
        for e in &angles {
            let z = e * rho;
            s += z.powu(m as u32) * f.eval(&[z]).norm_sqr();
        }
        s / nt as f64
    };
    (0..=sweep)
        .map(|m| {
            let part = |pick: fn(C64) -> f64| {
                let g = |s: f64| {
                    let s2 = s * s;
                    let rho = (1.0 - s2 * s2).max(0.0).sqrt();
                    4.0 * s.powf(4.0 * alpha + 3.0) * pick(angular_mean(rho, m))
                };
                integrate_with_floor(g, 0.0, 1.0, rel_tol, floor).value
            };
            C64::new(part(|c| c.re), part(|c| c.im))
        })
        .collect()
}

/// Parseval with the moment table: `<z^m f, f> = sum_k f_{k-m} conj(f_k) mu_k`.
fn moment_values(f: &FloatPoly, space: &SpaceModel, sweep: usize) -> Result<Vec<C64>, SpaceError> {
    let d = space.degree() as u32;
    (0..=sweep)
        .map(|m| {
            let zf = f.shift(&MultiIndex::new(vec![m as u32])).truncate(d).0;
            inner_product(&zf, f, space)
        })
        .collect()
}

/// Weighted Bergman inner test on the disk, by quadrature and by moments.
///
/// Errors when the two routes disagree by more than `tol.quad`.
pub fn is_a2alpha_inner(f: &FloatPoly, alpha: f64, sweep: usize, tol: &Tolerances) -> Result<A2AlphaReport, CheckError> {
    if f.dim() != 1 {
        return Err(SpaceError::Unsupported("the weighted Bergman inner test needs n = 1".into()).into());
    }
    let degree = (f.degree().unwrap_or(0) as usize).max(sweep).max(1);
    let space = make_space(SpaceKind::A2DiskAlpha { alpha }, 1, degree)?;
    let quad = quadrature_values(f, alpha, sweep, 1e-13);
    let mom = moment_values(f, &space, sweep)?;
    let scale = inner_product(f, f, &space)?.re.max(1.0);
    let discrepancy = quad.iter().zip(&mom).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max) / scale;
    let report = A2AlphaReport {
        alpha,
        sweep,
        quadrature_values: quad.iter().map(|c| [c.re, c.im]).collect(),
        moment_values: mom.iter().map(|c| [c.re, c.im]).collect(),
        quadrature_verdict: check_values(&quad, tol.membership),
        moment_verdict: check_values(&mom, tol.membership),
        discrepancy,
    };
    if discrepancy > tol.quad {
        return Err(CheckError::RouteDisagreement(discrepancy));
    }
    Ok(report)
}

/// The weighted Bergman inner verdict of `f / ||f||` against its R1-inner
/// verdict in the same space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub alpha: f64,
    pub a2alpha: A2AlphaReport,
    pub r1_inner: InnerFunctionReport,
    pub agree: bool,
}

pub fn check_inner_equivalence(f: &FloatPoly, alpha: f64, tol: &Tolerances) -> Result<EquivalenceReport, CheckError> {
    if f.dim() != 1 {
        return Err(SpaceError::Unsupported("the equivalence check needs n = 1".into()).into());
    }
    if f.is_zero() {
        return Err(CheckError::Precondition("f must be nonzero".into()));
    }
    let degree = (f.degree().unwrap_or(0) as usize).max(1);
    let space = make_space(SpaceKind::A2DiskAlpha { alpha }, 1, degree)?;
    let norm = space.norm(f)?;
    let g = f.scale(&C64::new(1.0 / norm, 0.0));
    let a2alpha = is_a2alpha_inner(&g, alpha, degree, tol)?;
    let r1_inner = is_r1_inner_function(&g, &space, tol)?;
    let agree = a2alpha.quadrature_verdict == r1_inner.verdict && a2alpha.moment_verdict == r1_inner.verdict;
    if !agree {
        return Err(CheckError::Integrity(format!(
            "weighted Bergman inner verdict {} (quadrature) / {} (moments) but R1-inner verdict {}",
            a2alpha.quadrature_verdict, a2alpha.moment_verdict, r1_inner.verdict
        )));
    }
    Ok(EquivalenceReport { alpha, a2alpha, r1_inner, agree })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GridKind {
    Torus { n: usize, points_per_circle: usize },
    Sphere { n: usize, samples: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryPoint {
    pub z: Vec<C64>,
    pub weight: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryGrid {
    pub kind: GridKind,
    pub points: Vec<BoundaryPoint>,
}

/// `e^{2 pi i j / N}`, exact at multiples of a quarter turn.
fn root_of_unity(j: usize, n: usize) -> C64 {
    if (4 * j).is_multiple_of(n) {
        match (4 * j / n) % 4 {
            0 => C64::new(1.0, 0.0),
            1 => C64::new(0.0, 1.0),
            2 => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, -1.0),
        }
    } else {
        C64::from_polar(1.0, 2.0 * PI * j as f64 / n as f64)
    }
}

/// Inverse of the standard normal CDF (Acklam's rational approximation,
/// relative error below `1.2e-9`), enough for spreading points.
fn normal_quantile(p: f64) -> f64 {
    const A: [f64; 6] = [-3.969683028665376e1, 2.209460984245205e2, -2.759285104469687e2, 1.383_577_518_672_69e2, -3.066479806614716e1, 2.506628277459239];
    const B: [f64; 5] = [-5.447609879822406e1, 1.615858368580409e2, -1.556989798598866e2, 6.680131188771972e1, -1.328068155288572e1];
    const C: [f64; 6] = [-7.784894002430293e-3, -3.223964580411365e-1, -2.400758277161838, -2.549732539343734, 4.374664141464968, 2.938163982698783];
    const D: [f64; 4] = [7.784695709041462e-3, 3.224671290700398e-1, 2.445134137142996, 3.754408661907416];
    let p = p.clamp(1e-12, 1.0 - 1e-12);
    let tail = |q: f64| {
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5]) / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    };
    if p < 0.02425 {
        tail((-2.0 * p.ln()).sqrt())
    } else if p > 1.0 - 0.02425 {
        -tail((-2.0 * (1.0 - p).ln()).sqrt())
    } else {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    }
}

impl BoundaryGrid {
    /// Product grid of `N`-th roots of unity on `T^n`, equal weights.
    pub fn torus(n: usize, points_per_circle: usize) -> Result<Self, SpaceError> {
        if n == 0 || points_per_circle == 0 {
            return Err(SpaceError::InvalidParameter("torus grid needs n >= 1 and at least one point per circle".into()));
        }
        let total = points_per_circle.checked_pow(n as u32).filter(|t| *t <= 1 << 24).ok_or_else(|| {
            SpaceError::InvalidParameter(format!("torus grid with {points_per_circle}^{n} points is too large"))
        })?;
        let w = 1.0 / total as f64;
        let points = (0..total)
            .map(|mut idx| {
                let mut z = vec![C64::new(0.0, 0.0); n];
                // first coordinate varies slowest
                for slot in z.iter_mut().rev() {
                    *slot = root_of_unity(idx % points_per_circle, points_per_circle);
                    idx /= points_per_circle;
                }
                BoundaryPoint { z, weight: w }
            })
            .collect();
        Ok(BoundaryGrid { kind: GridKind::Torus { n, points_per_circle }, points })
    }

    /// Deterministic points on `S^{2n-1}`: the coordinate poles `e_1..e_n`
    /// first, then a shifted Kronecker sequence in `[0,1)^{2n}` pushed through
    /// the normal quantile and normalized. The shift is drawn from `seed`.
    pub fn sphere(n: usize, samples: usize, seed: u64) -> Result<Self, SpaceError> {
        if n == 0 || samples < n {
            return Err(SpaceError::InvalidParameter(format!("sphere grid needs n >= 1 and at least n = {n} samples")));
        }
        let d = 2 * n;
        // generalized golden ratio: the positive root of x^(d+1) = x + 1
        let mut phi = 2.0f64;
        for _ in 0..64 {
            phi = (1.0 + phi).powf(1.0 / (d as f64 + 1.0));
        }
        let alphas: Vec<f64> = (1..=d).map(|j| (1.0 / phi.powi(j as i32)).fract()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shift: Vec<f64> = (0..d).map(|_| rng.random::<f64>()).collect();
        let w = 1.0 / samples as f64;
        let mut points: Vec<BoundaryPoint> = (0..n)
            .map(|i| {
                let mut z = vec![C64::new(0.0, 0.0); n];
                z[i] = C64::new(1.0, 0.0);
                BoundaryPoint { z, weight: w }
            })
            .collect();
        let mut k = 1usize;
        while points.len() < samples {
            let x: Vec<f64> = (0..d).map(|j| normal_quantile((shift[j] + k as f64 * alphas[j]).fract())).collect();
            k += 1;
            let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm < 1e-6 {
                continue;
            }
            let z = (0..n).map(|i| C64::new(x[2 * i] / norm, x[2 * i + 1] / norm)).collect();
            points.push(BoundaryPoint { z, weight: w });
        }
        Ok(BoundaryGrid { kind: GridKind::Sphere { n, samples, seed }, points })
    }

    pub fn n(&self) -> usize {
        match self.kind {
            GridKind::Torus { n, .. } | GridKind::Sphere { n, .. } => n,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundarySample {
    pub grid: GridKind,
    /// `(point, |f(point)|)` in grid order.
    pub rows: Vec<(Vec<C64>, f64)>,
    pub min_index: usize,
    pub max_index: usize,
}

impl BoundarySample {
    pub fn min(&self) -> f64 {
        self.rows[self.min_index].1
    }

    pub fn max(&self) -> f64 {
        self.rows[self.max_index].1
    }

    /// Value at the grid point closest to `z`, with that distance.
    pub fn nearest(&self, z: &[C64]) -> (f64, f64) {
        self.rows
            .iter()
            .map(|(p, v)| (p.iter().zip(z).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt(), *v))
            .min_by(|a, b| a.0.total_cmp(&b.0))
            .map(|(d, v)| (v, d))
            .unwrap_or((f64::NAN, f64::INFINITY))
    }

    /// Header `index,re_z1,im_z1,...,abs_f`, one row per point, then `min`
    /// and `max` summary rows carrying the extremal points.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), csv::Error> {
        let n = self.rows.first().map_or(0, |r| r.0.len());
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["index".to_string()];
        for i in 1..=n {
            header.push(format!("re_z{i}"));
            header.push(format!("im_z{i}"));
        }
        header.push("abs_f".into());
        w.write_record(&header)?;
        let record = |label: String, z: &[C64], v: f64| {
            let mut r = vec![label];
            for c in z {
                r.push(format!("{:?}", c.re));
                r.push(format!("{:?}", c.im));
            }
            r.push(format!("{v:?}"));
            r
        };
        for (i, (z, v)) in self.rows.iter().enumerate() {
            w.write_record(record(i.to_string(), z, *v))?;
        }
        for (label, i) in [("min", self.min_index), ("max", self.max_index)] {
            let (z, v) = &self.rows[i];
            w.write_record(record(label.into(), z, *v))?;
        }
        w.flush()?;
        Ok(())
    }
}

/// `|f|` on every grid point. Truncated series are sampled as polynomials.
pub fn boundary_sample(f: &FloatPoly, grid: &BoundaryGrid) -> Result<BoundarySample, SpaceError> {
    if f.dim() != grid.n() {
        return Err(crate::error::PolyError::DimensionMismatch { left: f.dim(), right: grid.n() }.into());
    }
    if grid.points.is_empty() {
        return Err(SpaceError::InvalidParameter("empty boundary grid".into()));
    }
    let rows: Vec<(Vec<C64>, f64)> = grid.points.iter().map(|p| (p.z.clone(), f.eval(&p.z).norm())).collect();
    let min_index = (0..rows.len()).min_by(|&a, &b| rows[a].1.total_cmp(&rows[b].1)).expect("nonempty");
    let max_index = (0..rows.len()).max_by(|&a, &b| rows[a].1.total_cmp(&rows[b].1)).expect("nonempty");
    Ok(BoundarySample { grid: grid.kind.clone(), rows, min_index, max_index })
}
