//! One-dimensional Gauss–Legendre rules and the sphere-moment integrators
//! used to tabulate monomial norms.

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::poly::MultiIndex;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
///
/// Roots of `P_n` are found by Newton iteration from the Chebyshev-like
/// initial guess `cos(pi (i + 3/4) / (n + 1/2))`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, z);
        if d != 0.0 {
            dp = d;
        }
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

fn legendre_with_derivative(n: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let n = n as f64;
    let dp = n * (z * p1 - p0) / (z * z - 1.0);
    (p1, dp)
}

/// Composite Gauss–Legendre rule on `[a, b]` with `panels` equal panels of
/// `nodes` points each.
pub fn composite<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, nodes: usize, panels: usize) -> f64 {
    let (x, w) = gauss_legendre(nodes);
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let lo = a + h * p as f64;
        let mid = lo + 0.5 * h;
        let mut s = 0.0;
        for (xi, wi) in x.iter().zip(&w) {
            s += wi * f(mid + 0.5 * h * xi);
        }
        total += 0.5 * h * s;
    }
    total
}

/// Result of an adaptive doubling integration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub panels: usize,
    pub relative_change: f64,
}

/// Integrates `f` over `[a, b]` with 64-node composite Gauss–Legendre panels,
/// doubling the panel count until the relative change drops below `rel_tol`
/// (or 2^12 panels are reached).
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> Integral {
    integrate_with_floor(f, a, b, rel_tol, 0.0)
}

/// As [`integrate`], but also stops once the change is below `abs_tol`, so
/// integrals that vanish converge.
pub fn integrate_with_floor<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64, abs_tol: f64) -> Integral {
    const NODES: usize = 64;
    let mut panels = 1;
    let mut prev = composite(&f, a, b, NODES, panels);
    loop {
        panels *= 2;
        let cur = composite(&f, a, b, NODES, panels);
        let diff = (cur - prev).abs();
        let change = diff / cur.abs().max(f64::MIN_POSITIVE);
        if change < rel_tol || diff <= abs_tol || panels >= 4096 {
            return Integral { value: cur, panels, relative_change: change };
        }
        prev = cur;
    }
}

/// `int_0^1 t^m (1 - t)^alpha dt`, computed with the substitution
/// `1 - t = s^4`, which turns the endpoint singularity of `(1 - t)^alpha`
/// into the smooth factor `s^(4 alpha + 3)`.
pub fn beta_moment(m: u32, alpha: f64) -> f64 {
    let f = move |s: f64| {
        let s2 = s * s;
        let t = 1.0 - s2 * s2;
        4.0 * t.powi(m as i32) * s.powf(4.0 * alpha + 3.0)
    };
    integrate(f, 0.0, 1.0, 1e-12).value
}

/// `int_{S^{2n-1}} |z^k|^2 dsigma` for normalized surface measure.
///
/// `(|z_1|^2, ..., |z_n|^2)` is uniformly distributed on the simplex, and a
/// stick-breaking representation factors the moment into one-dimensional
/// Beta integrals `int_0^1 b^{k_j} (1-b)^{K_j + n - j - 1} (n - j) db`. Each
/// factor has a polynomial integrand, integrated exactly by Gauss–Legendre.
pub fn sphere_moment(k: &MultiIndex) -> f64 {
    let e = k.exponents();
    let n = e.len();
    if n == 1 {
        return 1.0;
    }
    let mut value = 1.0;
    for j in 0..n - 1 {
        let tail: u32 = e[j + 1..].iter().sum();
        let free = (n - j - 1) as i32;
        let kj = e[j] as i32;
        let exp_tail = tail as i32 + free - 1;
        let degree = (kj + exp_tail).max(0) as usize;
        let nodes = degree / 2 + 2;
        let f = move |b: f64| free as f64 * b.powi(kj) * (1.0 - b).powi(exp_tail);
        value *= composite(&f, 0.0, 1.0, nodes, 1);
    }
    value
}

/// Monte Carlo estimate of [`sphere_moment`] with its standard error, from
/// normalized Gaussian samples.
pub fn sphere_moment_monte_carlo(k: &MultiIndex, samples: usize, seed: u64) -> (f64, f64) {
    let n = k.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    let mut abs2 = vec![0.0; n];
    for _ in 0..samples {
        let mut norm2 = 0.0;
        for a in abs2.iter_mut() {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            *a = re * re + im * im;
            norm2 += *a;
        }
        let v: f64 = k
            .exponents()
            .iter()
            .zip(&abs2)
            .map(|(&e, a)| (a / norm2).powi(e as i32))
            .product();
        sum += v;
        sum_sq += v * v;
    }
    let s = samples as f64;
    let mean = sum / s;
    let var = (sum_sq / s - mean * mean).max(0.0) * s / (s - 1.0).max(1.0);
    (mean, (var / s).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let (x, w) = gauss_legendre(5);
        let s: f64 = w.iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
        // degree 9 is the exactness limit of the 5-point rule
        let i: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(8)).sum();
        assert!((i - 2.0 / 9.0).abs() < 1e-14);
    }

    #[test]
    fn beta_moments_match_factorial_form() {
        // m! a! / (m + a + 1)!
        assert!((beta_moment(1, 0.0) - 0.5).abs() < 1e-14);
        assert!((beta_moment(2, 1.0) - 2.0 / 24.0).abs() < 1e-14);
        assert!((beta_moment(0, 2.5) - 1.0 / 3.5).abs() < 1e-13);
    }

    #[test]
    fn sphere_moments_match_closed_form() {
        // (n-1)! k! / (n - 1 + |k|)!
        let k = MultiIndex::new(vec![1, 1]);
        assert!((sphere_moment(&k) - 1.0 / 6.0).abs() < 1e-15);
        let k = MultiIndex::new(vec![2, 0, 1]);
        let expect = 2.0 * 2.0 / 120.0;
        assert!((sphere_moment(&k) - expect).abs() < 1e-15);
    }
}
