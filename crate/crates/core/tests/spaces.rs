use beurling_core::poly::{FloatPoly, MultiIndex};
use beurling_core::quadrature::{sphere_moment, sphere_moment_monte_carlo};
use beurling_core::space::bergman_kernel_closed_form;
use beurling_core::{inner_product, kernel_partial_sum, make_space, SpaceKind, C64};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn kinds() -> Vec<(SpaceKind, usize)> {
    vec![
        (SpaceKind::H2Polydisk, 2),
        (SpaceKind::H2Ball, 2),
        (SpaceKind::H2Polyball { blocks: vec![1, 2] }, 3),
        (SpaceKind::A2Ball, 2),
        (SpaceKind::A2DiskAlpha { alpha: 2.5 }, 1),
    ]
}

fn random_float_poly(rng: &mut ChaCha8Rng, n: usize, degrees: std::ops::RangeInclusive<u32>) -> FloatPoly {
    let mut terms: Vec<(MultiIndex, C64)> = Vec::new();
    for k in degrees.flat_map(|d| MultiIndex::of_degree(n, d)) {
        if rng.random_bool(0.6) {
            terms.push((k, C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))));
        }
    }
    FloatPoly::from_terms(n, terms).unwrap()
}

fn factorial(v: u32) -> f64 {
    (1..=v).map(f64::from).product()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inner_product_is_positive_definite_and_hermitian(seed in any::<u64>(), which in 0usize..5) {
        let (kind, n) = kinds().swap_remove(which);
        let space = make_space(kind, n, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_float_poly(&mut rng, n, 0..=4);
        let g = random_float_poly(&mut rng, n, 0..=4);
        let ff = inner_product(&f, &f, &space).unwrap();
        prop_assert!(ff.im.abs() <= 1e-14 * ff.re.abs().max(1.0));
        prop_assert_eq!(ff.re > 0.0, !f.is_zero());
        let fg = inner_product(&f, &g, &space).unwrap();
        let gf = inner_product(&g, &f, &space).unwrap();
        prop_assert!((fg - gf.conj()).norm() <= 1e-12 * (1.0 + fg.norm()));
    }

    #[test]
    fn distinct_degrees_are_orthogonal(seed in any::<u64>(), which in 0usize..5, d1 in 0u32..=4, d2 in 0u32..=4) {
        prop_assume!(d1 != d2);
        let (kind, n) = kinds().swap_remove(which);
        let space = make_space(kind, n, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_float_poly(&mut rng, n, d1..=d1);
        let g = random_float_poly(&mut rng, n, d2..=d2);
        prop_assert_eq!(inner_product(&f, &g, &space).unwrap(), C64::new(0.0, 0.0));
    }
}

#[test]
fn polyball_weights_factor_over_blocks() {
    let pb = make_space(SpaceKind::H2Polyball { blocks: vec![2, 1, 2] }, 5, 4).unwrap();
    let b2 = make_space(SpaceKind::H2Ball, 2, 4).unwrap();
    for k in pb.monomials() {
        let e = k.exponents();
        let expected = b2.weight(&MultiIndex::new(e[0..2].to_vec())).unwrap() * b2.weight(&MultiIndex::new(e[3..5].to_vec())).unwrap();
        let w = pb.weight(k).unwrap();
        assert!((w - expected).abs() <= 1e-14 * expected, "{k}: {w} vs {expected}");
    }
}

#[test]
fn sphere_weights_match_factorial_formula() {
    // (n-1)! k! / (n-1+|k|)!
    for n in 1..=4usize {
        let space = make_space(SpaceKind::H2Ball, n, 6).unwrap();
        for k in space.monomials() {
            let kf: f64 = k.exponents().iter().map(|&e| factorial(e)).product();
            let expected = factorial(n as u32 - 1) * kf / factorial(n as u32 - 1 + k.degree());
            let w = space.weight(k).unwrap();
            assert!((w - expected).abs() <= 1e-13 * expected, "n = {n}, {k}: {w} vs {expected}");
        }
    }
}

#[test]
fn sphere_weights_agree_with_monte_carlo() {
    for (i, e) in [vec![1, 0], vec![2, 1], vec![1, 1, 1], vec![3, 0, 2], vec![0, 4]].into_iter().enumerate() {
        let k = MultiIndex::new(e);
        let exact = sphere_moment(&k);
        let (mean, se) = sphere_moment_monte_carlo(&k, 200_000, 100 + i as u64);
        assert!((mean - exact).abs() <= 3.0 * se, "{k}: {mean} +- {se} vs {exact}");
    }
}

#[test]
fn disk_alpha_weights_match_area_quadrature() {
    // (1/pi) int_disk |z|^{2m} (1 - |z|^2)^alpha dA by Simpson in r; the angle integrates to 2 pi
    let simpson = |f: &dyn Fn(f64) -> f64, n: usize| {
        let h = 1.0 / n as f64;
        let mut s = f(0.0) + f(1.0);
        for i in 1..n {
            s += f(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        s * h / 3.0
    };
    for alpha in [0.0, 1.0, 2.5] {
        let space = make_space(SpaceKind::A2DiskAlpha { alpha }, 1, 8).unwrap();
        for m in 0..=8u32 {
            let f = |r: f64| 2.0 * r.powi(2 * m as i32 + 1) * (1.0 - r * r).powf(alpha);
            let q = simpson(&f, 20_000);
            let w = space.weight(&MultiIndex::new(vec![m])).unwrap();
            assert!((w - q).abs() <= 1e-8 * w, "alpha = {alpha}, m = {m}: {w} vs {q}");
        }
    }
}

#[test]
fn ball_kernel_partial_sums_converge_monotonically() {
    let mut rng = ChaCha8Rng::seed_from_u64(81);
    for n in 1..=2usize {
        let space = make_space(SpaceKind::A2Ball, n, 25).unwrap();
        for _ in 0..10 {
            // z = w and real nonnegative coordinates give nonnegative series terms
            let z: Vec<C64> = (0..n).map(|_| C64::new(rng.random_range(0.0..0.6 / n as f64), 0.0)).collect();
            let w: Vec<C64> = if rng.random_bool(0.5) { z.clone() } else { (0..n).map(|_| C64::new(rng.random_range(0.0..0.6 / n as f64), 0.0)).collect() };
            let closed = bergman_kernel_closed_form(&z, &w);
            let mut last = f64::INFINITY;
            for k in 0..=25 {
                let err = (kernel_partial_sum(&space, &z, &w, k).unwrap() - closed).norm();
                assert!(err <= last * (1.0 + 1e-12) + 1e-15, "n = {n}, K = {k}: {err} > {last}");
                last = err;
            }
            assert!(last <= 1e-6 * closed.norm());
        }
    }
}

#[test]
fn weight_table_exports_as_csv() {
    let space = make_space(SpaceKind::A2DiskAlpha { alpha: 1.0 }, 1, 3).unwrap();
    let mut buf = Vec::new();
    space.write_weights_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn invalid_spaces_are_rejected() {
    assert!(make_space(SpaceKind::H2Polydisk, 0, 3).is_err());
    assert!(make_space(SpaceKind::H2Polydisk, 2, 0).is_err());
    assert!(make_space(SpaceKind::A2DiskAlpha { alpha: 1.0 }, 2, 3).is_err());
    assert!(make_space(SpaceKind::A2DiskAlpha { alpha: -1.0 }, 1, 3).is_err());
    assert!(make_space(SpaceKind::H2Polyball { blocks: vec![1, 1] }, 3, 3).is_err());
}
