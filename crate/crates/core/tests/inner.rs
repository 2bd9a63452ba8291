use beurling_core::beurling::Verdict;
use beurling_core::inner::{boundary_sample, check_inner_equivalence, is_a2alpha_inner, is_r1_inner_function, BoundaryGrid};
use beurling_core::poly::{FloatPoly, MultiIndex};
use beurling_core::presets::ex_18_7;
use beurling_core::{make_space, SpaceKind, Tolerances, C64};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_poly(seed: u64, n: usize, degrees: std::ops::RangeInclusive<u32>) -> FloatPoly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut terms = Vec::new();
    for k in degrees.flat_map(|d| MultiIndex::of_degree(n, d)) {
        if rng.random_bool(0.7) {
            terms.push((k, C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))));
        }
    }
    if terms.is_empty() {
        terms.push((MultiIndex::zero(n), C64::new(1.0, 0.0)));
    }
    FloatPoly::from_terms(n, terms).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn unimodular_scaling_keeps_verdict(seed in any::<u64>(), theta in 0.0f64..std::f64::consts::TAU) {
        let tol = Tolerances::default();
        let space = make_space(SpaceKind::A2DiskAlpha { alpha: 1.0 }, 1, 6).unwrap();
        let f = random_poly(seed, 1, 0..=3);
        let g = f.scale(&C64::from_polar(1.0, theta));
        prop_assert_eq!(
            is_r1_inner_function(&f, &space, &tol).unwrap().verdict,
            is_r1_inner_function(&g, &space, &tol).unwrap().verdict
        );
    }

    #[test]
    fn homogeneous_polynomials_are_inner_in_polydisk_hardy(seed in any::<u64>(), n in 1usize..=3, d in 0u32..=4) {
        let space = make_space(SpaceKind::H2Polydisk, n, 5).unwrap();
        let f = random_poly(seed, n, d..=d);
        prop_assert_eq!(is_r1_inner_function(&f, &space, &Tolerances::default()).unwrap().verdict, Verdict::Pass);
    }

    #[test]
    fn quadrature_and_moment_routes_agree(seed in any::<u64>(), which in 0usize..3) {
        let alpha = [0.0, 1.0, 2.5][which];
        let f = random_poly(seed, 1, 0..=8);
        let rep = check_inner_equivalence(&f, alpha, &Tolerances::default()).unwrap();
        prop_assert!(rep.a2alpha.discrepancy <= 1e-8);
    }
}

#[test]
fn ex_18_7_is_inner_in_both_hardy_spaces() {
    let f = ex_18_7().to_float();
    for kind in [SpaceKind::H2Polydisk, SpaceKind::H2Ball] {
        let space = make_space(kind, 2, 6).unwrap();
        assert_eq!(is_r1_inner_function(&f, &space, &Tolerances::default()).unwrap().verdict, Verdict::Pass);
    }
}

#[test]
fn ex_18_7_boundary_bracket() {
    let f = ex_18_7().to_float();
    for ppc in [64, 96] {
        let s = boundary_sample(&f, &BoundaryGrid::torus(2, ppc).unwrap()).unwrap();
        assert!(s.max() >= 2.0 - 1e-12 && s.min() <= 1e-12);
    }
    let s = boundary_sample(&f, &BoundaryGrid::sphere(2, 128, 5).unwrap()).unwrap();
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    assert_eq!(s.nearest(&[one, zero]), (0.0, 0.0));
    assert_eq!(s.nearest(&[zero, one]), (1.0, 0.0));
}

#[test]
fn monomials_are_a2alpha_inner_after_normalization() {
    let tol = Tolerances::default();
    for alpha in [0.0, 1.0, 2.5] {
        for m in 0..=5u32 {
            let z = FloatPoly::monomial(MultiIndex::new(vec![m]), C64::new(1.0, 0.0));
            let rep = check_inner_equivalence(&z, alpha, &tol).unwrap();
            assert_eq!(rep.r1_inner.verdict, Verdict::Pass);
            assert_eq!(rep.a2alpha.quadrature_verdict, Verdict::Pass);
        }
    }
}

#[test]
fn one_plus_z_is_not_inner() {
    let f = FloatPoly::from_terms(1, vec![(MultiIndex::new(vec![0]), C64::new(1.0, 0.0)), (MultiIndex::new(vec![1]), C64::new(1.0, 0.0))]).unwrap();
    let rep = is_a2alpha_inner(&f, 0.0, 4, &Tolerances::default()).unwrap();
    assert_eq!(rep.quadrature_verdict, Verdict::Fail);
    assert_eq!(rep.moment_verdict, Verdict::Fail);
}
