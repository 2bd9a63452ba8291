use std::sync::Arc;

use beurling_core::oracle::{exact_decomposition, ExactAmbient, ExactSubspace};
use beurling_core::poly::{ExactPoly, FloatPoly, MultiIndex, OrderValue};
use beurling_core::presets::monomial_span;
use beurling_core::random::{random_instance, Family};
use beurling_core::subspace::series_and_decomposition;
use beurling_core::{make_space, orthonormalize, wandering_subspace, Ambient, SpaceKind, Subspace};
use beurling_core::Tolerances;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn float_span(gens: &[ExactPoly], kind: SpaceKind, n: usize, degree: usize) -> Subspace {
    let a: Arc<Ambient> = Ambient::new(make_space(kind, n, degree).unwrap());
    let g: Vec<FloatPoly> = gens.iter().map(ExactPoly::to_float).collect();
    orthonormalize(&g, &a, &Tolerances::default()).unwrap()
}

fn family(i: usize) -> Family {
    Family::ALL[i % Family::ALL.len()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn decomposition_counts_and_orthogonality(seed in any::<u64>(), f in 0usize..6) {
        let tol = Tolerances::default();
        let inst = random_instance(&mut ChaCha8Rng::seed_from_u64(seed), family(f));
        let v = float_span(&inst.generators, inst.kind.clone(), inst.n, inst.degree);
        let (series, dec) = series_and_decomposition(&v, &tol);
        prop_assert_eq!(dec.total_dim(), v.dim());
        prop_assert!(dec.max_cross_inner_product() <= tol.orth);
        // V = W_0 + ... + W_m + V_{m+1}
        for m in 0..=inst.degree {
            let head: usize = dec.dims()[..=m].iter().sum();
            let tail = series.levels.get(m + 1).map_or(0, Subspace::dim);
            prop_assert_eq!(head + tail, v.dim());
        }
        // nested series
        for w in series.levels.windows(2) {
            prop_assert!(w[1].dim() <= w[0].dim());
            for b in w[1].basis_polys(0.0) {
                prop_assert!(w[0].contains(&b, &tol).unwrap());
            }
        }
        for (m, w) in dec.components.iter().enumerate() {
            for b in w.basis_polys(tol.prune) {
                prop_assert_eq!(b.ord(), OrderValue::Finite(m as u32));
            }
        }
    }

    #[test]
    fn exact_series_is_nested_and_graded(seed in any::<u64>(), f in 0usize..6) {
        let inst = random_instance(&mut ChaCha8Rng::seed_from_u64(seed), family(f));
        let space = make_space(inst.kind.clone(), inst.n, inst.degree).unwrap();
        let amb = ExactAmbient::new(&space).unwrap();
        let v = ExactSubspace::span(&amb, &inst.generators).unwrap();
        let dec = exact_decomposition(&amb, &v);
        prop_assert_eq!(dec.dims().iter().sum::<usize>(), v.dim());
        for w in dec.levels.windows(2) {
            prop_assert!(w[0].contains_all(&w[1].basis, amb.dim()));
        }
        for (m, w) in dec.components.iter().enumerate() {
            for b in &w.basis {
                prop_assert_eq!(amb.to_poly(b).ord(), OrderValue::Finite(m as u32));
            }
        }
    }
}

#[test]
fn ex_11_1_components() {
    let tol = Tolerances::default();
    let v = float_span(&beurling_core::presets::ex_11_1(4), SpaceKind::H2Polydisk, 2, 4);
    let (_, dec) = series_and_decomposition(&v, &tol);
    assert_eq!(dec.dims(), vec![0, 2, 2, 4, 5]);
    // no monomial is missing in degree 1, so M = span{z1, z2}
    let m = wandering_subspace(&v, &tol);
    assert_eq!(m.subspace.dim(), 2);
    for i in 0..2 {
        assert!(m.subspace.contains(&FloatPoly::coordinate(2, i), &tol).unwrap());
    }
}

/// One-variable Bergman-type spaces: whenever the wandering subspace has
/// dimension at least two it strictly contains the first nonzero component.
#[test]
fn wandering_subspace_exceeds_first_component() {
    let tol = Tolerances::default();
    let mono = |d: &[u32]| d.iter().map(|&e| MultiIndex::new(vec![e])).collect::<Vec<_>>();
    let cases: Vec<Vec<ExactPoly>> = vec![
        monomial_span(&mono(&[0, 2])),
        monomial_span(&mono(&[1, 3, 4])),
        monomial_span(&mono(&[0, 1, 3, 5])),
        monomial_span(&mono(&[2, 4, 6])),
    ];
    for alpha in [0.0, 1.0, 2.5] {
        for gens in &cases {
            let v = float_span(gens, SpaceKind::A2DiskAlpha { alpha }, 1, 6);
            let (_, dec) = series_and_decomposition(&v, &tol);
            let m = wandering_subspace(&v, &tol).subspace;
            let first = dec.components.iter().find(|w| w.dim() > 0).unwrap();
            assert!(m.dim() >= 2);
            assert!(m.dim() > first.dim());
            for b in first.basis_polys(0.0) {
                assert!(m.contains(&b, &tol).unwrap());
            }
        }
    }
}

#[test]
fn generators_above_degree_are_rejected() {
    let a = Ambient::new(make_space(SpaceKind::H2Polydisk, 1, 2).unwrap());
    let z3 = FloatPoly::monomial(MultiIndex::new(vec![3]), beurling_core::C64::new(1.0, 0.0));
    assert!(orthonormalize(&[z3], &a, &Tolerances::default()).is_err());
}
