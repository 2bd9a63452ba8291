//! Shared fixtures for the benchmarks.

use beurling_core::presets;
use beurling_core::subspace::{orthonormalize, Ambient, Subspace};
use beurling_core::{make_space, ExactPoly, FloatPoly, SpaceKind, Tolerances};

/// Float span of exact generators in `kind` at dimension `n`, degree `degree`.
pub fn float_span(gens: &[ExactPoly], kind: SpaceKind, n: usize, degree: usize) -> Subspace {
    let a = Ambient::new(make_space(kind, n, degree).expect("valid space"));
    let g: Vec<FloatPoly> = gens.iter().map(ExactPoly::to_float).collect();
    orthonormalize(&g, &a, &Tolerances::default()).expect("generators fit")
}

/// Truncated submodule generated by `z1^2 - z2` (or `z1^2 - z1` for `n = 1`).
pub fn submodule_fixture(n: usize, degree: usize) -> Vec<ExactPoly> {
    let one = beurling_core::scalar::qi_int(1, 0);
    let minus = beurling_core::scalar::qi_int(-1, 0);
    let mut sq = vec![0; n];
    sq[0] = 2;
    let mut lin = vec![0; n];
    lin[n - 1] = 1;
    let g = ExactPoly::from_terms(
        n,
        [(beurling_core::MultiIndex::new(sq), one), (beurling_core::MultiIndex::new(lin), minus)],
    )
    .expect("indices match n");
    presets::submodule(&[g], degree)
}
