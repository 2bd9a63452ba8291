//! Seeded random instances with Gaussian-rational data, sized for the exact
//! oracle (`n <= 2`, `D <= 4`).

use num::{BigInt, BigRational, Zero};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::poly::{ExactPoly, MultiIndex, Polynomial};
use crate::presets::{monomial_span, submodule};
use crate::scalar::QI;
use crate::space::SpaceKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// A few unstructured generators.
    Generic,
    /// Truncated submodule of one or two generators.
    Submodule,
    /// Span of a random set of monomials.
    MonomialSubset,
    /// Direct sum of random subspaces of homogeneous layers.
    Graded,
    /// A truncated submodule plus one extra generator.
    SubmodulePlusExtra,
    /// All monomials of degree `>= 1` but one of intermediate degree.
    MissingMonomial,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Generic,
        Family::Submodule,
        Family::MonomialSubset,
        Family::Graded,
        Family::SubmodulePlusExtra,
        Family::MissingMonomial,
    ];
}

#[derive(Clone, Debug, PartialEq)]
pub struct RandomInstance {
    pub family: Family,
    pub kind: SpaceKind,
    pub n: usize,
    pub degree: usize,
    pub generators: Vec<ExactPoly>,
}

/// `p / q` with `|p| <= max_num`, `1 <= q <= max_den`.
pub fn random_rational<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> BigRational {
    let p = rng.random_range(-max_num..=max_num);
    let q = rng.random_range(1..=max_den);
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Nonzero Gaussian rational; imaginary part present half of the time.
pub fn random_scalar<R: Rng>(rng: &mut R) -> QI {
    loop {
        let re = random_rational(rng, 4, 3);
        let im = if rng.random_bool(0.5) { random_rational(rng, 3, 2) } else { BigRational::zero() };
        let z = QI::new(re, im);
        if !z.is_zero() {
            return z;
        }
    }
}

/// Random polynomial with up to `terms` terms of degree in `min_degree..=max_degree`.
pub fn random_poly<R: Rng>(rng: &mut R, n: usize, min_degree: u32, max_degree: u32, terms: usize) -> ExactPoly {
    let pool: Vec<MultiIndex> = MultiIndex::up_to_degree(n, max_degree).into_iter().filter(|k| k.degree() >= min_degree).collect();
    loop {
        let chosen: Vec<(MultiIndex, QI)> =
            pool.choose_multiple(rng, terms.max(1).min(pool.len())).map(|k| (k.clone(), random_scalar(rng))).collect();
        let p = Polynomial::from_terms(n, chosen).expect("indices have length n");
        if !p.is_zero() {
            return p;
        }
    }
}

fn random_space<R: Rng>(rng: &mut R) -> (SpaceKind, usize, usize) {
    if rng.random_bool(0.7) {
        let n = rng.random_range(1..=2);
        let degree = rng.random_range(2..=4);
        (SpaceKind::H2Polydisk, n, degree)
    } else {
        let alpha = rng.random_range(0..=2) as f64;
        (SpaceKind::A2DiskAlpha { alpha }, 1, rng.random_range(2..=4))
    }
}

/// Generators of a random truncated submodule.
pub fn random_submodule<R: Rng>(rng: &mut R, n: usize, degree: usize) -> Vec<ExactPoly> {
    let count = rng.random_range(1..=2);
    let gens: Vec<ExactPoly> = (0..count)
        .map(|_| {
            let lo = rng.random_range(0..=(degree as u32).saturating_sub(1).min(2));
            let terms = rng.random_range(1..=3);
            random_poly(rng, n, lo, degree as u32, terms)
        })
        .collect();
    submodule(&gens, degree)
}

pub fn random_instance<R: Rng>(rng: &mut R, family: Family) -> RandomInstance {
    let (kind, n, degree) = random_space(rng);
    let d = degree as u32;
    let generators = match family {
        Family::Generic => {
            let count = rng.random_range(1..=3);
            (0..count)
                .map(|_| {
                    let terms = rng.random_range(1..=4);
                    random_poly(rng, n, 0, d, terms)
                })
                .collect()
        }
        Family::Submodule => random_submodule(rng, n, degree),
        Family::MonomialSubset => {
            let set: Vec<MultiIndex> = MultiIndex::up_to_degree(n, d).into_iter().filter(|_| rng.random_bool(0.5)).collect();
            monomial_span(&set)
        }
        Family::Graded => {
            let mut gens = Vec::new();
            for layer in 0..=d {
                let size = MultiIndex::of_degree(n, layer).len();
                let take = rng.random_range(0..=size);
                for _ in 0..take {
                    let terms = rng.random_range(1..=size);
                    gens.push(random_poly(rng, n, layer, layer, terms));
                }
            }
            gens
        }
        Family::SubmodulePlusExtra => {
            let mut gens = random_submodule(rng, n, degree);
            let terms = rng.random_range(1..=3);
            gens.push(random_poly(rng, n, 0, d, terms));
            gens
        }
        Family::MissingMonomial => {
            let all: Vec<MultiIndex> = MultiIndex::up_to_degree(n, d).into_iter().filter(|k| k.degree() >= 1).collect();
            let candidates: Vec<&MultiIndex> = all.iter().filter(|k| k.degree() >= 1 && (k.degree() as usize) < degree).collect();
            let drop = (*candidates.choose(rng).expect("D >= 2 leaves a candidate")).clone();
            monomial_span(&all.into_iter().filter(|k| *k != drop).collect::<Vec<_>>())
        }
    };
    RandomInstance { family, kind, n, degree, generators }
}

/// `count` instances cycling through every family, reproducible from `seed`.
pub fn random_instances(seed: u64, count: usize) -> Vec<RandomInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|i| random_instance(&mut rng, Family::ALL[i % Family::ALL.len()])).collect()
}

/// Random element of the span: a combination of the generators with random
/// coefficients, some of them zero.
pub fn random_combination<R: Rng>(rng: &mut R, gens: &[ExactPoly], n: usize) -> ExactPoly {
    let mut out = ExactPoly::zero(n);
    for g in gens {
        if rng.random_bool(0.4) {
            out = &out + &g.scale(&random_scalar(rng));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        let a = random_instances(11, 12);
        let b = random_instances(11, 12);
        assert_eq!(a, b);
        assert!(a.iter().all(|i| i.n <= 2 && i.degree <= 4));
        assert!(a.iter().flat_map(|i| &i.generators).all(|g| g.degree().unwrap_or(0) <= 4));
    }
}
