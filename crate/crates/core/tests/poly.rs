use beurling_core::axioms::check_upper_semicontinuity;
use beurling_core::poly::{ExactPoly, MultiIndex, OrderValue};
use beurling_core::random::{random_poly, random_scalar};
use beurling_core::scalar::qi_int;
use beurling_core::QI;
use num::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn poly_from_seed(seed: u64, n: usize) -> ExactPoly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_poly(&mut rng, n, (seed % 3) as u32, 5, 1 + (seed % 4) as usize)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn order_is_additive_on_products(a in any::<u64>(), b in any::<u64>(), n in 1usize..=3) {
        let p = poly_from_seed(a, n);
        let q = poly_from_seed(b, n);
        let pq = p.try_mul(&q).unwrap();
        prop_assert_eq!(pq.ord(), p.ord() + q.ord());
    }

    #[test]
    fn order_is_ultrametric(a in any::<u64>(), b in any::<u64>(), n in 1usize..=3, cancel in any::<bool>()) {
        let p = poly_from_seed(a, n);
        let q = if cancel { p.scale(&qi_int(-1, 0)).try_add(&poly_from_seed(b, n)).unwrap() } else { poly_from_seed(b, n) };
        let s = p.try_add(&q).unwrap();
        prop_assert!(s.ord() >= p.ord().min(q.ord()));
        if p.ord() != q.ord() {
            prop_assert_eq!(s.ord(), p.ord().min(q.ord()));
        }
    }

    #[test]
    fn homogeneous_parts_sum_to_p(a in any::<u64>(), n in 1usize..=3) {
        let p = poly_from_seed(a, n);
        let mut sum = ExactPoly::zero(n);
        for k in 0..=p.degree().unwrap_or(0) {
            let part = p.homogeneous_part(k);
            prop_assert!(part.terms().all(|(m, _)| m.degree() == k));
            sum = sum.try_add(&part).unwrap();
        }
        prop_assert_eq!(sum, p);
    }

    #[test]
    fn order_is_upper_semicontinuous(a in any::<u64>(), b in any::<u64>(), n in 1usize..=2) {
        let p = poly_from_seed(a, n);
        let u = poly_from_seed(b, n);
        let eps: Vec<QI> = (0..12).map(|j| QI::new(BigRational::new(1.into(), (1i64 << j).into()), BigRational::new(0.into(), 1.into()))).collect();
        let out = check_upper_semicontinuity(&p, &u, &eps).unwrap();
        prop_assert!(out.holds, "{:?}", out);
    }
}

#[test]
fn lowest_part_cancellation_raises_order_only_at_one_eps() {
    // p = z1 + z2^2, u = -z1: at eps = 1 the order jumps to 2, then returns to 1
    let z1 = ExactPoly::monomial(MultiIndex::new(vec![1, 0]), qi_int(1, 0));
    let z2sq = ExactPoly::monomial(MultiIndex::new(vec![0, 2]), qi_int(1, 0));
    let p = z1.try_add(&z2sq).unwrap();
    let u = z1.scale(&qi_int(-1, 0));
    let eps: Vec<QI> = [1, 2, 4, 8].iter().map(|&d| QI::new(BigRational::new(1.into(), d.into()), BigRational::new(0.into(), 1.into()))).collect();
    let out = check_upper_semicontinuity(&p, &u, &eps).unwrap();
    assert_eq!(out.sequence_orders[0], OrderValue::Finite(2));
    assert!(out.sequence_orders[1..].iter().all(|o| *o == OrderValue::Finite(1)));
    assert!(out.holds);
}

#[test]
fn zero_polynomial_has_infinite_order() {
    assert_eq!(ExactPoly::zero(2).ord(), OrderValue::Infinity);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let c = random_scalar(&mut rng);
    assert_eq!(ExactPoly::monomial(MultiIndex::zero(2), c).ord(), OrderValue::Finite(0));
}
