//! Generator sets for the worked examples and truncated submodules.

use num::{BigRational, One, Zero};

use crate::error::SpaceError;
use crate::poly::{ExactPoly, MultiIndex, OrderValue, Polynomial};
use crate::scalar::{abs_sq, qi_int, Scalar, QI};

fn mono(e: &[u32]) -> ExactPoly {
    ExactPoly::monomial(MultiIndex::new(e.to_vec()), qi_int(1, 0))
}

/// `z1, z2, z1^2, z2^2` and every monomial of degree `3..=D` in two variables.
/// The span is missing `z1 z2`, so `z2 · z1` leaves it.
pub fn ex_11_1(degree: usize) -> Vec<ExactPoly> {
    let mut gens = vec![mono(&[1, 0]), mono(&[0, 1]), mono(&[2, 0]), mono(&[0, 2])];
    for d in 3..=degree as u32 {
        gens.extend(MultiIndex::of_degree(2, d).into_iter().map(|k| ExactPoly::monomial(k, qi_int(1, 0))));
    }
    gens.retain(|g| g.degree().unwrap_or(0) as usize <= degree);
    gens
}

/// Taylor polynomial of degree `D` of the Blaschke factor `(a - z) / (1 - conj(a) z)`:
/// `a - (1 - |a|^2) sum_{j >= 1} conj(a)^{j-1} z^j`.
pub fn blaschke_series(a: &QI, degree: usize) -> ExactPoly {
    let one = QI::new(BigRational::one(), BigRational::zero());
    let c = QI::new(BigRational::one() - abs_sq(a), BigRational::zero());
    let abar = a.conjugate();
    let mut terms = vec![(MultiIndex::new(vec![0]), a.clone())];
    let mut power = one;
    for j in 1..=degree as u32 {
        terms.push((MultiIndex::new(vec![j]), -(c.clone() * power.clone())));
        power *= abar.clone();
    }
    Polynomial::from_terms(1, terms).expect("one variable")
}

/// `1, z` and `trunc_D(z^j B)` for `j = 2..=D-2`, with `B` the Blaschke factor at `a`.
pub fn ex_11_7(a: &QI, degree: usize) -> Result<Vec<ExactPoly>, SpaceError> {
    let r2 = abs_sq(a);
    if r2.is_zero() || r2 >= BigRational::one() {
        return Err(SpaceError::InvalidParameter("the Blaschke parameter needs 0 < |a| < 1".into()));
    }
    let b = blaschke_series(a, degree);
    let mut gens = vec![mono(&[0]), mono(&[1])];
    for j in 2..=degree.saturating_sub(2) as u32 {
        gens.push(b.shift(&MultiIndex::new(vec![j])).truncate(degree as u32).0);
    }
    gens.retain(|g| g.degree().unwrap_or(0) as usize <= degree);
    Ok(gens)
}

/// `f = z1 z2 + z2^2`.
pub fn ex_18_7() -> ExactPoly {
    Polynomial::from_terms(2, [(MultiIndex::new(vec![1, 1]), qi_int(1, 0)), (MultiIndex::new(vec![0, 2]), qi_int(1, 0))])
        .expect("two variables")
}

/// Spanning set `trunc_D(z^m g)`, `|m| + ord(g) <= D`, of the truncated
/// submodule generated by `gens`.
pub fn submodule<S: Scalar>(gens: &[Polynomial<S>], degree: usize) -> Vec<Polynomial<S>> {
    let mut out = Vec::new();
    for g in gens {
        let OrderValue::Finite(o) = g.ord() else { continue };
        if o as usize > degree {
            continue;
        }
        let room = degree as u32 - o;
        for k in MultiIndex::up_to_degree(g.dim(), room) {
            out.push(g.shift(&k).truncate(degree as u32).0);
        }
    }
    out
}

/// The monomials themselves, as generators.
pub fn monomial_span(set: &[MultiIndex]) -> Vec<ExactPoly> {
    set.iter().map(|k| ExactPoly::monomial(k.clone(), qi_int(1, 0))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    #[test]
    fn blaschke_constant_term_is_a() {
        let a = QI::new(rational(1, 2), rational(0, 1));
        let b = blaschke_series(&a, 6);
        assert_eq!(b.homogeneous_part(0).coeff(&MultiIndex::new(vec![0])), a);
        // -(1 - 1/4) (1/2)^2 at j = 3
        assert_eq!(b.coeff(&MultiIndex::new(vec![3])), QI::new(rational(-3, 16), rational(0, 1)));
    }

    #[test]
    fn ex_11_7_rejects_bad_parameters() {
        assert!(ex_11_7(&qi_int(0, 0), 6).is_err());
        assert!(ex_11_7(&qi_int(1, 0), 6).is_err());
        assert_eq!(ex_11_7(&QI::new(rational(1, 2), rational(0, 1)), 12).unwrap().len(), 11);
    }

    #[test]
    fn submodule_spanning_set() {
        let z1 = mono(&[1, 0]);
        let gens = submodule(&[z1], 2);
        // z1 times 1, z1, z2
        assert_eq!(gens.len(), 3);
        assert_eq!(ex_11_1(4).len(), 4 + 4 + 5);
    }
}
