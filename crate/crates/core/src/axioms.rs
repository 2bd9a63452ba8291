//! Valuation axioms for the standard order function on polynomials, acting
//! both as the algebra `P_n` and as a module over it, plus a sequence test for
//! upper semicontinuity.

use serde::{Deserialize, Serialize};

use crate::error::PolyError;
use crate::poly::{OrderValue, Polynomial};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    /// Units (nonzero constants) have order 0.
    UnitOrderZero,
    /// `ord(r) = inf` iff `r = 0`, in the algebra.
    ZeroIffInfinite,
    /// `ord(r s) >= ord(r) + ord(s)`.
    ProductSuperadditive,
    /// `ord(lambda r) = ord(r)` for `lambda != 0`.
    ScalarInvariant,
    /// `ord(r + s) >= min(ord r, ord s)`, with equality when the orders differ.
    SumUltrametric,
    /// `ord(h) = inf` iff `h = 0`, in the module.
    ModuleZeroIffInfinite,
    /// `ord(r h) >= ord(r) + ord(h)`.
    ModuleProduct,
    ModuleScalar,
    ModuleSum,
}

impl Axiom {
    pub const ALL: [Axiom; 9] = [
        Axiom::UnitOrderZero,
        Axiom::ZeroIffInfinite,
        Axiom::ProductSuperadditive,
        Axiom::ScalarInvariant,
        Axiom::SumUltrametric,
        Axiom::ModuleZeroIffInfinite,
        Axiom::ModuleProduct,
        Axiom::ModuleScalar,
        Axiom::ModuleSum,
    ];
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomResult {
    pub axiom: Axiom,
    pub checked: usize,
    pub violations: usize,
    /// Descriptions of the first few violations.
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub results: Vec<AxiomResult>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.violations == 0)
    }

    pub fn total_violations(&self) -> usize {
        self.results.iter().map(|r| r.violations).sum()
    }

    pub fn get(&self, axiom: Axiom) -> Option<&AxiomResult> {
        self.results.iter().find(|r| r.axiom == axiom)
    }
}

const MAX_AXIOM_WITNESSES: usize = 8;

struct Tally {
    results: Vec<AxiomResult>,
}

impl Tally {
    fn record(&mut self, axiom: Axiom, ok: bool, describe: impl FnOnce() -> String) {
        let r = self.results.iter_mut().find(|r| r.axiom == axiom).expect("every axiom is tallied");
        r.checked += 1;
        if !ok {
            r.violations += 1;
            if r.witnesses.len() < MAX_AXIOM_WITNESSES {
                r.witnesses.push(describe());
            }
        }
    }
}

fn min_order(a: OrderValue, b: OrderValue) -> OrderValue {
    a.min(b)
}

/// Checks every axiom on each pair `(r, s)`; `s` doubles as the module
/// element `h`. Each nonzero `lambda` is applied to both members.
pub fn check_valuation_axioms<S: Scalar>(
    sample: &[(Polynomial<S>, Polynomial<S>)],
    lambdas: &[S],
) -> Result<AxiomReport, PolyError> {
    let mut t = Tally {
        results: Axiom::ALL
            .iter()
            .map(|&axiom| AxiomResult { axiom, checked: 0, violations: 0, witnesses: Vec::new() })
            .collect(),
    };
    for (r, s) in sample {
        let n = r.dim();
        let (or, os) = (r.ord(), s.ord());

        for (axiom, p, o) in [(Axiom::ZeroIffInfinite, r, or), (Axiom::ModuleZeroIffInfinite, s, os)] {
            t.record(axiom, (o == OrderValue::Infinity) == p.is_zero(), || format!("ord = {o} for {p:?}"));
        }

        for lambda in lambdas.iter().filter(|l| !l.is_zero()) {
            let unit = Polynomial::monomial(crate::poly::MultiIndex::zero(n), lambda.clone());
            t.record(Axiom::UnitOrderZero, unit.ord() == OrderValue::Finite(0), || {
                format!("unit {lambda:?} has order {}", unit.ord())
            });
            let lr = r.scale(lambda);
            t.record(Axiom::ScalarInvariant, lr.ord() == or, || format!("ord({lambda:?} r) = {} vs {or}", lr.ord()));
            let ls = s.scale(lambda);
            t.record(Axiom::ModuleScalar, ls.ord() == os, || format!("ord({lambda:?} h) = {} vs {os}", ls.ord()));
        }

        let rs = r.try_mul(s)?;
        let bound = or + os;
        t.record(Axiom::ProductSuperadditive, rs.ord() >= bound, || format!("ord(r s) = {} < {bound}", rs.ord()));
        t.record(Axiom::ModuleProduct, rs.ord() >= bound, || format!("ord(r h) = {} < {bound}", rs.ord()));

        for (axiom, a, b) in [(Axiom::SumUltrametric, r, s), (Axiom::ModuleSum, s, r)] {
            let sum = a.try_add(b)?;
            let lo = min_order(a.ord(), b.ord());
            let ok = sum.ord() >= lo && (a.ord() == b.ord() || sum.ord() == lo);
            t.record(axiom, ok, || format!("ord(a + b) = {} with ord a = {}, ord b = {}", sum.ord(), a.ord(), b.ord()));
            // the cancelling pair a + (-a)
            let cancel = a.try_add(&a.scale(&-S::one()))?;
            t.record(axiom, cancel.ord() == OrderValue::Infinity, || format!("ord(a - a) = {}", cancel.ord()));
        }
    }
    Ok(AxiomReport { results: t.results })
}

/// Outcome of the sequence test `p_j = p + eps_j u`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SemicontinuityOutcome {
    pub order: OrderValue,
    pub sequence_orders: Vec<OrderValue>,
    /// First index from which every `ord(p_j) <= ord(p)`.
    pub settles_at: Option<usize>,
    /// `settles_at` lies in the first half of the sequence.
    pub holds: bool,
}

/// For nonzero `p`, checks that `ord(p + eps_j u) <= ord(p)` eventually along
/// the sequence `eps` (which should tend to zero).
pub fn check_upper_semicontinuity<S: Scalar>(
    p: &Polynomial<S>,
    u: &Polynomial<S>,
    eps: &[S],
) -> Result<SemicontinuityOutcome, PolyError> {
    let order = p.ord();
    let sequence_orders = eps
        .iter()
        .map(|e| p.try_add(&u.scale(e)).map(|q| q.ord()))
        .collect::<Result<Vec<_>, _>>()?;
    let bad_tail = sequence_orders.iter().rposition(|o| *o > order);
    let settles_at = match bad_tail {
        None => Some(0),
        Some(i) if i + 1 < sequence_orders.len() => Some(i + 1),
        Some(_) => None,
    };
    let holds = !p.is_zero() && settles_at.is_some_and(|j| 2 * j <= sequence_orders.len());
    Ok(SemicontinuityOutcome { order, sequence_orders, settles_at, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{ExactPoly, MultiIndex};
    use crate::scalar::{qi_int, QI};

    fn m(e: &[u32]) -> ExactPoly {
        ExactPoly::monomial(MultiIndex::new(e.to_vec()), qi_int(1, 0))
    }

    #[test]
    fn coordinate_pair_passes() {
        let rep = check_valuation_axioms(&[(m(&[1, 0]), m(&[0, 1]))], &[qi_int(2, 1)]).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn cancellation_gives_infinity() {
        let z = m(&[1]);
        let rep = check_valuation_axioms(&[(z.clone(), z.scale(&qi_int(-1, 0)))], &[qi_int(1, 0)]).unwrap();
        assert!(rep.passed());
        assert_eq!((&z + &z.scale(&qi_int(-1, 0))).ord(), OrderValue::Infinity);
    }

    #[test]
    fn scalar_keeps_order() {
        let r = m(&[2, 0]);
        assert_eq!(r.scale(&qi_int(2, 1)).ord(), OrderValue::Finite(2));
    }

    #[test]
    fn semicontinuity_with_cancelling_direction() {
        // p = z, u = -z: p + eps u = (1 - eps) z; eps = 1 cancels
        let p = m(&[1]);
        let u = m(&[1]).scale(&qi_int(-1, 0));
        let eps: Vec<QI> = [1, 0].iter().map(|&v| qi_int(v, 0)).collect();
        let out = check_upper_semicontinuity(&p, &u, &eps).unwrap();
        assert_eq!(out.sequence_orders, vec![OrderValue::Infinity, OrderValue::Finite(1)]);
        assert_eq!(out.settles_at, Some(1));
    }
}
