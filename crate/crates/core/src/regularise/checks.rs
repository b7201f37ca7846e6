use num_bigint::BigInt;
use num_integer::Integer;
use serde_json::json;

use super::{forced_regular_entails, prufer_entails, regular_entails, Sequent};
use crate::entailment::{Decision, RelationHandle, Witness};
use crate::error::Result;
use crate::group::{shell, FiniteSubset, GroupElement};
use crate::report::{subset_size as size, SuiteReport, Tally};
use crate::sampling::Sampler;

const RADIUS: i64 = 3;
const DEPTH: u64 = 4;
const SWEEP_RADIUS: i64 = 3;

fn answer(d: &Decision) -> Option<bool> {
    if d.is_unknown() {
        None
    } else {
        Some(d.is_yes())
    }
}

fn entails(base: &RelationHandle, a: &FiniteSubset, b: &FiniteSubset) -> Result<Option<bool>> {
    Ok(answer(&regular_entails(base, &Sequent::new(a.clone(), b.clone())?, DEPTH)?))
}

fn sequent_size(a: &FiniteSubset, b: &FiniteSubset) -> BigInt {
    size(a) + size(b)
}

/// Coordinatewise `ceil((u + v) / 2)`.
fn midpoint(u: &GroupElement, v: &GroupElement) -> GroupElement {
    let two = BigInt::from(2);
    GroupElement::new((u + v).coords().iter().map(|c| c.div_ceil(&two)).collect())
}

/// Random trials of R0 (overlap), R1 (monotonicity), R2 (cut), R3 (order
/// preservation), R4 (equivariance) and R5 (if `x1 + x2 = y1 + y2` then
/// `x1, x2 ⊢ y1, y2`) for the regularisation of `base`.
pub fn regular_axiom_suite(base: &RelationHandle, sample_count: usize, seed: u64) -> Result<SuiteReport> {
    let mut s = Sampler::new(base.group(), RADIUS, seed);
    let mut results = Vec::new();

    let mut t = Tally::new("R0");
    for _ in 0..sample_count {
        let a = s.subset(3);
        let b = s.subset(2).with(s.pick(&a))?;
        match entails(base, &a, &b)? {
            None => t.skip(),
            Some(true) => t.pass(),
            Some(false) => t.fail(sequent_size(&a, &b), json!({ "A": a, "B": b })),
        }
    }
    results.push(t);

    let mut t = Tally::new("R1");
    for _ in 0..sample_count {
        let a = s.subset(3);
        let b = if s.coin(0.6) {
            let lo = s.pick(&a).clone();
            FiniteSubset::singleton(lo + s.positive()).union(&s.subset(1))?
        } else {
            s.subset(2)
        };
        let (a2, b2) = (a.union(&s.subset(2))?, b.union(&s.subset(2))?);
        match entails(base, &a, &b)? {
            None => t.skip(),
            Some(false) => t.pass(),
            Some(true) => match entails(base, &a2, &b2)? {
                None => t.skip(),
                Some(true) => t.pass(),
                Some(false) => t.fail(sequent_size(&a2, &b2), json!({ "A": a, "B": b, "A2": a2, "B2": b2 })),
            },
        }
    }
    results.push(t);

    let mut t = Tally::new("R2");
    for _ in 0..sample_count {
        let a = s.subset(3);
        let b = s.subset(2);
        let c = if s.coin(0.5) { midpoint(s.pick(&a), s.pick(&b)) } else { s.element() };
        let (Some(left), Some(right)) = (entails(base, &a, &b.with(&c)?)?, entails(base, &a.with(&c)?, &b)?) else {
            t.skip();
            continue;
        };
        if !(left && right) {
            t.pass();
            continue;
        }
        match entails(base, &a, &b)? {
            None => t.skip(),
            Some(true) => t.pass(),
            Some(false) => t.fail(
                sequent_size(&a, &b) + c.l1_norm(),
                json!({ "A": a, "B": b, "c": c }),
            ),
        }
    }
    results.push(t);

    let mut t = Tally::new("R3");
    for _ in 0..sample_count {
        let a = s.element();
        let b = &a + &s.positive();
        let (sa, sb) = (FiniteSubset::singleton(a.clone()), FiniteSubset::singleton(b.clone()));
        match entails(base, &sa, &sb)? {
            None => t.skip(),
            Some(true) => t.pass(),
            Some(false) => t.fail(a.l1_norm() + b.l1_norm(), json!({ "a": a, "b": b })),
        }
    }
    results.push(t);

    let mut t = Tally::new("R4");
    for _ in 0..sample_count {
        let q = Sequent::new(s.subset(3), s.subset(2))?;
        let x = s.element();
        let moved = q.translate(&x)?;
        let (Some(before), Some(after)) = (entails(base, q.lhs(), q.rhs())?, entails(base, moved.lhs(), moved.rhs())?)
        else {
            t.skip();
            continue;
        };
        if before == after {
            t.pass();
        } else {
            t.fail(
                sequent_size(q.lhs(), q.rhs()) + x.l1_norm(),
                json!({ "A": q.lhs(), "B": q.rhs(), "x": x }),
            );
        }
    }
    results.push(t);

    let mut t = Tally::new("R5");
    for _ in 0..sample_count {
        let (x1, x2, y1) = (s.element(), s.element(), s.element());
        let y2 = &(&x1 + &x2) - &y1;
        let lhs = FiniteSubset::new(vec![x1.clone(), x2.clone()])?;
        let rhs = FiniteSubset::new(vec![y1.clone(), y2.clone()])?;
        match entails(base, &lhs, &rhs)? {
            None => t.skip(),
            Some(true) => t.pass(),
            Some(false) => t.fail(sequent_size(&lhs, &rhs), json!({ "x": [x1, x2], "y": [y1, y2] })),
        }
    }
    results.push(t);

    Ok(SuiteReport { suite: format!("regular-axioms {}", base.name()), seed, results })
}

/// Whenever `A ⊢_x B` and `A ⊢_{-x} B` are both found, `A ⊢ B` must hold.
pub fn linearisation_check(base: &RelationHandle, sample_count: usize, seed: u64) -> Result<Tally> {
    let mut s = Sampler::new(base.group(), RADIUS, seed);
    let mut t = Tally::new("linearisation");
    for _ in 0..sample_count {
        let q = Sequent::new(s.subset(3), s.subset(2))?;
        let x = if s.coin(0.5) { s.pick(&q.difference()).clone() } else { s.element() };
        let pos = forced_regular_entails(base, &x, &q, DEPTH)?;
        let neg = forced_regular_entails(base, &-&x, &q, DEPTH)?;
        if !(pos.is_yes() && neg.is_yes()) {
            t.pass();
            continue;
        }
        match answer(&regular_entails(base, &q, DEPTH)?) {
            None => t.skip(),
            Some(true) => t.pass(),
            Some(false) => t.fail(
                sequent_size(q.lhs(), q.rhs()) + x.l1_norm(),
                json!({ "A": q.lhs(), "B": q.rhs(), "x": x }),
            ),
        }
    }
    Ok(t)
}

/// Prüfer's relation against the regularisation on sampled `(A, b)`.
///
/// `prufer-implies-regular` fails when Prüfer says Yes and the
/// regularisation does not; `agreement` fails when both decide and
/// differ. Pairs where either side is Unknown are counted as skipped.
pub fn agreement_check(
    base: &RelationHandle,
    sample_count: usize,
    seed: u64,
    prufer_bound: u64,
    depth: u64,
) -> Result<SuiteReport> {
    let mut s = Sampler::new(base.group(), RADIUS, seed);
    let mut implies = Tally::new("prufer-implies-regular");
    let mut agree = Tally::new("agreement");
    for _ in 0..sample_count {
        let a = s.subset(3);
        let b = match s.below(3) {
            0 => s.pick(&a).clone() + s.positive(),
            1 => {
                let (u, v) = (s.pick(&a).clone(), s.pick(&a).clone());
                midpoint(&u, &v)
            }
            _ => s.element(),
        };
        let p = prufer_entails(base, &a, &b, prufer_bound)?;
        let r = regular_entails(base, &Sequent::new(a.clone(), FiniteSubset::singleton(b.clone()))?, depth)?;
        let payload = || json!({ "A": a, "b": b, "prufer": p.verdict, "regular": r.verdict });
        let weight = size(&a) + b.l1_norm();

        if p.is_yes() && !r.is_yes() {
            implies.fail(weight.clone(), payload());
        } else {
            implies.pass();
        }
        match (answer(&p), answer(&r)) {
            (Some(x), Some(y)) if x != y => agree.fail(weight, payload()),
            (Some(_), Some(_)) => agree.pass(),
            _ => agree.skip(),
        }
    }
    Ok(SuiteReport { suite: format!("agreement {}", base.name()), seed, results: vec![implies, agree] })
}

/// Integral closedness. `order-reflection` fails on `{a} ⊢ {b}` without
/// `a ≤ b`; `delta` fails on `X ≤ b + X` (found by Prüfer's search from
/// `{0}`) without `0 ≤ b`. Pairs with `a = 0` are swept first in order of
/// sup-norm, then random pairs are drawn.
pub fn closedness_check(base: &RelationHandle, sample_count: usize, seed: u64, depth: u64) -> Result<SuiteReport> {
    let group = base.group();
    let mut s = Sampler::new(group, RADIUS, seed);
    let mut pairs: Vec<(GroupElement, GroupElement)> = Vec::new();
    for r in 1..=SWEEP_RADIUS {
        for b in shell(group.rank(), r) {
            pairs.push((group.zero(), b));
        }
    }
    for _ in 0..sample_count {
        pairs.push((s.element(), s.element()));
    }

    let mut reflection = Tally::new("order-reflection");
    let mut delta = Tally::new("delta");
    let zero = FiniteSubset::singleton(group.zero());
    for (a, b) in pairs {
        let q = Sequent::new(FiniteSubset::singleton(a.clone()), FiniteSubset::singleton(b.clone()))?;
        match answer(&regular_entails(base, &q, depth)?) {
            None => reflection.skip(),
            Some(true) if !group.leq(&a, &b)? => {
                reflection.fail(a.l1_norm() + b.l1_norm(), json!({ "a": a, "b": b }));
            }
            Some(_) => reflection.pass(),
        }

        let gap = &b - &a;
        let p = prufer_entails(base, &zero, &gap, depth)?;
        match &p.witness {
            Some(Witness::Prufer { x, .. }) if p.is_yes() && !group.is_nonnegative(&gap)? => {
                delta.fail(gap.l1_norm(), json!({ "b": gap, "x": x }));
            }
            _ if p.is_unknown() => delta.skip(),
            _ => delta.pass(),
        }
    }
    Ok(SuiteReport { suite: format!("closedness {}", base.name()), seed, results: vec![reflection, delta] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dedekind::MonomialDomain;
    use crate::group::OrderedGroup;

    #[test]
    fn axioms_hold_for_free_lgroups() {
        for g in [OrderedGroup::product(1).unwrap(), OrderedGroup::product(2).unwrap()] {
            let r = regular_axiom_suite(&RelationHandle::finest(&g), 120, 5).unwrap();
            assert_eq!(r.failures(), 0, "{r:?}");
            assert!(r.results.iter().all(|t| t.skipped_unknown == 0));
        }
    }

    #[test]
    fn linearisation_holds() {
        let f = RelationHandle::finest(&OrderedGroup::product(2).unwrap());
        let t = linearisation_check(&f, 60, 2).unwrap();
        assert_eq!(t.failures, 0, "{t:?}");
    }

    #[test]
    fn closedness_dichotomy() {
        let z2 = RelationHandle::finest(&OrderedGroup::product(2).unwrap());
        assert_eq!(closedness_check(&z2, 40, 1, 4).unwrap().failures(), 0);

        let s23 = RelationHandle::finest(&OrderedGroup::semigroup(&[2, 3]).unwrap());
        let r = closedness_check(&s23, 40, 1, 4).unwrap();
        let t = r.get("order-reflection").unwrap();
        assert!(t.failures > 0);
        assert_eq!(t.counterexample, Some(json!({ "a": [0], "b": [1] })));
        assert!(r.get("delta").unwrap().failures > 0);

        let ded = RelationHandle::dedekind(&MonomialDomain::semigroup_ring(&[2, 3]).unwrap()).unwrap();
        assert!(closedness_check(&ded, 20, 1, 4).unwrap().failures() > 0);
        let q = Sequent::new(FiniteSubset::from_ints(&[2]).unwrap(), FiniteSubset::from_ints(&[3]).unwrap()).unwrap();
        assert!(regular_entails(&ded, &q, 4).unwrap().is_yes());
    }

    #[test]
    fn agreement_on_small_samples() {
        let f = RelationHandle::finest(&OrderedGroup::product(2).unwrap());
        let r = agreement_check(&f, 60, 3, 4, 4).unwrap();
        assert_eq!(r.failures(), 0, "{r:?}");
        assert!(r.get("agreement").unwrap().decided() > 0);
    }
}
