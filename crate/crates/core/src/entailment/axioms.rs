use serde_json::json;

use super::{Decision, ScRelation, Witness};
use crate::error::Result;
use crate::group::{FiniteSubset, GroupElement, OrderedGroup};
use crate::report::{subset_size as set_size, SuiteReport, Tally};
use crate::sampling::Sampler;

const RADIUS: i64 = 4;
const SET_SIZE: usize = 3;

/// A deliberately defective relation: `A ⊳ b` iff `A = {b}`. Reflexive,
/// but not monotone. Used as a negative control for the axiom harness.
pub struct BrokenIdentity {
    group: OrderedGroup,
}

impl BrokenIdentity {
    pub fn new(group: &OrderedGroup) -> Self {
        Self { group: group.clone() }
    }
}

impl ScRelation for BrokenIdentity {
    fn ambient(&self) -> &OrderedGroup {
        &self.group
    }

    fn entails(&self, a: &FiniteSubset, b: &GroupElement) -> Result<Decision> {
        Ok(if a.len() == 1 && a.elems()[0] == *b {
            Decision::yes(Witness::Dominates { index: 0 })
        } else {
            Decision::no()
        })
    }

    fn label(&self) -> String {
        "broken-identity".into()
    }
}

/// `Some(true)` for Yes, `Some(false)` for No, `None` for Unknown.
fn answer<R: ScRelation + ?Sized>(rel: &R, a: &FiniteSubset, b: &GroupElement) -> Result<Option<bool>> {
    let d = rel.entails(a, b)?;
    Ok(if d.is_unknown() { None } else { Some(d.is_yes()) })
}

/// Random trials of reflexivity (S0), monotonicity (S1), cut (S2),
/// order preservation (S3) and translation equivariance (S4).
pub fn axiom_suite_sc<R: ScRelation + ?Sized>(rel: &R, sample_count: usize, seed: u64) -> Result<SuiteReport> {
    let mut s = Sampler::new(rel.ambient(), RADIUS, seed);
    let mut results = Vec::new();

    let mut t = Tally::new("S0");
    for _ in 0..sample_count {
        let a = s.element();
        match answer(rel, &FiniteSubset::singleton(a.clone()), &a)? {
            None => t.skip(),
            Some(true) => t.pass(),
            Some(false) => t.fail(a.l1_norm(), json!({ "a": a })),
        }
    }
    results.push(t);

    let mut t = Tally::new("S1");
    for _ in 0..sample_count {
        let a = s.subset(SET_SIZE);
        let b = if s.coin(0.6) { s.pick(&a).clone() + s.positive() } else { s.element() };
        let extra = s.subset(SET_SIZE);
        let wide = a.union(&extra)?;
        match answer(rel, &a, &b)? {
            None => t.skip(),
            Some(false) => t.pass(),
            Some(true) => match answer(rel, &wide, &b)? {
                None => t.skip(),
                Some(true) => t.pass(),
                Some(false) => t.fail(set_size(&wide) + b.l1_norm(), json!({ "A": a, "extra": extra, "b": b })),
            },
        }
    }
    results.push(t);

    let mut t = Tally::new("S2");
    for _ in 0..sample_count {
        let a = s.subset(SET_SIZE);
        let c = match s.below(3) {
            0 => s.pick(&a).clone() + s.positive(),
            1 => s.pick(&a.sumset(&a)?).clone(),
            _ => s.element(),
        };
        let b = match s.below(3) {
            0 => &c + &s.positive(),
            1 => s.pick(&a).clone() + s.positive(),
            _ => s.element(),
        };
        let with_c = a.with(&c)?;
        let (Some(ac), Some(acb)) = (answer(rel, &a, &c)?, answer(rel, &with_c, &b)?) else {
            t.skip();
            continue;
        };
        if !(ac && acb) {
            t.pass();
            continue;
        }
        match answer(rel, &a, &b)? {
            None => t.skip(),
            Some(true) => t.pass(),
            Some(false) => t.fail(
                set_size(&a) + c.l1_norm() + b.l1_norm(),
                json!({ "A": a, "c": c, "b": b }),
            ),
        }
    }
    results.push(t);

    let mut t = Tally::new("S3");
    for _ in 0..sample_count {
        let a = s.element();
        let b = &a + &s.positive();
        match answer(rel, &FiniteSubset::singleton(a.clone()), &b)? {
            None => t.skip(),
            Some(true) => t.pass(),
            Some(false) => t.fail(a.l1_norm() + b.l1_norm(), json!({ "a": a, "b": b })),
        }
    }
    results.push(t);

    let mut t = Tally::new("S4");
    for _ in 0..sample_count {
        let a = s.subset(SET_SIZE);
        let b = if s.coin(0.5) { s.pick(&a).clone() + s.positive() } else { s.element() };
        let x = s.element();
        let (Some(before), Some(after)) = (answer(rel, &a, &b)?, answer(rel, &a.translate(&x)?, &(&b + &x))?) else {
            t.skip();
            continue;
        };
        if before == after {
            t.pass();
        } else {
            t.fail(set_size(&a) + b.l1_norm() + x.l1_norm(), json!({ "A": a, "b": b, "x": x }));
        }
    }
    results.push(t);

    Ok(SuiteReport { suite: format!("sc-axioms {}", rel.label()), seed, results })
}

/// Counts singleton pairs with `{a} ⊳ b` but not `a ≤ b`.
pub fn order_reflection_check<R: ScRelation + ?Sized>(rel: &R, sample_count: usize, seed: u64) -> Result<Tally> {
    let mut s = Sampler::new(rel.ambient(), RADIUS, seed);
    let mut t = Tally::new("order-reflection");
    for _ in 0..sample_count {
        let a = s.element();
        let b = if s.coin(0.5) { &a + &s.element() } else { s.element() };
        match answer(rel, &FiniteSubset::singleton(a.clone()), &b)? {
            None => t.skip(),
            Some(true) if !rel.ambient().leq(&a, &b)? => {
                t.fail(a.l1_norm() + b.l1_norm(), json!({ "a": a, "b": b }));
            }
            Some(_) => t.pass(),
        }
    }
    Ok(t)
}
