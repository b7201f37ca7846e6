//! The Grothendieck ℓ-group of a cancellative monoid of ideals, realised
//! as formal differences `∧pos - ∧neg`, and evaluation of ℓ-group terms.

mod term;

pub use term::LatticeTerm;

use serde_json::json;

use crate::entailment::{Decision, RelationHandle};
use crate::error::{Error, Result};
use crate::group::{FiniteSubset, GroupElement};
use crate::meet::{
    canonicalize, gamma_counterexample_search, ideal_add, ideal_eq, ideal_meet, preorder_leq, MeetTerm,
};
use crate::report::{SuiteReport, Tally};
use crate::sampling::Sampler;

/// `∧pos - ∧neg`. Equality is decided, never read off the representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalDifference {
    pos: MeetTerm,
    neg: MeetTerm,
}

impl FormalDifference {
    pub fn new(pos: MeetTerm, neg: MeetTerm) -> Result<Self> {
        if pos.rel() != neg.rel() {
            return Err(Error::Argument("difference of terms over different relations".into()));
        }
        Ok(Self { pos, neg })
    }

    /// `{g} - {0}`.
    pub fn of_element(rel: &RelationHandle, g: GroupElement) -> Result<Self> {
        Self::new(MeetTerm::principal(rel, g)?, MeetTerm::zero(rel))
    }

    /// `∧A - {0}`.
    pub fn of_subset(rel: &RelationHandle, a: &FiniteSubset) -> Result<Self> {
        Self::new(canonicalize(rel, a)?, MeetTerm::zero(rel))
    }

    pub fn zero(rel: &RelationHandle) -> Self {
        Self { pos: MeetTerm::zero(rel), neg: MeetTerm::zero(rel) }
    }

    pub fn pos(&self) -> &MeetTerm {
        &self.pos
    }

    pub fn neg(&self) -> &MeetTerm {
        &self.neg
    }

    pub fn rel(&self) -> &RelationHandle {
        self.pos.rel()
    }

    pub fn descriptor(&self) -> serde_json::Value {
        json!({ "pos": self.pos.support(), "neg": self.neg.support() })
    }
}

/// `a - b = c - d` iff `a + d =_⊳ c + b`, assuming cancellativity.
pub fn groth_eq(d1: &FormalDifference, d2: &FormalDifference) -> Result<Decision> {
    ideal_eq(&ideal_add(&d1.pos, &d2.neg)?, &ideal_add(&d2.pos, &d1.neg)?)
}

/// `a - b ≤ c - d` iff `a + d ≤_⊳ c + b`, assuming cancellativity.
pub fn groth_leq(d1: &FormalDifference, d2: &FormalDifference) -> Result<Decision> {
    let left = ideal_add(&d1.pos, &d2.neg)?;
    let right = ideal_add(&d2.pos, &d1.neg)?;
    preorder_leq(d1.rel(), left.support(), right.support())
}

pub fn groth_add(d1: &FormalDifference, d2: &FormalDifference) -> Result<FormalDifference> {
    FormalDifference::new(ideal_add(&d1.pos, &d2.pos)?, ideal_add(&d1.neg, &d2.neg)?)
}

pub fn groth_neg(d: &FormalDifference) -> FormalDifference {
    FormalDifference { pos: d.neg.clone(), neg: d.pos.clone() }
}

pub fn groth_sub(d1: &FormalDifference, d2: &FormalDifference) -> Result<FormalDifference> {
    groth_add(d1, &groth_neg(d2))
}

/// `((p1 + n2) ∧ (p2 + n1)) - (n1 + n2)`.
pub fn groth_meet(d1: &FormalDifference, d2: &FormalDifference) -> Result<FormalDifference> {
    let left = ideal_add(&d1.pos, &d2.neg)?;
    let right = ideal_add(&d2.pos, &d1.neg)?;
    FormalDifference::new(ideal_meet(&left, &right)?, ideal_add(&d1.neg, &d2.neg)?)
}

/// `a ∨ b = -(-a ∧ -b)`.
pub fn groth_join(d1: &FormalDifference, d2: &FormalDifference) -> Result<FormalDifference> {
    Ok(groth_neg(&groth_meet(&groth_neg(d1), &groth_neg(d2))?))
}

pub fn groth_abs(d: &FormalDifference) -> Result<FormalDifference> {
    groth_join(d, &groth_neg(d))
}

/// Search effort spent on the cancellativity check of [`LGroup`].
#[derive(Clone, Copy, Debug)]
pub struct GammaBudget {
    pub search_box: i64,
    pub set_size: usize,
    pub trials: usize,
    pub seed: u64,
}

impl Default for GammaBudget {
    fn default() -> Self {
        Self { search_box: 4, set_size: 3, trials: 200, seed: 0 }
    }
}

/// A relation whose monoid of ideals passed the cancellativity search, so
/// that formal differences form an ℓ-group.
#[derive(Clone, Debug)]
pub struct LGroup {
    rel: RelationHandle,
}

impl LGroup {
    pub fn new(rel: &RelationHandle) -> Result<Self> {
        Self::with_budget(rel, GammaBudget::default())
    }

    /// Refuses with [`Error::NotCancellative`] naming the counterexample.
    pub fn with_budget(rel: &RelationHandle, budget: GammaBudget) -> Result<Self> {
        let found =
            gamma_counterexample_search(rel, budget.search_box, budget.set_size, budget.trials, budget.seed)?;
        if let Some(c) = found {
            return Err(Error::NotCancellative(format!(
                "{}: A = {:?}, X = {:?}, b = {} give A + X ≤ b + X but not A ⊳ b",
                rel.name(),
                c.a,
                c.x,
                c.b
            )));
        }
        Ok(Self { rel: rel.clone() })
    }

    pub fn rel(&self) -> &RelationHandle {
        &self.rel
    }

    pub fn element(&self, g: GroupElement) -> Result<FormalDifference> {
        FormalDifference::of_element(&self.rel, g)
    }
}

/// Leaves `g ↦ {g} - {0}`; operations by the `groth_*` functions.
pub fn term_eval(lg: &LGroup, t: &LatticeTerm) -> Result<FormalDifference> {
    Ok(match t {
        LatticeTerm::Leaf(g) => lg.element(g.clone())?,
        LatticeTerm::Neg(a) => groth_neg(&term_eval(lg, a)?),
        LatticeTerm::Add(a, b) => groth_add(&term_eval(lg, a)?, &term_eval(lg, b)?)?,
        LatticeTerm::Meet(a, b) => groth_meet(&term_eval(lg, a)?, &term_eval(lg, b)?)?,
        LatticeTerm::Join(a, b) => groth_join(&term_eval(lg, a)?, &term_eval(lg, b)?)?,
    })
}

/// A random term with at most `depth` levels of operations.
pub fn random_term(s: &mut Sampler, depth: u32) -> LatticeTerm {
    if depth == 0 || s.coin(0.35) {
        return LatticeTerm::leaf(s.element());
    }
    match s.below(4) {
        0 => LatticeTerm::neg(random_term(s, depth - 1)),
        1 => LatticeTerm::add(random_term(s, depth - 1), random_term(s, depth - 1)),
        2 => LatticeTerm::meet(random_term(s, depth - 1), random_term(s, depth - 1)),
        _ => LatticeTerm::join(random_term(s, depth - 1), random_term(s, depth - 1)),
    }
}

const TERM_RADIUS: i64 = 3;

fn record(t: &mut Tally, d: &Decision, payload: impl FnOnce() -> serde_json::Value, weight: usize) {
    if d.is_yes() {
        t.pass();
    } else if d.is_unknown() {
        t.skip();
    } else {
        t.fail(weight.into(), payload());
    }
}

/// `(x′ + a′) ∧ (y′ + b′) ≤ (y′ + a′) ∨ (x′ + b′)` on random terms.
pub fn regularity_inequality_check(lg: &LGroup, sample_count: usize, seed: u64) -> Result<Tally> {
    let mut s = Sampler::new(lg.rel().group(), TERM_RADIUS, seed);
    let mut t = Tally::new("regularity-inequality");
    for _ in 0..sample_count {
        let terms: Vec<LatticeTerm> = (0..4).map(|_| random_term(&mut s, 1)).collect();
        let [x, y, a, b] = [0, 1, 2, 3].map(|k| term_eval(lg, &terms[k]));
        let (x, y, a, b) = (x?, y?, a?, b?);
        let lhs = groth_meet(&groth_add(&x, &a)?, &groth_add(&y, &b)?)?;
        let rhs = groth_join(&groth_add(&y, &a)?, &groth_add(&x, &b)?)?;
        let d = groth_leq(&lhs, &rhs)?;
        let weight = terms.iter().map(|t| t.to_string().len()).sum();
        record(&mut t, &d, || json!({ "x": terms[0].to_string(), "y": terms[1].to_string(), "a": terms[2].to_string(), "b": terms[3].to_string() }), weight);
    }
    Ok(t)
}

/// ℓ-group identities on random terms: `(x ∨ y) + (x ∧ y) = x + y`,
/// `x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)`, `x + (y ∧ z) = (x + y) ∧ (x + z)`,
/// together with the regularity inequality.
pub fn identity_check(lg: &LGroup, sample_count: usize, seed: u64) -> Result<SuiteReport> {
    let mut s = Sampler::new(lg.rel().group(), TERM_RADIUS, seed);
    let mut sum = Tally::new("join-meet-sum");
    let mut dist = Tally::new("distributivity");
    let mut compat = Tally::new("group-compatibility");
    for _ in 0..sample_count {
        let (xt, yt, zt) = (random_term(&mut s, 1), random_term(&mut s, 1), random_term(&mut s, 1));
        let weight = xt.to_string().len() + yt.to_string().len() + zt.to_string().len();
        let payload = || json!({ "x": xt.to_string(), "y": yt.to_string(), "z": zt.to_string() });

        let left = LatticeTerm::add(
            LatticeTerm::join(xt.clone(), yt.clone()),
            LatticeTerm::meet(xt.clone(), yt.clone()),
        );
        let right = LatticeTerm::add(xt.clone(), yt.clone());
        record(&mut sum, &groth_eq(&term_eval(lg, &left)?, &term_eval(lg, &right)?)?, payload, weight);

        let left = LatticeTerm::meet(xt.clone(), LatticeTerm::join(yt.clone(), zt.clone()));
        let right = LatticeTerm::join(
            LatticeTerm::meet(xt.clone(), yt.clone()),
            LatticeTerm::meet(xt.clone(), zt.clone()),
        );
        record(&mut dist, &groth_eq(&term_eval(lg, &left)?, &term_eval(lg, &right)?)?, payload, weight);

        let left = LatticeTerm::add(xt.clone(), LatticeTerm::meet(yt.clone(), zt.clone()));
        let right = LatticeTerm::meet(
            LatticeTerm::add(xt.clone(), yt.clone()),
            LatticeTerm::add(xt.clone(), zt.clone()),
        );
        record(&mut compat, &groth_eq(&term_eval(lg, &left)?, &term_eval(lg, &right)?)?, payload, weight);
    }
    let ineq = regularity_inequality_check(lg, sample_count, seed ^ 0x5eed)?;
    Ok(SuiteReport { suite: format!("lgroup-identities {}", lg.rel().name()), seed, results: vec![sum, dist, compat, ineq] })
}
