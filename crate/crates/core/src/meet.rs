//! The monoid of ideals of a system of ideals: finite subsets up to
//! `=_⊳`, with addition by sumsets and meet by unions.

use serde::Serialize;
use serde_json::json;

use crate::entailment::{Decision, RelationHandle, Verdict, Witness};
use crate::error::{Error, Result};
use crate::group::{shell, FiniteSubset, GroupElement};
use crate::sampling::Sampler;

/// An irredundant support: no element is entailed by the others.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeetTerm {
    rel: RelationHandle,
    support: FiniteSubset,
}

impl MeetTerm {
    pub fn rel(&self) -> &RelationHandle {
        &self.rel
    }

    pub fn support(&self) -> &FiniteSubset {
        &self.support
    }

    /// The principal term `{g}`.
    pub fn principal(rel: &RelationHandle, g: GroupElement) -> Result<Self> {
        rel.group().check(&g)?;
        Ok(Self { rel: rel.clone(), support: FiniteSubset::singleton(g) })
    }

    pub fn zero(rel: &RelationHandle) -> Self {
        Self { rel: rel.clone(), support: FiniteSubset::singleton(rel.group().zero()) }
    }

    pub fn descriptor(&self) -> serde_json::Value {
        json!({ "relation": self.rel.descriptor(), "support": self.support })
    }

    fn same_rel(&self, other: &MeetTerm) -> Result<()> {
        if self.rel != other.rel {
            return Err(Error::Argument(format!(
                "terms over different relations: {} and {}",
                self.rel.name(),
                other.rel.name()
            )));
        }
        Ok(())
    }
}

/// `A ≤_⊳ B`: `A ⊳ b` for every `b ∈ B`. The Yes-witness lists one
/// certificate per element of `B`.
pub fn preorder_leq(rel: &RelationHandle, a: &FiniteSubset, b: &FiniteSubset) -> Result<Decision> {
    let mut parts = Vec::with_capacity(b.len());
    let mut unknown = None;
    for y in b {
        let d = rel.sc_entails(a, y)?;
        match d.verdict {
            Verdict::No => return Ok(Decision::no()),
            Verdict::Unknown => unknown = unknown.or(d.bound_used),
            Verdict::Yes => parts.push(d.witness.expect("Yes carries a witness")),
        }
    }
    Ok(match unknown {
        Some(bound) => Decision::unknown(bound),
        None => Decision::yes(Witness::Preorder { parts }),
    })
}

/// Greedy reduction in canonical order: drop `b` whenever the remaining
/// elements entail it.
pub fn canonicalize(rel: &RelationHandle, a: &FiniteSubset) -> Result<MeetTerm> {
    rel.group().check_subset(a)?;
    let mut current = a.clone();
    for b in a {
        if current.len() < 2 {
            break;
        }
        let index = current.iter().position(|x| x == b).expect("not yet removed");
        let rest = current.without(index).expect("at least two elements");
        let d = rel.sc_entails(&rest, b)?;
        match d.verdict {
            Verdict::Yes => current = rest,
            Verdict::No => {}
            Verdict::Unknown => {
                return Err(Error::Bounded {
                    bound: d.bound_used.unwrap_or(0),
                    context: format!("canonicalising {a:?} under {}", rel.name()),
                })
            }
        }
    }
    Ok(MeetTerm { rel: rel.clone(), support: current })
}

pub fn ideal_add(s: &MeetTerm, t: &MeetTerm) -> Result<MeetTerm> {
    s.same_rel(t)?;
    canonicalize(&s.rel, &s.support.sumset(&t.support)?)
}

pub fn ideal_meet(s: &MeetTerm, t: &MeetTerm) -> Result<MeetTerm> {
    s.same_rel(t)?;
    canonicalize(&s.rel, &s.support.union(&t.support)?)
}

/// Two-sided preorder: `S =_⊳ T`.
pub fn ideal_eq(s: &MeetTerm, t: &MeetTerm) -> Result<Decision> {
    s.same_rel(t)?;
    let left = preorder_leq(&s.rel, &s.support, &t.support)?;
    if !left.is_yes() {
        return Ok(left);
    }
    let right = preorder_leq(&s.rel, &t.support, &s.support)?;
    if !right.is_yes() {
        return Ok(right);
    }
    let parts = vec![left.witness.expect("Yes carries a witness"), right.witness.expect("Yes carries a witness")];
    Ok(Decision::yes(Witness::Preorder { parts }))
}

/// A failure of cancellativity: `A + X ≤_⊳ b + X` while `A ⊳ b` fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaCounterexample {
    pub a: FiniteSubset,
    pub x: FiniteSubset,
    pub b: GroupElement,
}

/// Checks one triple.
pub fn gamma_violated(rel: &RelationHandle, a: &FiniteSubset, x: &FiniteSubset, b: &GroupElement) -> Result<bool> {
    if !rel.sc_entails(a, b)?.is_no() {
        return Ok(false);
    }
    Ok(preorder_leq(rel, &a.sumset(x)?, &x.translate(b)?)?.is_yes())
}

/// Searches for a [`GammaCounterexample`].
///
/// The structured phase takes `A = {0}` (enough for singletons, by
/// translation) and `b` in order of sup-norm up to `search_box`, with `X`
/// drawn from `{0, b}`, `{0, b, 2b}` and the progressions `{0, c, …, k·c}`
/// for `c` in the same box. Then `trials` random triples with subsets of
/// at most `set_size` elements are tried.
pub fn gamma_counterexample_search(
    rel: &RelationHandle,
    search_box: i64,
    set_size: usize,
    trials: usize,
    seed: u64,
) -> Result<Option<GammaCounterexample>> {
    let group = rel.group();
    let zero = FiniteSubset::singleton(group.zero());
    let near = search_box.min(2);
    for r in 1..=search_box {
        for b in shell(group.rank(), r) {
            if !rel.sc_entails(&zero, &b)?.is_no() {
                continue;
            }
            let mut xs = vec![FiniteSubset::new(vec![group.zero(), b.clone()])?];
            xs.push(FiniteSubset::new(vec![group.zero(), b.clone(), b.scale_i64(2)])?);
            for rc in 1..=near {
                for c in shell(group.rank(), rc) {
                    for k in 1..=2 {
                        xs.push(FiniteSubset::new((0..=k).map(|j| c.scale_i64(j)).collect())?);
                    }
                }
            }
            for x in xs {
                if preorder_leq(rel, &x, &x.translate(&b)?)?.is_yes() {
                    return Ok(Some(GammaCounterexample { a: zero, x, b }));
                }
            }
        }
    }

    let mut s = Sampler::new(group, search_box, seed);
    for _ in 0..trials {
        let a = s.subset(set_size);
        let b = if s.coin(0.5) { s.pick(&a).clone() + s.element() } else { s.element() };
        let x = match s.below(3) {
            0 => a.with(&b)?,
            1 => s.subset(set_size),
            _ => s.subset(set_size).sumset(&a)?,
        };
        if gamma_violated(rel, &a, &x, &b)? {
            return Ok(Some(GammaCounterexample { a, x, b }));
        }
    }
    Ok(None)
}
