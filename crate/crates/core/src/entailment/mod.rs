//! Single-conclusion entailment relations `A ⊳ b` on an ordered group:
//! relation handles, tri-state decisions with certificates, and forcing.

mod axioms;
mod forcing;

pub use axioms::{axiom_suite_sc, order_reflection_check, BrokenIdentity};
pub use forcing::{expand, forced_entails, min_shift, multi_forced_entails};

use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::dedekind::MonomialDomain;
use crate::error::{Error, Result};
use crate::group::{FiniteSubset, GroupElement, OrderedGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

/// Answer of a decision procedure. `Yes` always carries a witness and
/// `Unknown` always carries the exhausted bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decision {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub bound_used: Option<u64>,
}

impl Decision {
    pub fn yes(witness: Witness) -> Self {
        Self { verdict: Verdict::Yes, witness: Some(witness), bound_used: None }
    }

    pub fn no() -> Self {
        Self { verdict: Verdict::No, witness: None, bound_used: None }
    }

    pub fn unknown(bound: u64) -> Self {
        Self { verdict: Verdict::Unknown, witness: None, bound_used: Some(bound) }
    }

    pub fn with_bound(mut self, bound: u64) -> Self {
        self.bound_used = Some(bound);
        self
    }

    pub fn is_yes(&self) -> bool {
        self.verdict == Verdict::Yes
    }

    pub fn is_no(&self) -> bool {
        self.verdict == Verdict::No
    }

    pub fn is_unknown(&self) -> bool {
        self.verdict == Verdict::Unknown
    }
}

/// Certificates. Indices refer to the canonical (sorted) order of the
/// subsets in the query.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// `A[index] ≤ b`.
    Dominates { index: usize },
    /// `A[index] + Σ m_k x_k ≤ b` for the forcing constraints `x_k`.
    Shifted {
        index: usize,
        #[serde(with = "crate::json::bigint_vec")]
        multipliers: Vec<BigInt>,
    },
    /// The base relation entails `b` from `A` expanded by `steps` forcing
    /// rounds per constraint; `inner` certifies that query.
    Forced { steps: Vec<u64>, inner: Box<Witness> },
    /// One certificate per element of the right-hand side.
    Preorder { parts: Vec<Witness> },
    /// `p_ij ≥ 0`, not all zero, with `Σ p_ij (a_i - b_j) ≤ 0`.
    PMatrix {
        #[serde(with = "crate::json::bigint_matrix")]
        p: Vec<Vec<BigInt>>,
    },
    /// Case analysis on the signs of auxiliary elements.
    SignTree { tree: SignTree },
    /// `A + X ≤ b + X` in the base relation.
    Prufer { x: FiniteSubset, inner: Box<Witness> },
}

/// Each split forces `0 ≤ x` in the positive branch and `0 ≤ -x` in the
/// negative one; a leaf certifies `A - B ⊳ 0` under the constraints
/// collected on its path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignTree {
    Split { x: GroupElement, positive: Box<SignTree>, negative: Box<SignTree> },
    Leaf { witness: Box<Witness> },
}

impl SignTree {
    pub fn depth(&self) -> usize {
        match self {
            SignTree::Leaf { .. } => 0,
            SignTree::Split { positive, negative, .. } => 1 + positive.depth().max(negative.depth()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelationKind {
    /// `A ⊳ b` iff `a ≤ b` for some `a ∈ A`.
    Finest,
    /// Monomial ideal membership; the finest system on the divisibility group.
    Dedekind(MonomialDomain),
    /// The base with `0 ≤ x` forced for every constraint.
    Forced { base: Arc<RelationHandle>, constraints: Vec<GroupElement>, depth: u64 },
    /// `A ⊳ b` iff `A + X ≤ b + X` in the base for some finite `X`.
    Prufer { base: Arc<RelationHandle>, bound: u64 },
    /// Single-conclusion restriction of the regularisation of the base.
    Regularisation { base: Arc<RelationHandle>, depth: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationHandle {
    kind: RelationKind,
    group: OrderedGroup,
}

impl RelationHandle {
    pub fn finest(group: &OrderedGroup) -> Self {
        Self { kind: RelationKind::Finest, group: group.clone() }
    }

    pub fn dedekind(domain: &MonomialDomain) -> Result<Self> {
        let group = domain.divisibility_group()?;
        Ok(Self { kind: RelationKind::Dedekind(domain.clone()), group })
    }

    pub fn forced(base: &RelationHandle, constraints: Vec<GroupElement>, depth: u64) -> Result<Self> {
        if constraints.is_empty() {
            return Err(Error::Argument("forcing needs at least one constraint".into()));
        }
        for x in &constraints {
            base.group.check(x)?;
        }
        Ok(Self {
            kind: RelationKind::Forced { base: Arc::new(base.clone()), constraints, depth },
            group: base.group.clone(),
        })
    }

    pub fn prufer(base: &RelationHandle, bound: u64) -> Self {
        Self {
            kind: RelationKind::Prufer { base: Arc::new(base.clone()), bound },
            group: base.group.clone(),
        }
    }

    pub fn regularisation(base: &RelationHandle, depth: u64) -> Self {
        Self {
            kind: RelationKind::Regularisation { base: Arc::new(base.clone()), depth },
            group: base.group.clone(),
        }
    }

    pub fn kind(&self) -> &RelationKind {
        &self.kind
    }

    pub fn group(&self) -> &OrderedGroup {
        &self.group
    }

    /// Finest and Dedekind relations: `A ⊳ b` iff some `a ≤ b`.
    pub fn is_principal(&self) -> bool {
        matches!(self.kind, RelationKind::Finest | RelationKind::Dedekind(_))
    }

    /// JSON form without the group; see [`crate::json::relation_from_descriptor`].
    pub fn descriptor(&self) -> serde_json::Value {
        crate::json::relation_descriptor(self)
    }

    /// Short human-readable name.
    pub fn name(&self) -> String {
        match &self.kind {
            RelationKind::Finest => format!("finest({})", self.group.kind_name()),
            RelationKind::Dedekind(d) => format!("dedekind({})", d.name()),
            RelationKind::Forced { base, constraints, .. } => format!("forced[{}]({})", constraints.len(), base.name()),
            RelationKind::Prufer { base, .. } => format!("prufer({})", base.name()),
            RelationKind::Regularisation { base, .. } => format!("regular({})", base.name()),
        }
    }

    pub fn sc_entails(&self, a: &FiniteSubset, b: &GroupElement) -> Result<Decision> {
        self.group.check_subset(a)?;
        self.group.check(b)?;
        match &self.kind {
            RelationKind::Finest | RelationKind::Dedekind(_) => Ok(principal_entails(&self.group, a, b)),
            RelationKind::Forced { base, constraints, depth } => {
                forcing::multi_forced_entails(base, constraints, a, b, *depth)
            }
            RelationKind::Prufer { base, bound } => crate::regularise::prufer_entails(base, a, b, *bound),
            RelationKind::Regularisation { base, depth } => {
                let s = crate::regularise::Sequent::new(a.clone(), FiniteSubset::singleton(b.clone()))?;
                crate::regularise::regular_entails(base, &s, *depth)
            }
        }
    }
}

/// `A ⊳ b` for a single-conclusion relation.
pub fn sc_entails(rel: &RelationHandle, a: &FiniteSubset, b: &GroupElement) -> Result<Decision> {
    rel.sc_entails(a, b)
}

/// Anything that answers single-conclusion queries on a fixed group; lets
/// the axiom harness run on relations that are not handles.
pub trait ScRelation {
    fn ambient(&self) -> &OrderedGroup;
    fn entails(&self, a: &FiniteSubset, b: &GroupElement) -> Result<Decision>;
    fn label(&self) -> String;
}

impl ScRelation for RelationHandle {
    fn ambient(&self) -> &OrderedGroup {
        &self.group
    }

    fn entails(&self, a: &FiniteSubset, b: &GroupElement) -> Result<Decision> {
        self.sc_entails(a, b)
    }

    fn label(&self) -> String {
        self.name()
    }
}

/// Some `a ∈ A` with `a ≤ b`; the first in canonical order is the witness.
pub(crate) fn principal_entails(group: &OrderedGroup, a: &FiniteSubset, b: &GroupElement) -> Decision {
    match a.iter().position(|x| group.in_cone(&(b - x))) {
        Some(index) => Decision::yes(Witness::Dominates { index }),
        None => Decision::no(),
    }
}
