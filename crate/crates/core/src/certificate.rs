//! Self-contained certificates and their checker. A certificate carries
//! the group, the relation, the query and the witness; checking it needs
//! nothing beyond group arithmetic, the cone test and forcing expansion.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::entailment::{expand, RelationHandle, RelationKind, SignTree, Witness};
use crate::error::{Error, Result};
use crate::group::{dot, Cone, FiniteSubset, GroupElement, OrderedGroup};
use crate::json::{group_descriptor, group_from_descriptor, relation_from_descriptor};
use crate::regularise::Sequent;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Query {
    /// `lhs ⊳ rhs`.
    Entails { lhs: FiniteSubset, rhs: GroupElement },
    /// `lhs ≤_⊳ rhs`.
    Preorder { lhs: FiniteSubset, rhs: FiniteSubset },
    /// `lhs ⊢ rhs` in a regularisation.
    Sequent { lhs: FiniteSubset, rhs: FiniteSubset },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub group: Value,
    pub relation: Value,
    pub query: Query,
    pub witness: Witness,
}

impl Certificate {
    pub fn entails(rel: &RelationHandle, a: &FiniteSubset, b: &GroupElement, witness: Witness) -> Self {
        Self::build(rel, Query::Entails { lhs: a.clone(), rhs: b.clone() }, witness)
    }

    pub fn preorder(rel: &RelationHandle, a: &FiniteSubset, b: &FiniteSubset, witness: Witness) -> Self {
        Self::build(rel, Query::Preorder { lhs: a.clone(), rhs: b.clone() }, witness)
    }

    /// `regular` must be a regularisation handle.
    pub fn sequent(regular: &RelationHandle, s: &Sequent, witness: Witness) -> Self {
        Self::build(regular, Query::Sequent { lhs: s.lhs().clone(), rhs: s.rhs().clone() }, witness)
    }

    fn build(rel: &RelationHandle, query: Query, witness: Witness) -> Self {
        Self { group: group_descriptor(rel.group()), relation: rel.descriptor(), query, witness }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verification {
    Valid,
    /// The first inequality or side condition that fails.
    Violated(String),
}

impl Verification {
    pub fn is_valid(&self) -> bool {
        *self == Verification::Valid
    }
}

type Check = std::result::Result<(), String>;

/// Errors only on certificates that cannot be read (bad descriptors, rank
/// mismatches); a readable but wrong certificate gives `Violated`.
pub fn verify(cert: &Certificate) -> Result<Verification> {
    let group = group_from_descriptor(&cert.group)?;
    let rel = relation_from_descriptor(&group, &cert.relation)?;
    let outcome = match &cert.query {
        Query::Entails { lhs, rhs } => {
            group.check_subset(lhs)?;
            group.check(rhs)?;
            verify_sc(&rel, lhs, rhs, &cert.witness)?
        }
        Query::Preorder { lhs, rhs } => {
            group.check_subset(lhs)?;
            group.check_subset(rhs)?;
            verify_preorder(&rel, lhs, rhs, &cert.witness)?
        }
        Query::Sequent { lhs, rhs } => {
            group.check_subset(lhs)?;
            group.check_subset(rhs)?;
            match rel.kind() {
                RelationKind::Regularisation { base, .. } => verify_sequent(base, lhs, rhs, &cert.witness)?,
                _ => return Err(Error::Malformed("sequent certificates need a regular relation".into())),
            }
        }
    };
    Ok(match outcome {
        Ok(()) => Verification::Valid,
        Err(msg) => Verification::Violated(msg),
    })
}

/// Why `v` is not in the positive cone, or None if it is.
fn cone_violation(group: &OrderedGroup, v: &GroupElement) -> Option<String> {
    match group.cone() {
        Cone::Product => v
            .coords()
            .iter()
            .position(Signed::is_negative)
            .map(|k| format!("coordinate {k} is {} < 0", v.coords()[k])),
        Cone::Matrix(rows) => rows.iter().enumerate().find_map(|(k, row)| {
            let value = dot(row, v.coords());
            value.is_negative().then(|| format!("cone row {k} gives {value} < 0"))
        }),
        Cone::Semigroup(s) => (!s.contains(&v.coords()[0])).then(|| {
            let gens: Vec<String> = s.generators().iter().map(u64::to_string).collect();
            format!("{} is not in ⟨{}⟩ ∪ {{0}}", v.coords()[0], gens.join(","))
        }),
        Cone::Trivial => (!v.is_zero()).then(|| format!("{v} is not zero")),
    }
}

fn check_leq(group: &OrderedGroup, a: &GroupElement, b: &GroupElement, what: &str) -> Check {
    match cone_violation(group, &(b - a)) {
        None => Ok(()),
        Some(why) => Err(format!("{what}: {a} ≤ {b} fails, since for {b} - {a} = {} {why}", b - a)),
    }
}

fn element(set: &FiniteSubset, index: usize) -> std::result::Result<&GroupElement, String> {
    set.elems()
        .get(index)
        .ok_or_else(|| format!("index {index} is out of range for a set of {} elements", set.len()))
}

fn verify_sc(rel: &RelationHandle, a: &FiniteSubset, b: &GroupElement, w: &Witness) -> Result<Check> {
    let group = rel.group();
    Ok(match (rel.kind(), w) {
        (RelationKind::Finest | RelationKind::Dedekind(_), Witness::Dominates { index }) => {
            element(a, *index).and_then(|ai| check_leq(group, ai, b, &format!("A[{index}]")))
        }
        (RelationKind::Forced { base, constraints, .. }, Witness::Shifted { index, multipliers })
            if base.is_principal() =>
        {
            if multipliers.len() != constraints.len() {
                return Ok(Err(format!(
                    "{} multipliers for {} constraints",
                    multipliers.len(),
                    constraints.len()
                )));
            }
            if let Some(k) = multipliers.iter().position(Signed::is_negative) {
                return Ok(Err(format!("multiplier {k} is {} < 0", multipliers[k])));
            }
            element(a, *index).and_then(|ai| {
                let mut shifted = ai.clone();
                for (x, m) in constraints.iter().zip(multipliers) {
                    shifted = &shifted + &x.scale(m);
                }
                check_leq(group, &shifted, b, &format!("A[{index}] + Σ m_k x_k"))
            })
        }
        (RelationKind::Forced { base, constraints, .. }, Witness::Forced { steps, inner }) => {
            if steps.len() != constraints.len() {
                return Ok(Err(format!("{} step counts for {} constraints", steps.len(), constraints.len())));
            }
            let expanded = expand(a, constraints, steps)?;
            verify_sc(base, &expanded, b, inner)?.map_err(|e| format!("after forcing {steps:?}: {e}"))
        }
        (RelationKind::Prufer { base, .. }, Witness::Prufer { x, inner }) => {
            group.check_subset(x)?;
            verify_preorder(base, &a.sumset(x)?, &x.translate(b)?, inner)?.map_err(|e| format!("A + X ≤ b + X: {e}"))
        }
        (RelationKind::Regularisation { base, .. }, _) => {
            verify_sequent(base, a, &FiniteSubset::singleton(b.clone()), w)?
        }
        (_, w) => Err(format!("a {} witness does not certify {}", witness_kind(w), rel.name())),
    })
}

fn verify_preorder(rel: &RelationHandle, a: &FiniteSubset, b: &FiniteSubset, w: &Witness) -> Result<Check> {
    let Witness::Preorder { parts } = w else {
        return Ok(Err(format!("expected a preorder witness, found {}", witness_kind(w))));
    };
    if parts.len() != b.len() {
        return Ok(Err(format!("{} parts for {} right-hand elements", parts.len(), b.len())));
    }
    for (k, (y, part)) in b.iter().zip(parts).enumerate() {
        if let Err(e) = verify_sc(rel, a, y, part)? {
            return Ok(Err(format!("part {k} (for {y}): {e}")));
        }
    }
    Ok(Ok(()))
}

/// `A ⊢ B` in the regularisation of `base`.
fn verify_sequent(base: &RelationHandle, a: &FiniteSubset, b: &FiniteSubset, w: &Witness) -> Result<Check> {
    let group = base.group();
    match w {
        Witness::PMatrix { p } => {
            if !base.is_principal() {
                return Ok(Err(format!("a p-matrix does not certify the regularisation of {}", base.name())));
            }
            if p.len() != a.len() || p.iter().any(|row| row.len() != b.len()) {
                return Ok(Err(format!("p-matrix must be {} × {}", a.len(), b.len())));
            }
            let mut sum = group.zero();
            for (i, (ai, row)) in a.iter().zip(p).enumerate() {
                for (j, (bj, pij)) in b.iter().zip(row).enumerate() {
                    if pij.is_negative() {
                        return Ok(Err(format!("p[{i}][{j}] = {pij} < 0")));
                    }
                    sum = &sum + &(ai - bj).scale(pij);
                }
            }
            if p.iter().flatten().all(Zero::is_zero) {
                return Ok(Err("p-matrix is all zero".into()));
            }
            Ok(match cone_violation(group, &-&sum) {
                None => Ok(()),
                Some(why) => Err(format!("Σ p_ij (a_i - b_j) = {sum} is not ≤ 0: for its negation {why}")),
            })
        }
        Witness::SignTree { tree } => {
            let diffs = a.difference_set(b)?;
            verify_tree(base, &diffs, &mut Vec::new(), tree)
        }
        other => Ok(Err(format!("a {} witness does not certify a sequent", witness_kind(other)))),
    }
}

fn verify_tree(base: &RelationHandle, diffs: &FiniteSubset, path: &mut Vec<GroupElement>, t: &SignTree) -> Result<Check> {
    match t {
        SignTree::Leaf { witness } => {
            let zero = base.group().zero();
            let check = if path.is_empty() {
                verify_sc(base, diffs, &zero, witness)?
            } else {
                verify_sc(&RelationHandle::forced(base, path.clone(), 0)?, diffs, &zero, witness)?
            };
            Ok(check.map_err(|e| format!("leaf under 0 ≤ {path:?}: {e}")))
        }
        SignTree::Split { x, positive, negative } => {
            base.group().check(x)?;
            if x.is_zero() {
                return Ok(Err("split on zero".into()));
            }
            for (sign, branch) in [(x.clone(), positive), (-x, negative)] {
                path.push(sign);
                let r = verify_tree(base, diffs, path, branch)?;
                path.pop();
                if r.is_err() {
                    return Ok(r);
                }
            }
            Ok(Ok(()))
        }
    }
}

fn witness_kind(w: &Witness) -> &'static str {
    match w {
        Witness::Dominates { .. } => "dominates",
        Witness::Shifted { .. } => "shifted",
        Witness::Forced { .. } => "forced",
        Witness::Preorder { .. } => "preorder",
        Witness::PMatrix { .. } => "p_matrix",
        Witness::SignTree { .. } => "sign_tree",
        Witness::Prufer { .. } => "prufer",
    }
}
