//! Regular entailment relations `A ⊢ B`: the regularisation of a system of
//! ideals, its exact decision in the finest and Dedekind cases, the
//! sign-case search for other bases, and the construction by Prüfer.

mod checks;
mod prufer;
mod sign_tree;

pub use checks::{agreement_check, closedness_check, linearisation_check, regular_axiom_suite};
pub use prufer::prufer_entails;
pub use sign_tree::sign_tree_search;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::dedekind::{integral_dependence, smallest_multiple_in, MonomialIdeal};
use crate::entailment::{Decision, RelationHandle, RelationKind, Witness};
use crate::error::{check_rank, Error, Result};
use crate::group::{Cone, FiniteSubset, GroupElement, OrderedGroup};
use crate::linfeas::{feasible_integer, FeasibilityProblem};

/// A multi-conclusion query `A ⊢ B`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sequent {
    lhs: FiniteSubset,
    rhs: FiniteSubset,
}

impl Sequent {
    pub fn new(lhs: FiniteSubset, rhs: FiniteSubset) -> Result<Self> {
        check_rank(lhs.rank(), rhs.rank())?;
        Ok(Self { lhs, rhs })
    }

    pub fn lhs(&self) -> &FiniteSubset {
        &self.lhs
    }

    pub fn rhs(&self) -> &FiniteSubset {
        &self.rhs
    }

    pub fn rank(&self) -> usize {
        self.lhs.rank()
    }

    /// `A - B`.
    pub fn difference(&self) -> FiniteSubset {
        self.lhs.difference_set(&self.rhs).expect("ranks checked on construction")
    }

    /// The columns `a_i - b_j`, `i`-major.
    pub fn columns(&self) -> Vec<GroupElement> {
        let mut cols = Vec::with_capacity(self.lhs.len() * self.rhs.len());
        for a in &self.lhs {
            for b in &self.rhs {
                cols.push(a - b);
            }
        }
        cols
    }

    /// The same query over the opposite order: `B ⊢ A`.
    pub fn converse(&self) -> Self {
        Self { lhs: self.rhs.clone(), rhs: self.lhs.clone() }
    }

    pub fn translate(&self, x: &GroupElement) -> Result<Self> {
        Self::new(self.lhs.translate(x)?, self.rhs.translate(x)?)
    }
}

/// The finest regular entailment relation: `A ⊢ B` iff
/// `Σ p_ij (a_i - b_j) ≤ 0` for integers `p_ij ≥ 0`, not all zero.
/// The witness is the `|A| × |B|` matrix `p`.
pub fn free_entails(group: &OrderedGroup, s: &Sequent) -> Result<Decision> {
    group.check_subset(s.lhs())?;
    group.check_subset(s.rhs())?;
    let cols = s.columns();
    let flat = match group.cone() {
        Cone::Semigroup(sg) => {
            // A nonnegative combination of positive integers is never in
            // `-(S ∪ {0})`, so some column must already be ≤ 0 in ℤ.
            let mut best: Option<(BigInt, usize)> = None;
            for (k, c) in cols.iter().enumerate() {
                let v = &c.coords()[0];
                if v.is_positive() {
                    continue;
                }
                let n = smallest_multiple_in(sg, &-v);
                if best.as_ref().is_none_or(|(m, _)| n < *m) {
                    best = Some((n, k));
                }
            }
            best.map(|(n, k)| {
                let mut p = vec![BigInt::zero(); cols.len()];
                p[k] = n;
                p
            })
        }
        _ => feasible_integer(&FeasibilityProblem::new(cols, group.clone())?)?,
    };
    Ok(match flat {
        Some(p) => Decision::yes(Witness::PMatrix { p: reshape(&p, s.rhs().len()) }),
        None => Decision::no(),
    })
}

fn reshape(flat: &[BigInt], width: usize) -> Vec<Vec<BigInt>> {
    flat.chunks(width).map(<[BigInt]>::to_vec).collect()
}

/// `A ⊢ B` in the regularisation of `base`.
///
/// Finest bases go through [`free_entails`], Dedekind bases through
/// integral dependence of `0` over the ideal generated by `A - B`. Any
/// other base is handled by [`sign_tree_search`], which may answer
/// Unknown.
pub fn regular_entails(base: &RelationHandle, s: &Sequent, depth: u64) -> Result<Decision> {
    let group = base.group();
    group.check_subset(s.lhs())?;
    group.check_subset(s.rhs())?;
    match base.kind() {
        RelationKind::Finest => free_entails(group, s),
        RelationKind::Dedekind(domain) => {
            let diffs = s.difference();
            let ideal = MonomialIdeal::new(domain, diffs)?;
            let d = integral_dependence(&ideal, &group.zero())?;
            match d.witness {
                Some(Witness::PMatrix { p }) => {
                    let gens = ideal.gens();
                    let mut out = vec![vec![BigInt::zero(); s.rhs().len()]; s.lhs().len()];
                    for (g, row) in gens.iter().zip(&p) {
                        let (i, j) = locate(s, g).ok_or_else(|| {
                            Error::CrossCheck(format!("generator {g} is not a difference of the sequent"))
                        })?;
                        out[i][j] += &row[0];
                    }
                    Ok(Decision::yes(Witness::PMatrix { p: out }))
                }
                _ => Ok(d),
            }
        }
        _ => sign_tree_search(base, s, depth),
    }
}

/// Some `(i, j)` with `a_i - b_j = g`.
fn locate(s: &Sequent, g: &GroupElement) -> Option<(usize, usize)> {
    for (i, a) in s.lhs().iter().enumerate() {
        for (j, b) in s.rhs().iter().enumerate() {
            if &(a - b) == g {
                return Some((i, j));
            }
        }
    }
    None
}

/// `A ⊢_x B`: some `p ≤ depth` with `A, A + p·x ⊢ B` in the regularisation.
/// Only the two endpoints of the progression are used. Gives up with
/// Unknown; a No is never claimed, since larger `p` might still succeed.
pub fn forced_regular_entails(
    base: &RelationHandle,
    x: &GroupElement,
    s: &Sequent,
    depth: u64,
) -> Result<Decision> {
    base.group().check(x)?;
    for p in 0..=depth {
        let shifted = s.lhs().translate(&x.scale(&BigInt::from(p)))?;
        let widened = Sequent::new(s.lhs().union(&shifted)?, s.rhs().clone())?;
        let d = regular_entails(base, &widened, depth)?;
        if let (true, Some(w)) = (d.is_yes(), d.witness) {
            return Ok(Decision::yes(Witness::Forced { steps: vec![p], inner: Box::new(w) }).with_bound(depth));
        }
    }
    Ok(Decision::unknown(depth))
}
