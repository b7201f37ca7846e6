use super::Sequent;
use crate::entailment::{multi_forced_entails, Decision, RelationHandle, SignTree, Witness};
use crate::error::Result;
use crate::group::{FiniteSubset, GroupElement};

const POOL_LIMIT: usize = 16;
const MAX_HEIGHT: u64 = 3;
const LEAF_BUDGET: usize = 4096;

/// Case analysis on signs: find auxiliary elements `x_1, …, x_m` such that
/// `A - B ⊳ 0` holds in `base` under every choice of constraints
/// `0 ≤ ±x_k`. Candidates are the elements of `A - B`, then their pairwise
/// differences. Tree height is at most `min(depth, 3)`; each leaf forcing
/// uses `depth` as its bound. Never answers No.
pub fn sign_tree_search(base: &RelationHandle, s: &Sequent, depth: u64) -> Result<Decision> {
    let diffs = s.difference();
    let pool = pool(&diffs);
    let mut search = Search {
        base,
        diffs: &diffs,
        zero: base.group().zero(),
        pool: &pool,
        depth,
        budget: LEAF_BUDGET,
    };
    let height = depth.min(MAX_HEIGHT);
    Ok(match search.prove(&mut Vec::new(), height)? {
        Some(tree) => Decision::yes(Witness::SignTree { tree }).with_bound(depth),
        None => Decision::unknown(depth),
    })
}

/// Elements of `D`, then differences `d_i - d_j`; zero dropped, one
/// representative per `±` pair, at most `POOL_LIMIT` entries.
fn pool(diffs: &FiniteSubset) -> Vec<GroupElement> {
    let mut out: Vec<GroupElement> = Vec::new();
    let mut push = |x: GroupElement| {
        if x.is_zero() || out.len() >= POOL_LIMIT {
            return;
        }
        let neg = -&x;
        if !out.contains(&x) && !out.contains(&neg) {
            out.push(x.max(neg));
        }
    };
    for d in diffs {
        push(d.clone());
    }
    for (i, d) in diffs.iter().enumerate() {
        for e in &diffs.elems()[i + 1..] {
            push(d - e);
        }
    }
    out
}

struct Search<'a> {
    base: &'a RelationHandle,
    diffs: &'a FiniteSubset,
    zero: GroupElement,
    pool: &'a [GroupElement],
    depth: u64,
    budget: usize,
}

impl Search<'_> {
    fn leaf(&mut self, constraints: &[GroupElement]) -> Result<Option<Witness>> {
        if self.budget == 0 {
            return Ok(None);
        }
        self.budget -= 1;
        let d = if constraints.is_empty() {
            self.base.sc_entails(self.diffs, &self.zero)?
        } else {
            multi_forced_entails(self.base, constraints, self.diffs, &self.zero, self.depth)?
        };
        Ok(if d.is_yes() { d.witness } else { None })
    }

    fn prove(&mut self, path: &mut Vec<GroupElement>, height: u64) -> Result<Option<SignTree>> {
        if let Some(w) = self.leaf(path)? {
            return Ok(Some(SignTree::Leaf { witness: Box::new(w) }));
        }
        if height == 0 {
            return Ok(None);
        }
        for x in self.pool {
            if self.budget == 0 {
                return Ok(None);
            }
            let neg = -x;
            if path.iter().any(|c| c == x || *c == neg) {
                continue;
            }
            path.push(x.clone());
            let positive = self.prove(path, height - 1)?;
            path.pop();
            let Some(positive) = positive else { continue };
            path.push(neg);
            let negative = self.prove(path, height - 1)?;
            path.pop();
            if let Some(negative) = negative {
                return Ok(Some(SignTree::Split {
                    x: x.clone(),
                    positive: Box::new(positive),
                    negative: Box::new(negative),
                }));
            }
        }
        Ok(None)
    }
}
