use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::FeasibilityProblem;
use crate::error::{Error, Result};
use crate::group::{Cone, GroupElement};

/// Exhaustive search over integer `p ∈ [0, bound]^m`, not all zero, with
/// `Σ p_k c_k ≤ 0`. Meant as a test oracle; works for every cone kind.
///
/// Arithmetic is checked `i128`; inputs that would overflow are rejected
/// rather than mis-decided.
pub fn brute_force_feasible(prob: &FeasibilityProblem, bound: u32) -> Result<Option<Vec<BigInt>>> {
    if bound == 0 {
        return Err(Error::Argument("oracle bound must be at least 1".into()));
    }
    let overflow = || Error::Argument("oracle arithmetic overflow".into());
    // Rows used for pruning: the cone's inequalities, or `-x ≥ 0` for a
    // semigroup cone (its negative part lies in the nonpositive integers).
    let rows = match prob.group.cone() {
        Cone::Semigroup(_) => vec![vec![BigInt::from(1)]],
        _ => prob.group.inequality_rows().expect("non-semigroup cones have inequality rows"),
    };
    let w: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| {
            prob.columns
                .iter()
                .map(|c| crate::group::dot(r, c.coords()).to_i128().ok_or_else(overflow))
                .collect()
        })
        .collect::<Result<_>>()?;
    let m = prob.columns.len();
    let b = bound as i128;
    // slack[k][i]: most row i can still decrease using columns k.. .
    let mut slack = vec![vec![0i128; w.len()]; m + 1];
    for k in (0..m).rev() {
        for (i, row) in w.iter().enumerate() {
            let step = row[k].min(0).checked_mul(b).ok_or_else(overflow)?;
            slack[k][i] = slack[k + 1][i].checked_add(step).ok_or_else(overflow)?;
        }
    }

    let mut search = Search { prob, w: &w, slack: &slack, bound: b, p: vec![0; m] };
    let mut sums = vec![0i128; w.len()];
    Ok(search.run(0, &mut sums)?.then(|| search.p.iter().map(|&x| BigInt::from(x)).collect()))
}

struct Search<'a> {
    prob: &'a FeasibilityProblem,
    w: &'a [Vec<i128>],
    slack: &'a [Vec<i128>],
    bound: i128,
    p: Vec<i128>,
}

impl Search<'_> {
    fn run(&mut self, k: usize, sums: &mut [i128]) -> Result<bool> {
        if sums.iter().zip(&self.slack[k]).any(|(s, sl)| s + sl > 0) {
            return Ok(false);
        }
        if k == self.p.len() {
            if self.p.iter().all(|&x| x == 0) {
                return Ok(false);
            }
            let p: Vec<BigInt> = self.p.iter().map(|&x| BigInt::from(x)).collect();
            let total: GroupElement = self.prob.combination(&p);
            return Ok(self.prob.group.in_cone(&-&total));
        }
        for v in 0..=self.bound {
            self.p[k] = v;
            for (i, row) in self.w.iter().enumerate() {
                sums[i] = sums[i]
                    .checked_add(row[k].checked_mul(v).ok_or_else(|| Error::Argument("oracle arithmetic overflow".into()))?)
                    .ok_or_else(|| Error::Argument("oracle arithmetic overflow".into()))?;
            }
            let found = self.run(k + 1, sums)?;
            for (i, row) in self.w.iter().enumerate() {
                sums[i] -= row[k] * v;
            }
            if found {
                return Ok(true);
            }
        }
        self.p[k] = 0;
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::OrderedGroup;

    fn z2() -> OrderedGroup {
        OrderedGroup::product(2).unwrap()
    }

    #[test]
    fn oracle_examples() {
        let p = FeasibilityProblem::from_i64s(&[&[0, -1], &[-1, 0]], z2()).unwrap();
        let w = brute_force_feasible(&p, 1).unwrap().unwrap();
        assert!(super::super::verify_integer_witness(&p, &w).is_ok());

        let p = FeasibilityProblem::from_i64s(&[&[1, 0], &[0, 1]], z2()).unwrap();
        assert_eq!(brute_force_feasible(&p, 5).unwrap(), None);

        let p = FeasibilityProblem::from_i64s(&[&[2, -1], &[-1, 2]], z2()).unwrap();
        assert_eq!(brute_force_feasible(&p, 3).unwrap(), None);
    }

    #[test]
    fn semigroup_cone_oracle() {
        // -(2·1) = -2 lies in -S for S = <2,3>, but -1 does not.
        let g = OrderedGroup::semigroup(&[2, 3]).unwrap();
        let p = FeasibilityProblem::from_i64s(&[&[1]], g.clone()).unwrap();
        assert_eq!(brute_force_feasible(&p, 3).unwrap(), None);
        let p = FeasibilityProblem::from_i64s(&[&[-1]], g).unwrap();
        assert_eq!(brute_force_feasible(&p, 3).unwrap(), Some(vec![BigInt::from(2)]));
    }

    #[test]
    fn zero_bound_is_rejected() {
        let p = FeasibilityProblem::from_i64s(&[&[1, 0]], z2()).unwrap();
        assert!(brute_force_feasible(&p, 0).is_err());
    }
}
