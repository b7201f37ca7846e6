//! Exact feasibility of homogeneous systems: find `p ≥ 0` with `Σ p = 1`
//! such that `Σ p_k c_k` lies in the negative cone of an ordered group.
//!
//! The primary engine is a phase-one simplex with Bland's rule; small
//! problems are re-decided by Fourier–Motzkin elimination and the two
//! answers must agree. Both engines are generic over an exact ordered
//! field.

mod brute;
mod field;
mod fourier_motzkin;
mod riesz;
mod simplex;

pub use brute::brute_force_feasible;
pub use field::ExactField;
pub use fourier_motzkin::fourier_motzkin_feasible;
pub use riesz::riesz_refine;
pub use simplex::simplex_feasible;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{check_rank, Error, Result};
use crate::group::{dot, GroupElement, OrderedGroup};

/// Problems with `rank · columns` up to this size are cross-checked by
/// Fourier–Motzkin elimination.
pub const CROSS_CHECK_LIMIT: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FeasibilityProblem {
    pub columns: Vec<GroupElement>,
    #[serde(skip)]
    pub group: OrderedGroup,
}

impl FeasibilityProblem {
    pub fn new(columns: Vec<GroupElement>, group: OrderedGroup) -> Result<Self> {
        if columns.is_empty() {
            return Err(Error::Argument("feasibility problem needs at least one column".into()));
        }
        for c in &columns {
            group.check(c)?;
        }
        Ok(Self { columns, group })
    }

    pub fn from_i64s(columns: &[&[i64]], group: OrderedGroup) -> Result<Self> {
        Self::new(columns.iter().map(|c| GroupElement::from_i64s(c)).collect(), group)
    }

    /// The constraint matrix `W = R · C` of the system `W p ≤ 0`, where
    /// `R a ≥ 0` describes the cone.
    pub(crate) fn constraint_matrix(&self) -> Result<Vec<Vec<BigInt>>> {
        let rows = self
            .group
            .inequality_rows()
            .ok_or(Error::UnsupportedCone("linear feasibility (semigroup cone)"))?;
        Ok(rows
            .iter()
            .map(|r| self.columns.iter().map(|c| dot(r, c.coords())).collect())
            .collect())
    }

    /// `Σ p_k c_k`.
    pub fn combination(&self, p: &[BigInt]) -> GroupElement {
        let mut acc = self.group.zero();
        for (c, w) in self.columns.iter().zip(p) {
            acc = &acc + &c.scale(w);
        }
        acc
    }
}

/// Decide the problem with the exact rational simplex, cross-checked by
/// Fourier–Motzkin when small. Every returned witness is re-verified.
pub fn feasible(prob: &FeasibilityProblem) -> Result<Option<Vec<BigRational>>> {
    let primary = simplex_feasible::<BigRational>(prob)?;
    if let Some(p) = &primary {
        verify_rational_witness(prob, p).map_err(Error::CrossCheck)?;
    }
    if prob.group.rank() * prob.columns.len() <= CROSS_CHECK_LIMIT {
        // FM may give up on row explosion; that is not a disagreement.
        if let Ok(second) = fourier_motzkin_feasible::<BigRational>(prob) {
            if second.is_some() != primary.is_some() {
                return Err(Error::CrossCheck(format!(
                    "simplex says {}, Fourier–Motzkin says {} on columns {:?}",
                    verdict_word(primary.is_some()),
                    verdict_word(second.is_some()),
                    prob.columns
                )));
            }
            if let Some(p) = &second {
                verify_rational_witness(prob, p).map_err(Error::CrossCheck)?;
            }
        }
    }
    Ok(primary)
}

fn verdict_word(b: bool) -> &'static str {
    if b {
        "feasible"
    } else {
        "infeasible"
    }
}

/// Decide and return a primitive integer witness (denominators cleared).
pub fn feasible_integer(prob: &FeasibilityProblem) -> Result<Option<Vec<BigInt>>> {
    Ok(feasible(prob)?.map(|p| clear_denominators(&p)))
}

/// Independent witness check: nonnegativity, normalisation, and
/// `0 - Σ p_k c_k` in the cone, evaluated directly on the group.
pub fn verify_rational_witness(prob: &FeasibilityProblem, p: &[BigRational]) -> std::result::Result<(), String> {
    if p.len() != prob.columns.len() {
        return Err(format!("witness has {} entries for {} columns", p.len(), prob.columns.len()));
    }
    if let Some(k) = p.iter().position(|x| x.is_negative()) {
        return Err(format!("p[{k}] = {} is negative", p[k]));
    }
    let total: BigRational = p.iter().cloned().sum();
    if !total.is_one() {
        return Err(format!("entries sum to {total}, not 1"));
    }
    verify_integer_witness(prob, &clear_denominators(p))
}

/// `p ≥ 0`, not all zero, and `Σ p_k c_k ≤ 0` in the group order.
pub fn verify_integer_witness(prob: &FeasibilityProblem, p: &[BigInt]) -> std::result::Result<(), String> {
    if p.len() != prob.columns.len() {
        return Err(format!("witness has {} entries for {} columns", p.len(), prob.columns.len()));
    }
    if let Some(k) = p.iter().position(|x| x.is_negative()) {
        return Err(format!("p[{k}] = {} is negative", p[k]));
    }
    if p.iter().all(Zero::is_zero) {
        return Err("witness is identically zero".into());
    }
    let sum = prob.combination(p);
    check_rank(prob.group.rank(), sum.rank()).map_err(|e| e.to_string())?;
    if !prob.group.in_cone(&-&sum) {
        return Err(format!("Σ p_k c_k = {sum} is not ≤ 0"));
    }
    Ok(())
}

/// Scale a nonnegative rational vector to the primitive integer vector on the same ray.
pub fn clear_denominators(p: &[BigRational]) -> Vec<BigInt> {
    let lcm = p.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = p.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}
