use std::collections::BTreeSet;

use num_rational::BigRational;

use super::{ExactField, FeasibilityProblem};
use crate::error::{Error, Result};

/// Give up when an elimination step produces more rows than this.
const MAX_ROWS: usize = 20_000;

/// `coeffs · p ≤ bound`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Row<F> {
    coeffs: Vec<F>,
    bound: F,
}

/// Decide the same system as the simplex by eliminating `p_0, p_1, …` in
/// turn and back-substituting. Fails with an argument error when the row
/// count explodes.
#[allow(clippy::needless_range_loop)]
pub fn fourier_motzkin_feasible<F: ExactField>(prob: &FeasibilityProblem) -> Result<Option<Vec<BigRational>>> {
    let w = prob.constraint_matrix()?;
    let m = prob.columns.len();
    let convert = |v| F::from_bigint(v).ok_or_else(|| Error::Argument("coefficient out of range for scalar type".into()));

    let mut rows = Vec::new();
    for line in &w {
        let coeffs = line.iter().map(convert).collect::<Result<Vec<F>>>()?;
        rows.push(Row { coeffs, bound: F::zero() });
    }
    for k in 0..m {
        let mut coeffs = vec![F::zero(); m];
        coeffs[k] = -F::one();
        rows.push(Row { coeffs, bound: F::zero() });
    }
    rows.push(Row { coeffs: vec![F::one(); m], bound: F::one() });
    rows.push(Row { coeffs: vec![-F::one(); m], bound: -F::one() });

    // stages[k] is the system in variables k..m.
    let mut stages = vec![normalise(rows)];
    for k in 0..m {
        let next = eliminate(stages.last().unwrap(), k)?;
        stages.push(next);
    }
    if stages[m].iter().any(|r| r.bound.is_negative()) {
        return Ok(None);
    }

    let mut p = vec![F::zero(); m];
    for k in (0..m).rev() {
        let mut lo: Option<F> = None;
        let mut hi: Option<F> = None;
        for r in &stages[k] {
            let a = &r.coeffs[k];
            if a.is_zero() {
                continue;
            }
            let mut rest = r.bound.clone();
            for j in k + 1..m {
                rest = rest - r.coeffs[j].clone() * p[j].clone();
            }
            let v = rest / a.clone();
            if a.is_positive() {
                hi = Some(hi.map_or(v.clone(), |h| h.min(v)));
            } else {
                lo = Some(lo.map_or(v.clone(), |l| l.max(v)));
            }
        }
        p[k] = match (lo, hi) {
            (Some(l), _) => l,
            (None, Some(h)) => h,
            (None, None) => F::zero(),
        };
    }
    Ok(Some(p.iter().map(ExactField::to_big_rational).collect()))
}

fn eliminate<F: ExactField>(rows: &[Row<F>], k: usize) -> Result<Vec<Row<F>>> {
    let (mut pos, mut neg, mut out) = (Vec::new(), Vec::new(), Vec::new());
    for r in rows {
        if r.coeffs[k].is_positive() {
            pos.push(r);
        } else if r.coeffs[k].is_negative() {
            neg.push(r);
        } else {
            out.push(r.clone());
        }
    }
    if out.len() + pos.len() * neg.len() > MAX_ROWS {
        return Err(Error::Argument("Fourier–Motzkin row explosion".into()));
    }
    for p in &pos {
        for n in &neg {
            let (a, b) = (p.coeffs[k].clone(), -n.coeffs[k].clone());
            let coeffs = p
                .coeffs
                .iter()
                .zip(&n.coeffs)
                .map(|(x, y)| x.clone() * b.clone() + y.clone() * a.clone())
                .collect();
            let bound = p.bound.clone() * b.clone() + n.bound.clone() * a.clone();
            out.push(Row { coeffs, bound });
        }
    }
    Ok(normalise(out))
}

/// Scale each row so its first nonzero coefficient is ±1, drop rows that
/// are trivially true, and remove duplicates.
fn normalise<F: ExactField>(rows: Vec<Row<F>>) -> Vec<Row<F>> {
    let mut out: BTreeSet<Row<F>> = BTreeSet::new();
    for mut r in rows {
        match r.coeffs.iter().find(|c| !c.is_zero()).cloned() {
            None => {
                // 0 ≤ bound: keep only violated ones so infeasibility survives.
                if r.bound.is_negative() {
                    r.bound = -F::one();
                } else {
                    continue;
                }
            }
            Some(lead) => {
                let s = lead.abs();
                for c in r.coeffs.iter_mut() {
                    *c = c.clone() / s.clone();
                }
                r.bound = r.bound / s;
            }
        }
        out.insert(r);
    }
    out.into_iter().collect()
}
