use num_rational::BigRational;

use super::{ExactField, FeasibilityProblem};
use crate::error::{Error, Result};

/// Phase-one simplex on
///
/// ```text
///   W p + s = 0,   1ᵀ p + t = 1,   p, s, t ≥ 0,   minimise t
/// ```
///
/// with Bland's smallest-index rule. The system is feasible iff the optimum is 0.
pub fn simplex_feasible<F: ExactField>(prob: &FeasibilityProblem) -> Result<Option<Vec<BigRational>>> {
    let w = prob.constraint_matrix()?;
    let m = prob.columns.len();
    let r = w.len();
    let convert = |v| F::from_bigint(v).ok_or_else(|| Error::Argument("coefficient out of range for scalar type".into()));

    // Columns: p_0..p_{m-1}, s_0..s_{r-1}, t. Last tableau column is the right-hand side.
    let n = m + r + 1;
    let t_col = m + r;
    let mut tab: Vec<Vec<F>> = Vec::with_capacity(r + 1);
    for (i, row) in w.iter().enumerate() {
        let mut line = vec![F::zero(); n + 1];
        for (j, c) in row.iter().enumerate() {
            line[j] = convert(c)?;
        }
        line[m + i] = F::one();
        tab.push(line);
    }
    let mut last = vec![F::zero(); n + 1];
    for x in last.iter_mut().take(m) {
        *x = F::one();
    }
    last[t_col] = F::one();
    last[n] = F::one();
    tab.push(last);
    let mut basis: Vec<usize> = (m..m + r).chain([t_col]).collect();

    let cost = |j: usize| if j == t_col { F::one() } else { F::zero() };

    loop {
        // Reduced cost d_j = c_j - Σ_i c_{B(i)} tab[i][j]; only t has nonzero cost.
        let entering = (0..n).find(|&j| {
            if basis.contains(&j) {
                return false;
            }
            let mut d = cost(j);
            for (i, &b) in basis.iter().enumerate() {
                if b == t_col {
                    d = d - tab[i][j].clone();
                }
            }
            d.is_negative()
        });
        let Some(col) = entering else { break };

        let mut leaving: Option<(usize, F)> = None;
        for (i, row) in tab.iter().enumerate() {
            if row[col].is_positive() {
                let ratio = row[n].clone() / row[col].clone();
                let better = match &leaving {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leaving = Some((i, ratio));
                }
            }
        }
        // The objective is bounded below by 0, so a pivot row always exists.
        let (row, _) = leaving.ok_or_else(|| Error::CrossCheck("simplex found an unbounded ray in a bounded problem".into()))?;
        pivot(&mut tab, row, col);
        basis[row] = col;
    }

    let objective = basis
        .iter()
        .position(|&b| b == t_col)
        .map(|i| tab[i][n].clone())
        .unwrap_or_else(F::zero);
    if objective.is_positive() {
        return Ok(None);
    }
    let mut p = vec![F::zero(); m];
    for (i, &b) in basis.iter().enumerate() {
        if b < m {
            p[b] = tab[i][n].clone();
        }
    }
    Ok(Some(p.iter().map(ExactField::to_big_rational).collect()))
}

fn pivot<F: ExactField>(tab: &mut [Vec<F>], row: usize, col: usize) {
    let pv = tab[row][col].clone();
    for x in tab[row].iter_mut() {
        *x = x.clone() / pv.clone();
    }
    let pivot_row = tab[row].clone();
    for (i, line) in tab.iter_mut().enumerate() {
        if i == row || line[col].is_zero() {
            continue;
        }
        let factor = line[col].clone();
        for (x, p) in line.iter_mut().zip(&pivot_row) {
            *x = x.clone() - factor.clone() * p.clone();
        }
    }
}
