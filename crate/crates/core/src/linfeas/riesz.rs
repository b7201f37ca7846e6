use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Northwest-corner fill: a nonnegative integer matrix with row sums `n`
/// and column sums `m`.
pub fn riesz_refine(n: &[BigInt], m: &[BigInt]) -> Result<Vec<Vec<BigInt>>> {
    if n.is_empty() || m.is_empty() {
        return Err(Error::Argument("refinement needs nonempty margins".into()));
    }
    if n.iter().chain(m).any(Signed::is_negative) {
        return Err(Error::Argument("refinement margins must be nonnegative".into()));
    }
    let total: BigInt = n.iter().sum();
    if total != m.iter().sum::<BigInt>() {
        return Err(Error::Argument("row and column sums differ".into()));
    }
    if total.is_zero() {
        return Err(Error::Argument("refinement margins must not be all zero".into()));
    }
    let mut rows = n.to_vec();
    let mut cols = m.to_vec();
    let mut out = vec![vec![BigInt::zero(); m.len()]; n.len()];
    let (mut i, mut j) = (0, 0);
    while i < n.len() && j < m.len() {
        let t = rows[i].clone().min(cols[j].clone());
        out[i][j] = t.clone();
        rows[i] -= &t;
        cols[j] -= &t;
        if rows[i].is_zero() {
            i += 1;
        } else {
            j += 1;
        }
    }
    for (row, want) in out.iter().zip(n) {
        assert_eq!(&row.iter().sum::<BigInt>(), want, "row sum contract");
    }
    for (k, want) in m.iter().enumerate() {
        assert_eq!(&out.iter().map(|r| &r[k]).sum::<BigInt>(), want, "column sum contract");
    }
    Ok(out)
}
