//! Numerical semigroups: submonoids of (ℕ, +) given by finitely many
//! positive generators, possibly all sharing a common factor.
//!
//! Membership is answered from a table built once at construction. The
//! table is derived from the Apéry set with respect to the smallest
//! generator, computed with the round-robin method.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest table we are willing to allocate (Frobenius number + largest generator).
const MAX_TABLE: u64 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericalSemigroup {
    gens: Vec<u64>,
    scale: u64,
    /// Frobenius number of the reduced semigroup (gens / scale); -1 when it is ℕ.
    frobenius: i64,
    /// `member[n]` for the reduced semigroup, 0 <= n <= frobenius + max reduced generator.
    member: Vec<bool>,
}

impl NumericalSemigroup {
    pub fn new(gens: &[u64]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::Argument("semigroup needs at least one generator".into()));
        }
        if gens.contains(&0) {
            return Err(Error::Argument("semigroup generators must be positive".into()));
        }
        let mut gens = gens.to_vec();
        gens.sort_unstable();
        gens.dedup();
        let scale = gens.iter().fold(0u64, |g, &a| g.gcd(&a));
        let reduced: Vec<u64> = gens.iter().map(|&a| a / scale).collect();
        let apery = apery_round_robin(&reduced)?;
        let smallest = reduced[0];
        let frobenius = apery.iter().map(|&n| n as i64).max().unwrap_or(0) - smallest as i64;
        let largest = *reduced.last().unwrap();
        let limit = (frobenius.max(0) as u64) + largest;
        if limit > MAX_TABLE {
            return Err(Error::Argument(format!(
                "semigroup membership table too large ({limit} entries)"
            )));
        }
        let member = (0..=limit)
            .map(|n| n >= apery[(n % smallest) as usize])
            .collect();
        Ok(Self {
            gens,
            scale,
            frobenius,
            member,
        })
    }

    pub fn generators(&self) -> &[u64] {
        &self.gens
    }

    pub fn smallest_generator(&self) -> u64 {
        self.gens[0]
    }

    /// Common factor of the generators (1 for a true numerical semigroup).
    pub fn scale(&self) -> u64 {
        self.scale
    }

    /// Frobenius number of the generated semigroup, `None` when every
    /// multiple of the scale is a member (the semigroup is `scale · ℕ`).
    ///
    /// For a scaled semigroup this is the largest multiple of the scale that
    /// is missing.
    pub fn frobenius(&self) -> Option<u64> {
        (self.frobenius >= 0).then(|| self.frobenius as u64 * self.scale)
    }

    /// Frobenius number as a signed integer, -1 standing for "none".
    pub fn frobenius_or_minus_one(&self) -> i64 {
        match self.frobenius() {
            Some(f) => f as i64,
            None => -1,
        }
    }

    /// Membership in S ∪ {0}.
    pub fn contains(&self, n: &BigInt) -> bool {
        if n.is_negative() {
            return false;
        }
        if n.is_zero() {
            return true;
        }
        let scale = BigInt::from(self.scale);
        if !n.is_multiple_of(&scale) {
            return false;
        }
        let reduced = n / &scale;
        match reduced.to_u64() {
            Some(m) if (m as usize) < self.member.len() => self.member[m as usize],
            _ => true,
        }
    }

    pub fn contains_i64(&self, n: i64) -> bool {
        self.contains(&BigInt::from(n))
    }

    /// Gaps of the reduced semigroup, scaled back.
    pub fn gaps(&self) -> Vec<u64> {
        (1..self.member.len())
            .filter(|&n| !self.member[n])
            .map(|n| n as u64 * self.scale)
            .collect()
    }
}

/// Apéry set of `gens` (gcd 1, sorted) with respect to `gens[0]`:
/// entry `r` is the smallest member congruent to `r` modulo `gens[0]`.
fn apery_round_robin(gens: &[u64]) -> Result<Vec<u64>> {
    let modulus = gens[0];
    if modulus > MAX_TABLE {
        return Err(Error::Argument(format!(
            "smallest semigroup generator {modulus} too large"
        )));
    }
    let m = modulus as usize;
    let mut best = vec![u64::MAX; m];
    best[0] = 0;
    for &a in &gens[1..] {
        let d = modulus.gcd(&a) as usize;
        for r in 0..d {
            let start = (r..m).step_by(d).map(|q| best[q]).min().unwrap_or(u64::MAX);
            if start == u64::MAX {
                continue;
            }
            let mut n = start;
            for _ in 0..(m / d) {
                n = n
                    .checked_add(a)
                    .ok_or_else(|| Error::Argument("semigroup arithmetic overflow".into()))?;
                let p = (n % modulus) as usize;
                n = n.min(best[p]);
                best[p] = n;
            }
        }
    }
    if best.contains(&u64::MAX) {
        // Only reachable when the generators are not coprime, which the caller prevents.
        return Err(Error::Argument("generators are not coprime after scaling".into()));
    }
    Ok(best)
}
