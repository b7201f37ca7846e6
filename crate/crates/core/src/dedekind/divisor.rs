use rand::Rng;
use serde_json::json;

use super::{integral_closure, MonomialDomain, MonomialIdeal};
use crate::error::{Error, Result};
use crate::group::{FiniteSubset, GroupElement};
use crate::report::Tally;
use crate::sampling::Sampler;

/// A formal difference `pos - neg` of integrally closed ideals. The
/// representation is not unique; compare with [`Divisor::eq`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisor {
    pos: MonomialIdeal,
    neg: MonomialIdeal,
}

impl Divisor {
    pub fn new(pos: &MonomialIdeal, neg: &MonomialIdeal) -> Result<Self> {
        if pos.domain() != neg.domain() {
            return Err(Error::Argument("divisor parts live in different domains".into()));
        }
        Ok(Self { pos: integral_closure(pos)?, neg: integral_closure(neg)? })
    }

    /// The divisor of the ideal generated by `gens`.
    pub fn basic(domain: &MonomialDomain, gens: &FiniteSubset) -> Result<Self> {
        Self::new(&MonomialIdeal::new(domain, gens.clone())?, &MonomialIdeal::unit(domain)?)
    }

    pub fn zero(domain: &MonomialDomain) -> Result<Self> {
        let unit = MonomialIdeal::unit(domain)?;
        Self::new(&unit, &unit)
    }

    pub fn pos(&self) -> &MonomialIdeal {
        &self.pos
    }

    pub fn neg(&self) -> &MonomialIdeal {
        &self.neg
    }

    pub fn domain(&self) -> &MonomialDomain {
        self.pos.domain()
    }

    fn same_domain(&self, other: &Divisor) -> Result<()> {
        if self.domain() != other.domain() {
            return Err(Error::Argument("divisors over different domains".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Divisor) -> Result<Self> {
        self.same_domain(other)?;
        Self::new(&self.pos.product(&other.pos)?, &self.neg.product(&other.neg)?)
    }

    pub fn negate(&self) -> Self {
        Self { pos: self.neg.clone(), neg: self.pos.clone() }
    }

    pub fn sub(&self, other: &Divisor) -> Result<Self> {
        self.add(&other.negate())
    }

    /// `(P1 - N1) ∧ (P2 - N2) = ((P1 + N2) ∧ (P2 + N1)) - (N1 + N2)`, where
    /// the meet of ideals is the closure of their sum.
    pub fn meet(&self, other: &Divisor) -> Result<Self> {
        self.same_domain(other)?;
        let left = self.pos.product(&other.neg)?;
        let right = other.pos.product(&self.neg)?;
        Self::new(&left.sum(&right)?, &self.neg.product(&other.neg)?)
    }

    pub fn join(&self, other: &Divisor) -> Result<Self> {
        Ok(self.negate().meet(&other.negate())?.negate())
    }

    /// Smaller divisors correspond to larger ideals:
    /// `D1 ≤ D2` iff `Icl(P1 + N2) ⊇ Icl(P2 + N1)`.
    pub fn leq(&self, other: &Divisor) -> Result<bool> {
        self.same_domain(other)?;
        let left = integral_closure(&self.pos.product(&other.neg)?)?;
        let right = integral_closure(&other.pos.product(&self.neg)?)?;
        left.contains_ideal(&right)
    }

    pub fn eq(&self, other: &Divisor) -> Result<bool> {
        Ok(self.leq(other)? && other.leq(self)?)
    }

    pub fn descriptor(&self) -> serde_json::Value {
        json!({ "pos": self.pos.gens(), "neg": self.neg.gens() })
    }
}

/// Random integral ideals `a, b, c` with generators in `[0, box]^d`;
/// checks `Icl(ab) ⊇ Icl(ac) ⟹ Icl(b) ⊇ Icl(c)`.
pub fn macaulay_check(domain: &MonomialDomain, trials: usize, search_box: i64, seed: u64) -> Result<Tally> {
    let group = domain.divisibility_group()?;
    let mut s = Sampler::new(&group, search_box, seed);
    let mut t = Tally::new("macaulay");
    let random_ideal = |s: &mut Sampler| -> Result<MonomialIdeal> {
        let n = s.int(1, 3) as usize;
        let gens: Vec<GroupElement> = (0..n)
            .map(|_| {
                let coords: Vec<i64> = (0..group.rank()).map(|_| s.rng().gen_range(0..=search_box)).collect();
                GroupElement::from_i64s(&coords)
            })
            .collect();
        let ideal = MonomialIdeal::new(domain, FiniteSubset::new(gens)?)?;
        // Keep integral ideals only.
        let fixed: Vec<GroupElement> = ideal
            .gens()
            .iter()
            .map(|g| if domain.monoid_contains(g).unwrap_or(false) { g.clone() } else { g + &GroupElement::from_i64s(&vec![search_box; g.rank()]) })
            .collect();
        MonomialIdeal::new(domain, FiniteSubset::new(fixed)?)
    };
    for _ in 0..trials {
        let a = random_ideal(&mut s)?;
        let b = random_ideal(&mut s)?;
        // Bias c towards ideals close to b so the antecedent holds often.
        let c = match s.below(3) {
            0 => b.clone(),
            1 => {
                let closed = integral_closure(&b)?;
                let pick = s.pick(closed.gens()).clone();
                let shifted = &pick + &GroupElement::from_i64s(&vec![s.int(0, 1); pick.rank()]);
                MonomialIdeal::new(domain, FiniteSubset::new(vec![pick, shifted])?)?
            }
            _ => random_ideal(&mut s)?,
        };
        let ab = integral_closure(&a.product(&b)?)?;
        let ac = integral_closure(&a.product(&c)?)?;
        if !ab.contains_ideal(&ac)? {
            t.pass();
            continue;
        }
        if integral_closure(&b)?.contains_ideal(&integral_closure(&c)?)? {
            t.pass();
        } else {
            let size = [a.gens(), b.gens(), c.gens()].into_iter().map(crate::report::subset_size).sum();
            t.fail(size, json!({ "a": a.gens(), "b": b.gens(), "c": c.gens() }));
        }
    }
    Ok(t)
}
