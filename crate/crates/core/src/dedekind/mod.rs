//! Monomial integral domains: polynomial rings `k[t_1..t_d]` and numerical
//! semigroup rings `k[t^s : s ∈ S]`. Ideals are described by exponent
//! vectors; the divisibility order on monomials is the ordered group the
//! rest of the crate works with.

mod divisor;

pub use divisor::{macaulay_check, Divisor};

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::json;

use crate::entailment::{min_shift, Decision, Witness};
use crate::error::{check_rank, Error, Result};
use crate::group::{FiniteSubset, GroupElement, OrderedGroup};
use crate::linfeas::{feasible_integer, FeasibilityProblem};
use crate::semigroup::NumericalSemigroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialDomain {
    /// `k[t_1, …, t_d]`; divisibility is the product order on ℤ^d.
    PolyRing { rank: usize },
    /// `k[S]`; divisibility is the semigroup cone on ℤ.
    SemigroupRing(Arc<NumericalSemigroup>),
    /// A ring in which every monomial `t^(step·k)`, `k ∈ ℤ`, is a unit.
    LaurentRing { step: u64 },
    /// `k[t_1, …, t_d, t^extra]`: divisibility monoid `ℕ^d + ℕ·extra`.
    Extended { rank: usize, extra: GroupElement },
}

impl MonomialDomain {
    pub fn poly_ring(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Argument("rank must be positive".into()));
        }
        Ok(Self::PolyRing { rank })
    }

    pub fn semigroup_ring(gens: &[u64]) -> Result<Self> {
        Ok(Self::SemigroupRing(Arc::new(NumericalSemigroup::new(gens)?)))
    }

    pub fn rank(&self) -> usize {
        match self {
            Self::PolyRing { rank } | Self::Extended { rank, .. } => *rank,
            Self::SemigroupRing(_) | Self::LaurentRing { .. } => 1,
        }
    }

    pub fn name(&self) -> String {
        match self {
            Self::PolyRing { rank } => format!("poly:{rank}"),
            Self::SemigroupRing(s) => format!(
                "semigroup:{}",
                s.generators().iter().map(u64::to_string).collect::<Vec<_>>().join(",")
            ),
            Self::LaurentRing { step } => format!("laurent:{step}"),
            Self::Extended { rank, extra } => format!("extended:{rank}:{extra}"),
        }
    }

    pub fn descriptor(&self) -> serde_json::Value {
        match self {
            Self::PolyRing { rank } => json!({ "kind": "poly", "rank": rank }),
            Self::SemigroupRing(s) => json!({ "kind": "semigroup", "gens": s.generators() }),
            Self::LaurentRing { step } => json!({ "kind": "laurent", "step": step }),
            Self::Extended { rank, extra } => json!({ "kind": "extended", "rank": rank, "extra": extra }),
        }
    }

    /// Divisibility group of the monomials, for the domains whose cone is
    /// one of the supported kinds.
    pub fn divisibility_group(&self) -> Result<OrderedGroup> {
        match self {
            Self::PolyRing { rank } => OrderedGroup::product(*rank),
            Self::SemigroupRing(s) => OrderedGroup::semigroup(s.generators()),
            _ => Err(Error::UnsupportedDomain(format!(
                "{} has no supported divisibility cone",
                self.name()
            ))),
        }
    }

    /// `t^v` lies in the ring (membership in the divisibility monoid).
    pub fn monoid_contains(&self, v: &GroupElement) -> Result<bool> {
        check_rank(self.rank(), v.rank())?;
        Ok(match self {
            Self::PolyRing { .. } => v.coords().iter().all(|c| !c.is_negative()),
            Self::SemigroupRing(s) => s.contains(&v.coords()[0]),
            Self::LaurentRing { step } => (&v.coords()[0] % BigInt::from(*step)).is_zero(),
            Self::Extended { rank, extra } => {
                let orthant = OrderedGroup::product(*rank)?;
                min_shift(&orthant, v, extra).is_some()
            }
        })
    }

    /// `t^a` divides `t^b`.
    pub fn divides(&self, a: &GroupElement, b: &GroupElement) -> Result<bool> {
        check_rank(self.rank(), a.rank())?;
        self.monoid_contains(&(b - a))
    }

    fn numerical(&self, what: &str) -> Result<&NumericalSemigroup> {
        match self {
            Self::SemigroupRing(s) if s.scale() == 1 => Ok(s),
            Self::SemigroupRing(_) => Err(Error::UnsupportedDomain(format!(
                "{what} needs semigroup generators with gcd 1"
            ))),
            _ => Err(Error::UnsupportedDomain(format!("{what} is not defined for {}", self.name()))),
        }
    }
}

/// A monomial (fractional) ideal, kept with an irredundant generating set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    domain: MonomialDomain,
    gens: FiniteSubset,
}

impl MonomialIdeal {
    pub fn new(domain: &MonomialDomain, gens: FiniteSubset) -> Result<Self> {
        domain.divisibility_group()?.check_subset(&gens)?;
        let mut kept: Vec<GroupElement> = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            let mut redundant = false;
            for (j, h) in gens.iter().enumerate() {
                if i != j && domain.divides(h, g)? {
                    // Under antisymmetry only a distinct divisor makes g redundant.
                    redundant = true;
                    break;
                }
            }
            if !redundant {
                kept.push(g.clone());
            }
        }
        Ok(Self { domain: domain.clone(), gens: FiniteSubset::new(kept)? })
    }

    pub fn from_i64s(domain: &MonomialDomain, gens: &[&[i64]]) -> Result<Self> {
        Self::new(domain, FiniteSubset::from_i64s(gens)?)
    }

    /// Rank-one convenience.
    pub fn from_ints(domain: &MonomialDomain, gens: &[i64]) -> Result<Self> {
        Self::new(domain, FiniteSubset::from_ints(gens)?)
    }

    /// The ring itself.
    pub fn unit(domain: &MonomialDomain) -> Result<Self> {
        Self::new(domain, FiniteSubset::singleton(GroupElement::zero(domain.rank())))
    }

    pub fn domain(&self) -> &MonomialDomain {
        &self.domain
    }

    pub fn gens(&self) -> &FiniteSubset {
        &self.gens
    }

    /// All generators lie in the ring.
    pub fn is_integral(&self) -> Result<bool> {
        for g in &self.gens {
            if !self.domain.monoid_contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn contains(&self, b: &GroupElement) -> Result<bool> {
        ideal_member(self, b)
    }

    /// `self ⊇ other` as ideals.
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> Result<bool> {
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<Self> {
        Self::new(&self.domain, self.gens.sumset(&other.gens)?)
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<Self> {
        Self::new(&self.domain, self.gens.union(&other.gens)?)
    }

    pub fn translate(&self, x: &GroupElement) -> Result<Self> {
        Self::new(&self.domain, self.gens.translate(x)?)
    }
}

/// `t^b ∈ ⟨t^a : a ∈ gens⟩`.
pub fn ideal_member(ideal: &MonomialIdeal, b: &GroupElement) -> Result<bool> {
    for a in &ideal.gens {
        if ideal.domain.divides(a, b)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Is `t^b` integral over the ideal? The Yes-witness is a one-column
/// p-matrix `k_i` with `Σ k_i (a_i - b) ≤ 0` in the divisibility order.
pub fn integral_dependence(ideal: &MonomialIdeal, b: &GroupElement) -> Result<Decision> {
    let group = ideal.domain.divisibility_group()?;
    group.check(b)?;
    match &ideal.domain {
        MonomialDomain::PolyRing { .. } => newton_dependence(&group, ideal.gens(), b),
        MonomialDomain::SemigroupRing(_) => {
            let s = ideal.domain.numerical("integral dependence")?;
            let fast = semigroup_dependence(s, ideal.gens(), b);
            let oracle = semigroup_dependence_search(s, ideal.gens(), b)?;
            if fast.is_yes() != oracle {
                return Err(Error::CrossCheck(format!(
                    "closed form and k-fold search disagree on b = {b} over {:?}",
                    ideal.gens()
                )));
            }
            Ok(fast)
        }
        _ => unreachable!("divisibility_group rejects other domains"),
    }
}

/// `b ∈ conv(gens) + ℝ^d_{≥0}`, decided as the feasibility of
/// `Σ λ_i (a_i - b) ≤ 0`.
fn newton_dependence(group: &OrderedGroup, gens: &FiniteSubset, b: &GroupElement) -> Result<Decision> {
    let prob = FeasibilityProblem::new(gens.iter().map(|a| a - b).collect(), group.clone())?;
    Ok(match feasible_integer(&prob)? {
        Some(k) => Decision::yes(Witness::PMatrix { p: k.into_iter().map(|x| vec![x]).collect() }),
        None => Decision::no(),
    })
}

/// Closed form: integral iff `b ≥ min gens` in ℤ.
fn semigroup_dependence(s: &NumericalSemigroup, gens: &FiniteSubset, b: &GroupElement) -> Decision {
    let (index, a) = gens
        .iter()
        .enumerate()
        .min_by(|x, y| x.1.cmp(y.1))
        .expect("nonempty generators");
    let c = &b.coords()[0] - &a.coords()[0];
    if c.is_negative() {
        return Decision::no();
    }
    let n = smallest_multiple_in(s, &c);
    let mut p = vec![vec![BigInt::zero()]; gens.len()];
    p[index][0] = n;
    Decision::yes(Witness::PMatrix { p })
}

/// Smallest `n ≥ 1` with `n·c ∈ S ∪ {0}`, for `c ≥ 0`.
pub(crate) fn smallest_multiple_in(s: &NumericalSemigroup, c: &BigInt) -> BigInt {
    let mut n = BigInt::from(1);
    while !s.contains(&(&n * c)) {
        n += 1;
    }
    n
}

/// Determinant-trick form: some `k ≥ 1` with `k·b ∈ k·gens + S ∪ {0}`,
/// searched up to `k* = ceil((F + 1) / max(1, b - min gens))`.
fn semigroup_dependence_search(s: &NumericalSemigroup, gens: &FiniteSubset, b: &GroupElement) -> Result<bool> {
    let min = gens.elems()[0].coords()[0].clone();
    let b = b.coords()[0].clone();
    let f = BigInt::from(s.frobenius_or_minus_one());
    let gap = (&b - &min).max(BigInt::from(1));
    let k_max: BigInt = (&f + &gap) / &gap;
    let k_max = k_max.max(BigInt::from(1));
    let k_max = k_max
        .to_usize()
        .filter(|&k| k <= 4096)
        .ok_or_else(|| Error::Argument("integral dependence search bound too large".into()))?;
    let mut sums = gens.clone();
    for k in 1..=k_max {
        if k > 1 {
            sums = sums.sumset(gens)?;
        }
        let target = BigInt::from(k) * &b;
        if sums.iter().any(|g| s.contains(&(&target - &g.coords()[0]))) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Integral closure, as an ideal of the same kind.
///
/// Polynomial rings: minimal lattice points of the Newton polyhedron, all
/// of which lie in the bounding box of the generators. Semigroup rings: an
/// integral ideal closes to `{b ∈ S ∪ {0} : b ≥ min gens}`, a fractional one
/// to `{b : b ≥ min gens}`.
pub fn integral_closure(ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
    let domain = &ideal.domain;
    match domain {
        MonomialDomain::PolyRing { rank } => {
            let group = domain.divisibility_group()?;
            let lo: Vec<i64> = (0..*rank).map(|k| coord_bound(ideal, k, false)).collect::<Result<_>>()?;
            let hi: Vec<i64> = (0..*rank).map(|k| coord_bound(ideal, k, true)).collect::<Result<_>>()?;
            let volume: u128 = lo.iter().zip(&hi).map(|(l, h)| (h - l + 1) as u128).product();
            if volume > 1_000_000 {
                return Err(Error::Argument(format!("closure bounding box has {volume} points")));
            }
            let mut members = Vec::new();
            let mut point = lo.clone();
            loop {
                let b = GroupElement::from_i64s(&point);
                if newton_dependence(&group, ideal.gens(), &b)?.is_yes() {
                    members.push(b);
                }
                if !advance(&mut point, &lo, &hi) {
                    break;
                }
            }
            MonomialIdeal::new(domain, FiniteSubset::new(members)?)
        }
        MonomialDomain::SemigroupRing(_) => {
            let s = domain.numerical("integral closure")?;
            let integral = ideal.is_integral()?;
            let min = ideal.gens.elems()[0].coords()[0].to_i64().ok_or_else(|| Error::Argument("exponent too large".into()))?;
            let span = s.frobenius_or_minus_one() + 1;
            let mut kept: Vec<GroupElement> = Vec::new();
            for v in min..=min + span.max(0) {
                let b = GroupElement::from_i64s(&[v]);
                if integral && !s.contains_i64(v) {
                    continue;
                }
                let mut covered = false;
                for g in &kept {
                    if domain.divides(g, &b)? {
                        covered = true;
                        break;
                    }
                }
                if !covered {
                    kept.push(b);
                }
            }
            MonomialIdeal::new(domain, FiniteSubset::new(kept)?)
        }
        _ => Err(Error::UnsupportedDomain(format!("integral closure over {}", domain.name()))),
    }
}

fn coord_bound(ideal: &MonomialIdeal, k: usize, upper: bool) -> Result<i64> {
    let it = ideal.gens.iter().map(|g| &g.coords()[k]);
    let v = if upper { it.max() } else { it.min() }.expect("nonempty");
    v.to_i64().ok_or_else(|| Error::Argument("exponent too large".into()))
}

fn advance(point: &mut [i64], lo: &[i64], hi: &[i64]) -> bool {
    for k in 0..point.len() {
        if point[k] < hi[k] {
            point[k] += 1;
            return true;
        }
        point[k] = lo[k];
    }
    false
}

/// The domain obtained by adjoining `t^x`: its divisibility monoid is
/// generated by the old one together with `x`.
pub fn dedekind_forced(domain: &MonomialDomain, x: &GroupElement) -> Result<MonomialDomain> {
    check_rank(domain.rank(), x.rank())?;
    if domain.monoid_contains(x)? {
        return Ok(domain.clone());
    }
    match domain {
        MonomialDomain::SemigroupRing(s) => {
            let v = &x.coords()[0];
            if v.is_negative() {
                // Generators of both signs generate the subgroup gcd·ℤ.
                let step = s
                    .generators()
                    .iter()
                    .fold(v.abs().to_u64().ok_or_else(|| Error::Argument("exponent too large".into()))?, |g, &a| {
                        num_integer::gcd(g, a)
                    });
                Ok(MonomialDomain::LaurentRing { step })
            } else {
                let extra = v.to_u64().ok_or_else(|| Error::Argument("exponent too large".into()))?;
                let mut gens = s.generators().to_vec();
                gens.push(extra);
                MonomialDomain::semigroup_ring(&minimal_generators(&gens)?)
            }
        }
        MonomialDomain::PolyRing { rank } => Ok(MonomialDomain::Extended { rank: *rank, extra: x.clone() }),
        _ => Err(Error::UnsupportedDomain(format!("forcing over {}", domain.name()))),
    }
}

/// Drop generators that are sums of the others.
fn minimal_generators(gens: &[u64]) -> Result<Vec<u64>> {
    let mut gens = gens.to_vec();
    gens.sort_unstable();
    gens.dedup();
    let mut kept: Vec<u64> = Vec::new();
    for &g in &gens {
        if kept.is_empty() || !NumericalSemigroup::new(&kept)?.contains_i64(g as i64) {
            kept.push(g);
        }
    }
    Ok(kept)
}
