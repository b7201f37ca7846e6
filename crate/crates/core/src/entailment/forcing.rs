use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{Decision, RelationHandle, Witness};
use crate::error::{Error, Result};
use crate::group::{dot, Cone, FiniteSubset, GroupElement, OrderedGroup};

/// Largest left-hand side the generic forcing search will hand to its base.
const EXPANSION_LIMIT: usize = 4096;

/// Smallest `j ≥ 0` with `0 ≤ v - j·x`, or `None` if there is none.
/// Exact for every cone kind.
pub fn min_shift(group: &OrderedGroup, v: &GroupElement, x: &GroupElement) -> Option<BigInt> {
    match group.cone() {
        Cone::Semigroup(s) => {
            let f = BigInt::from(s.frobenius_or_minus_one());
            semigroup_min_shift(&v.coords()[0], &x.coords()[0], &f, s.scale(), |w| s.contains(w))
        }
        _ => {
            let rows = group.inequality_rows().expect("non-semigroup cones have inequality rows");
            // Row r needs j·(r·x) ≤ r·v.
            let mut lo = BigInt::zero();
            let mut hi: Option<BigInt> = None;
            for r in &rows {
                let c = dot(r, x.coords());
                let d = dot(r, v.coords());
                if c.is_zero() {
                    if d.is_negative() {
                        return None;
                    }
                } else if c.is_positive() {
                    let h = d.div_floor(&c);
                    hi = Some(hi.map_or(h.clone(), |cur| cur.min(h)));
                } else {
                    lo = lo.max(ceil_div(&d, &c));
                }
            }
            match hi {
                Some(h) if h < lo => None,
                _ => Some(lo),
            }
        }
    }
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

/// One-dimensional case for a semigroup cone: members above the Frobenius
/// number `f` are exactly the multiples of `scale`, below it a table lookup.
fn semigroup_min_shift(
    v: &BigInt,
    x: &BigInt,
    f: &BigInt,
    scale: u64,
    member: impl Fn(&BigInt) -> bool,
) -> Option<BigInt> {
    let w = |j: &BigInt| v - j * x;
    if x.is_zero() {
        return member(v).then(BigInt::zero);
    }
    // Smallest j ≥ 0 with scale | v - j·x, and the period of such j.
    let m = BigInt::from(scale);
    let congruence = (0..scale).map(BigInt::from).find(|j| w(j).is_multiple_of(&m));
    let period = &m / x.gcd(&m);

    if x.is_positive() {
        // Above f for j < (v - f) / x.
        let first_low = if v > f { ceil_div(&(v - f), x) } else { BigInt::zero() };
        if let Some(j) = &congruence {
            if *j < first_low {
                return Some(j.clone());
            }
        }
        let mut j = first_low;
        while !w(&j).is_negative() {
            if member(&w(&j)) {
                return Some(j);
            }
            j += 1;
        }
        None
    } else {
        let y = -x;
        let mut j = if v.is_negative() { ceil_div(&-v, &y) } else { BigInt::zero() };
        while w(&j) <= *f {
            if member(&w(&j)) {
                return Some(j);
            }
            j += 1;
        }
        let j0 = congruence?;
        if j0 >= j {
            return Some(j0);
        }
        let k = ceil_div(&(&j - &j0), &period);
        Some(j0 + k * period)
    }
}

/// `A` expanded by forcing: for each constraint `x_k` in turn, replace the
/// set `E` by `E ∪ (E + x_k) ∪ … ∪ (E + steps_k·x_k)`.
pub fn expand(a: &FiniteSubset, constraints: &[GroupElement], steps: &[u64]) -> Result<FiniteSubset> {
    if constraints.len() != steps.len() {
        return Err(Error::Argument("one step count per constraint expected".into()));
    }
    let mut set = a.clone();
    for (x, &s) in constraints.iter().zip(steps) {
        let mut elems = set.elems().to_vec();
        for e in set.iter() {
            let mut cur = e.clone();
            for _ in 0..s {
                cur = &cur + x;
                elems.push(cur.clone());
            }
        }
        set = FiniteSubset::new(elems)?;
        if set.len() > EXPANSION_LIMIT {
            return Err(Error::Bounded {
                bound: s,
                context: format!("forcing expansion exceeds {EXPANSION_LIMIT} elements"),
            });
        }
    }
    Ok(set)
}

/// `A, A+x, …, A+p·x ⊳ b` for some `p ≤ depth` (exact for principal bases).
pub fn forced_entails(
    base: &RelationHandle,
    x: &GroupElement,
    a: &FiniteSubset,
    b: &GroupElement,
    depth: u64,
) -> Result<Decision> {
    multi_forced_entails(base, std::slice::from_ref(x), a, b, depth)
}

/// Forcing `0 ≤ x_1, …, 0 ≤ x_n` on top of `base`.
///
/// Principal bases reduce to `a + Σ j_k x_k ≤ b`: the last multiplier is
/// found exactly and the others are enumerated up to `depth`, so a single
/// constraint gives an exact verdict. Other bases are searched up to
/// `depth` rounds per constraint and never answer No unless every
/// constraint already holds.
pub fn multi_forced_entails(
    base: &RelationHandle,
    xs: &[GroupElement],
    a: &FiniteSubset,
    b: &GroupElement,
    depth: u64,
) -> Result<Decision> {
    if xs.is_empty() {
        return Err(Error::Argument("forcing needs at least one constraint".into()));
    }
    let group = base.group();
    group.check_subset(a)?;
    group.check(b)?;
    for x in xs {
        group.check(x)?;
    }
    if base.is_principal() {
        return Ok(principal_forced(group, xs, a, b, depth));
    }
    if xs.iter().all(|x| group.in_cone(x)) {
        // Forcing a fact that already holds changes nothing.
        let d = base.sc_entails(a, b)?;
        return Ok(match d.witness {
            Some(inner) => Decision::yes(Witness::Forced { steps: vec![0; xs.len()], inner: Box::new(inner) }),
            None => d,
        });
    }

    let mut steps = vec![depth; xs.len()];
    let Ok(full) = expand(a, xs, &steps) else {
        return Ok(Decision::unknown(depth));
    };
    let d = base.sc_entails(&full, b)?;
    let Some(mut inner) = d.witness.filter(|_| d.verdict == super::Verdict::Yes) else {
        return Ok(Decision::unknown(depth));
    };
    // Entailment is monotone in the step counts; shrink each in turn.
    for k in 0..xs.len() {
        for s in 0..steps[k] {
            let mut trial = steps.clone();
            trial[k] = s;
            let d = base.sc_entails(&expand(a, xs, &trial)?, b)?;
            if let (true, Some(w)) = (d.is_yes(), d.witness) {
                steps = trial;
                inner = w;
                break;
            }
        }
    }
    Ok(Decision::yes(Witness::Forced { steps, inner: Box::new(inner) }).with_bound(depth))
}

fn principal_forced(
    group: &OrderedGroup,
    xs: &[GroupElement],
    a: &FiniteSubset,
    b: &GroupElement,
    depth: u64,
) -> Decision {
    let (last, prefix) = xs.split_last().expect("nonempty constraints");
    let mut best: Option<(BigInt, usize, Vec<BigInt>)> = None;
    for (index, ai) in a.iter().enumerate() {
        let mut counter = vec![0u64; prefix.len()];
        loop {
            let mut v = b - ai;
            for (x, &j) in prefix.iter().zip(&counter) {
                v = &v - &x.scale(&BigInt::from(j));
            }
            if let Some(j) = min_shift(group, &v, last) {
                let total = counter.iter().map(|&c| BigInt::from(c)).sum::<BigInt>() + &j;
                if best.as_ref().is_none_or(|(t, _, _)| total < *t) {
                    let mut m: Vec<BigInt> = counter.iter().map(|&c| BigInt::from(c)).collect();
                    m.push(j);
                    best = Some((total, index, m));
                }
            }
            if !odometer(&mut counter, depth) {
                break;
            }
        }
    }
    match best {
        Some((_, index, multipliers)) => Decision::yes(Witness::Shifted { index, multipliers }),
        None if prefix.is_empty() => Decision::no(),
        None => Decision::unknown(depth),
    }
}

/// Advance a counter in `[0, max]^n`; false once it wraps around.
fn odometer(counter: &mut [u64], max: u64) -> bool {
    for c in counter.iter_mut() {
        if *c < max {
            *c += 1;
            return true;
        }
        *c = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(c: &[i64]) -> GroupElement {
        GroupElement::from_i64s(c)
    }

    fn ints(v: &[i64]) -> FiniteSubset {
        FiniteSubset::from_ints(v).unwrap()
    }

    fn shifted(d: &Decision) -> Vec<BigInt> {
        match &d.witness {
            Some(Witness::Shifted { multipliers, .. }) => multipliers.clone(),
            other => panic!("expected a shifted witness, got {other:?}"),
        }
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn single_constraint_examples() {
        let z = RelationHandle::finest(&OrderedGroup::product(1).unwrap());
        let d = forced_entails(&z, &e(&[-3]), &ints(&[5]), &e(&[0]), 10).unwrap();
        assert!(d.is_yes());
        assert_eq!(shifted(&d), big(&[2]));
        let d = forced_entails(&z, &e(&[3]), &ints(&[5]), &e(&[0]), 10).unwrap();
        assert!(d.is_no());
        for x in [-4, 0, 7] {
            let d = forced_entails(&z, &e(&[x]), &ints(&[0]), &e(&[0]), 0).unwrap();
            assert_eq!(shifted(&d), big(&[0]));
        }
    }

    #[test]
    fn exact_path_ignores_depth_for_the_last_constraint() {
        let z = RelationHandle::finest(&OrderedGroup::product(1).unwrap());
        let d = forced_entails(&z, &e(&[-1]), &ints(&[100]), &e(&[0]), 3).unwrap();
        assert_eq!(shifted(&d), big(&[100]));
    }

    #[test]
    fn multi_constraint_examples() {
        let z = RelationHandle::finest(&OrderedGroup::product(1).unwrap());
        let d = multi_forced_entails(&z, &[e(&[-1])], &ints(&[2]), &e(&[0]), 5).unwrap();
        assert_eq!(shifted(&d), big(&[2]));
        let d = multi_forced_entails(&z, &[e(&[1]), e(&[-1])], &ints(&[5]), &e(&[-5]), 5).unwrap();
        assert_eq!(shifted(&d), big(&[0, 10]));
        // Two constraints pointing the wrong way: no verdict without a bound on the first.
        let d = multi_forced_entails(&z, &[e(&[1]), e(&[2])], &ints(&[5]), &e(&[0]), 4).unwrap();
        assert_eq!(d, Decision::unknown(4));
    }

    #[test]
    fn semigroup_shift() {
        let g = OrderedGroup::semigroup(&[2, 3]).unwrap();
        // 0 - j·(-1) = j must lie in S ∪ {0}: j = 0 already works.
        assert_eq!(min_shift(&g, &e(&[0]), &e(&[-1])), Some(BigInt::from(0)));
        // 1 + j must be in S: j = 1.
        assert_eq!(min_shift(&g, &e(&[1]), &e(&[-1])), Some(BigInt::from(1)));
        // -7 + 2j ∈ S: j = 4 gives 1 (gap), j = 5 gives 3.
        assert_eq!(min_shift(&g, &e(&[-7]), &e(&[-2])), Some(BigInt::from(5)));
        // 5 - 4j: j = 0 gives 5 ∈ S.
        assert_eq!(min_shift(&g, &e(&[5]), &e(&[4])), Some(BigInt::from(0)));
        // 1 - j ∈ S ∪ {0}: j = 1 gives 0.
        assert_eq!(min_shift(&g, &e(&[1]), &e(&[1])), Some(BigInt::from(1)));
        assert_eq!(min_shift(&g, &e(&[1]), &e(&[2])), None);
        assert_eq!(min_shift(&g, &e(&[1]), &e(&[0])), None);

        let scaled = OrderedGroup::semigroup(&[4, 6]).unwrap();
        // 1 + 2j is always odd.
        assert_eq!(min_shift(&scaled, &e(&[1]), &e(&[-2])), None);
        // 1 + 3j: j = 1 gives 4.
        assert_eq!(min_shift(&scaled, &e(&[1]), &e(&[-3])), Some(BigInt::from(1)));
        // 101 - 3j: j = 1 gives 98 (even, above the Frobenius number).
        assert_eq!(min_shift(&scaled, &e(&[101]), &e(&[3])), Some(BigInt::from(1)));
    }

    #[test]
    fn semigroup_shift_matches_enumeration() {
        let g = OrderedGroup::semigroup(&[3, 5]).unwrap();
        for v in -20..=20 {
            for x in -6..=6 {
                let expected = (0..200).find(|&j| g.in_cone(&e(&[v - j * x])));
                let got = min_shift(&g, &e(&[v]), &e(&[x])).map(|j| num_traits::ToPrimitive::to_i64(&j).unwrap());
                assert_eq!(got, expected, "v = {v}, x = {x}");
            }
        }
    }

    #[test]
    fn matrix_shift() {
        let g = OrderedGroup::matrix_i64(&[&[1, 0], &[1, 1]]).unwrap();
        // v - j·x ≥ 0 with v = (-2, 3), x = (-1, 0): need -2 + j ≥ 0 and 1 + j ≥ 0.
        assert_eq!(min_shift(&g, &e(&[-2, 3]), &e(&[-1, 0])), Some(BigInt::from(2)));
        assert_eq!(min_shift(&g, &e(&[-2, 3]), &e(&[1, 0])), None);
    }

    #[test]
    fn generic_base_search() {
        let z = RelationHandle::finest(&OrderedGroup::product(1).unwrap());
        let inner = RelationHandle::forced(&z, vec![e(&[-2])], 0).unwrap();
        // Forcing on top of a forced relation goes through set expansion.
        let d = multi_forced_entails(&inner, &[e(&[-1])], &ints(&[3]), &e(&[0]), 3).unwrap();
        assert!(d.is_yes());
        match d.witness.unwrap() {
            Witness::Forced { steps, .. } => assert_eq!(steps, vec![0]),
            w => panic!("unexpected {w:?}"),
        }
        let d = multi_forced_entails(&inner, &[e(&[1])], &ints(&[3]), &e(&[0]), 3).unwrap();
        assert!(d.is_yes());
        let z2 = RelationHandle::finest(&OrderedGroup::product(2).unwrap());
        let inner = RelationHandle::forced(&z2, vec![e(&[1, 0])], 0).unwrap();
        let d = multi_forced_entails(&inner, &[e(&[0, -1])], &FiniteSubset::from_i64s(&[&[0, 2]]).unwrap(), &e(&[0, 0]), 3)
            .unwrap();
        match d.witness.unwrap() {
            Witness::Forced { steps, .. } => assert_eq!(steps, vec![2]),
            w => panic!("unexpected {w:?}"),
        }
        let d = multi_forced_entails(&inner, &[e(&[0, 1])], &FiniteSubset::from_i64s(&[&[0, 2]]).unwrap(), &e(&[0, 0]), 3)
            .unwrap();
        assert!(d.is_no());
    }

    #[test]
    fn expansion() {
        let set = expand(&ints(&[0]), &[e(&[2]), e(&[5])], &[2, 1]).unwrap();
        assert_eq!(set, ints(&[0, 2, 4, 5, 7, 9]));
    }
}
