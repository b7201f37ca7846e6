//! Ordered abelian groups ℤ^d with a decidable positive cone, their
//! elements, and arithmetic on finite subsets.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{check_rank, Error, Result};
use crate::semigroup::NumericalSemigroup;

/// An element of ℤ^d.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement(Vec<BigInt>);

impl GroupElement {
    pub fn new(coords: Vec<BigInt>) -> Self {
        Self(coords)
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        Self(vec![BigInt::zero(); rank])
    }

    pub fn unit(rank: usize, axis: usize) -> Self {
        let mut v = Self::zero(rank);
        v.0[axis] = BigInt::one();
        v
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self(self.0.iter().map(|c| c * k).collect())
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        self.scale(&BigInt::from(k))
    }

    /// Sum of absolute values of the coordinates.
    pub fn l1_norm(&self) -> BigInt {
        self.0.iter().map(|c| c.abs()).sum()
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Add for &GroupElement {
    type Output = GroupElement;
    fn add(self, rhs: &GroupElement) -> GroupElement {
        debug_assert_eq!(self.rank(), rhs.rank());
        GroupElement(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &GroupElement {
    type Output = GroupElement;
    fn sub(self, rhs: &GroupElement) -> GroupElement {
        debug_assert_eq!(self.rank(), rhs.rank());
        GroupElement(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &GroupElement {
    type Output = GroupElement;
    fn neg(self) -> GroupElement {
        GroupElement(self.0.iter().map(|a| -a).collect())
    }
}

impl Add for GroupElement {
    type Output = GroupElement;
    fn add(self, rhs: GroupElement) -> GroupElement {
        &self + &rhs
    }
}

impl Sub for GroupElement {
    type Output = GroupElement;
    fn sub(self, rhs: GroupElement) -> GroupElement {
        &self - &rhs
    }
}

impl Neg for GroupElement {
    type Output = GroupElement;
    fn neg(self) -> GroupElement {
        -&self
    }
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for c in &self.0 {
            seq.serialize_element(&crate::json::BigIntJson(c))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for GroupElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<serde_json::Number> = Vec::deserialize(d)?;
        raw.iter()
            .map(crate::json::number_to_bigint)
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(GroupElement)
            .map_err(serde::de::Error::custom)
    }
}

/// The positive cone of an ordered group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cone {
    /// Componentwise nonnegativity.
    Product,
    /// `a ≥ 0` iff every row of the matrix has nonnegative product with `a`.
    Matrix(Arc<Vec<Vec<BigInt>>>),
    /// Rank one, `a ≥ 0` iff `a` lies in the numerical semigroup (0 included).
    Semigroup(Arc<NumericalSemigroup>),
    /// Only zero is nonnegative.
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedGroup {
    rank: usize,
    cone: Cone,
}

impl OrderedGroup {
    pub fn product(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Argument("rank must be positive".into()));
        }
        Ok(Self { rank, cone: Cone::Product })
    }

    pub fn trivial(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Argument("rank must be positive".into()));
        }
        Ok(Self { rank, cone: Cone::Trivial })
    }

    pub fn semigroup(gens: &[u64]) -> Result<Self> {
        Ok(Self {
            rank: 1,
            cone: Cone::Semigroup(Arc::new(NumericalSemigroup::new(gens)?)),
        })
    }

    /// Cone `{a : M a ≥ 0}`. The matrix must have full column rank so that
    /// the order is antisymmetric.
    pub fn matrix(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let group = Self::matrix_preorder(rows)?;
        if let Cone::Matrix(rows) = &group.cone {
            let r = matrix_rank(rows);
            if r != group.rank {
                return Err(Error::Argument(format!(
                    "cone matrix has rank {r} < {}; the order would not be antisymmetric",
                    group.rank
                )));
            }
        }
        Ok(group)
    }

    /// Like [`OrderedGroup::matrix`] without the full-rank requirement: the
    /// result is only a preordered group.
    pub fn matrix_preorder(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let rank = rows.first().map(Vec::len).unwrap_or(0);
        if rank == 0 {
            return Err(Error::Argument("cone matrix needs at least one nonempty row".into()));
        }
        for row in &rows {
            check_rank(rank, row.len())?;
        }
        Ok(Self {
            rank,
            cone: Cone::Matrix(Arc::new(rows)),
        })
    }

    pub fn matrix_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::matrix(to_big_rows(rows))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn semigroup_data(&self) -> Option<&NumericalSemigroup> {
        match &self.cone {
            Cone::Semigroup(s) => Some(s),
            _ => None,
        }
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement::zero(self.rank)
    }

    pub fn check(&self, a: &GroupElement) -> Result<()> {
        check_rank(self.rank, a.rank())
    }

    pub fn check_subset(&self, a: &FiniteSubset) -> Result<()> {
        check_rank(self.rank, a.rank())
    }

    /// `0 ≤ a`.
    pub fn is_nonnegative(&self, a: &GroupElement) -> Result<bool> {
        self.check(a)?;
        Ok(self.in_cone(a))
    }

    pub(crate) fn in_cone(&self, a: &GroupElement) -> bool {
        match &self.cone {
            Cone::Product => a.coords().iter().all(|c| !c.is_negative()),
            Cone::Matrix(rows) => rows.iter().all(|row| !dot(row, a.coords()).is_negative()),
            Cone::Semigroup(s) => s.contains(&a.coords()[0]),
            Cone::Trivial => a.is_zero(),
        }
    }

    /// `a ≤ b`, i.e. `b - a` lies in the positive cone.
    pub fn leq(&self, a: &GroupElement, b: &GroupElement) -> Result<bool> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.in_cone(&(b - a)))
    }

    /// The cone as a finite system `R a ≥ 0`, when it has that shape.
    /// The trivial cone is written as `a ≥ 0, -a ≥ 0`.
    pub fn inequality_rows(&self) -> Option<Vec<Vec<BigInt>>> {
        match &self.cone {
            Cone::Product => Some(identity(self.rank)),
            Cone::Matrix(rows) => Some(rows.as_ref().clone()),
            Cone::Trivial => {
                let mut rows = identity(self.rank);
                rows.extend(identity(self.rank).into_iter().map(|r| r.into_iter().map(|c| -c).collect()));
                Some(rows)
            }
            Cone::Semigroup(_) => None,
        }
    }

    /// The same group with the reversed order.
    pub fn opposite(&self) -> Result<Self> {
        match &self.cone {
            Cone::Product => Self::matrix_preorder(
                identity(self.rank).into_iter().map(|r| r.into_iter().map(|c| -c).collect()).collect(),
            ),
            Cone::Matrix(rows) => Self::matrix_preorder(
                rows.iter().map(|r| r.iter().map(|c| -c).collect()).collect(),
            ),
            Cone::Trivial => Ok(self.clone()),
            Cone::Semigroup(_) => Err(Error::UnsupportedCone("order reversal of a semigroup cone")),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self.cone {
            Cone::Product => "product",
            Cone::Matrix(_) => "matrix",
            Cone::Semigroup(_) => "semigroup",
            Cone::Trivial => "trivial",
        }
    }
}

pub(crate) fn dot(row: &[BigInt], v: &[BigInt]) -> BigInt {
    row.iter().zip(v).map(|(a, b)| a * b).sum()
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub(crate) fn to_big_rows(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&c| BigInt::from(c)).collect()).collect()
}

/// Rank by exact Gaussian elimination over ℚ.
#[allow(clippy::needless_range_loop)]
pub fn matrix_rank(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|c| BigRational::from_integer(c.clone())).collect())
        .collect();
    let cols = m.first().map(Vec::len).unwrap_or(0);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let factor = &m[r][col] / &m[rank][col];
                for c in col..cols {
                    let delta = &factor * &m[rank][c];
                    m[r][c] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// A nonempty finite set of group elements, kept sorted and duplicate-free.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteSubset(Vec<GroupElement>);

impl FiniteSubset {
    pub fn new(mut elems: Vec<GroupElement>) -> Result<Self> {
        let Some(first) = elems.first() else {
            return Err(Error::Argument("finite subsets must be nonempty".into()));
        };
        let rank = first.rank();
        for e in &elems {
            check_rank(rank, e.rank())?;
        }
        elems.sort();
        elems.dedup();
        Ok(Self(elems))
    }

    pub fn singleton(a: GroupElement) -> Self {
        Self(vec![a])
    }

    pub fn from_i64s(elems: &[&[i64]]) -> Result<Self> {
        Self::new(elems.iter().map(|e| GroupElement::from_i64s(e)).collect())
    }

    /// Rank-one convenience: `{a, b, ...}` ⊂ ℤ.
    pub fn from_ints(elems: &[i64]) -> Result<Self> {
        Self::new(elems.iter().map(|&e| GroupElement::from_i64s(&[e])).collect())
    }

    pub fn elems(&self) -> &[GroupElement] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, GroupElement> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn rank(&self) -> usize {
        self.0[0].rank()
    }

    pub fn contains(&self, a: &GroupElement) -> bool {
        self.0.binary_search(a).is_ok()
    }

    pub fn union(&self, other: &FiniteSubset) -> Result<Self> {
        check_rank(self.rank(), other.rank())?;
        Self::new(self.0.iter().chain(other.0.iter()).cloned().collect())
    }

    pub fn with(&self, a: &GroupElement) -> Result<Self> {
        check_rank(self.rank(), a.rank())?;
        let mut v = self.0.clone();
        v.push(a.clone());
        Self::new(v)
    }

    /// The set without its `index`-th element; `None` for singletons.
    pub fn without(&self, index: usize) -> Option<Self> {
        (self.0.len() > 1).then(|| {
            let mut v = self.0.clone();
            v.remove(index);
            Self(v)
        })
    }

    /// `{a + b | a ∈ A, b ∈ B}`.
    pub fn sumset(&self, other: &FiniteSubset) -> Result<Self> {
        check_rank(self.rank(), other.rank())?;
        Self::new(
            self.0
                .iter()
                .flat_map(|a| other.0.iter().map(move |b| a + b))
                .collect(),
        )
    }

    /// `A + ⋯ + A` (n times).
    pub fn nfold(&self, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Argument("n-fold sum needs n ≥ 1".into()));
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.sumset(self)?;
        }
        Ok(acc)
    }

    pub fn negate(&self) -> Self {
        let mut v: Vec<_> = self.0.iter().map(|a| -a).collect();
        v.sort();
        Self(v)
    }

    /// `x + A`.
    pub fn translate(&self, x: &GroupElement) -> Result<Self> {
        check_rank(self.rank(), x.rank())?;
        // Translation preserves the lexicographic order.
        Ok(Self(self.0.iter().map(|a| a + x).collect()))
    }

    /// `{a - b | a ∈ A, b ∈ B}`.
    pub fn difference_set(&self, other: &FiniteSubset) -> Result<Self> {
        self.sumset(&other.negate())
    }

    pub fn into_vec(self) -> Vec<GroupElement> {
        self.0
    }
}

impl fmt::Debug for FiniteSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

impl<'a> IntoIterator for &'a FiniteSubset {
    type Item = &'a GroupElement;
    type IntoIter = std::slice::Iter<'a, GroupElement>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl Serialize for FiniteSubset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteSubset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<GroupElement> = Vec::deserialize(d)?;
        FiniteSubset::new(v).map_err(serde::de::Error::custom)
    }
}

/// Searches the box `[-search_box, search_box]^d`, in order of increasing
/// sup-norm, for `a` and `2 ≤ n ≤ n_max` with `0 ≤ n·a` but not `0 ≤ a`.
pub fn lcd_condition_violation(
    group: &OrderedGroup,
    search_box: u32,
    n_max: u32,
) -> Option<(GroupElement, u32)> {
    for radius in 0..=search_box as i64 {
        for a in shell(group.rank(), radius) {
            if group.in_cone(&a) {
                continue;
            }
            for n in 2..=n_max {
                if group.in_cone(&a.scale_i64(n as i64)) {
                    return Some((a, n));
                }
            }
        }
    }
    None
}

/// Lattice points of sup-norm exactly `radius`, in lexicographic order.
pub(crate) fn shell(rank: usize, radius: i64) -> Vec<GroupElement> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; rank];
    fn rec(i: usize, cur: &mut Vec<i64>, radius: i64, out: &mut Vec<GroupElement>) {
        if i == cur.len() {
            if cur.iter().map(|c| c.abs()).max().unwrap_or(0) == radius {
                out.push(GroupElement::from_i64s(cur));
            }
            return;
        }
        for c in -radius..=radius {
            cur[i] = c;
            rec(i + 1, cur, radius, out);
        }
    }
    rec(0, &mut cur, radius, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(c: &[i64]) -> GroupElement {
        GroupElement::from_i64s(c)
    }

    #[test]
    fn leq_examples() {
        let z2 = OrderedGroup::product(2).unwrap();
        assert!(z2.leq(&e(&[0, 0]), &e(&[1, 2])).unwrap());
        assert!(!z2.leq(&e(&[1, 0]), &e(&[0, 1])).unwrap());

        let s = OrderedGroup::semigroup(&[2, 3]).unwrap();
        assert!(!s.leq(&e(&[0]), &e(&[1])).unwrap());
        assert!(s.leq(&e(&[0]), &e(&[2])).unwrap());

        let m = OrderedGroup::matrix_preorder(to_big_rows(&[&[1, 1]])).unwrap();
        assert!(m.leq(&e(&[0, 0]), &e(&[1, -1])).unwrap());
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        let z2 = OrderedGroup::product(2).unwrap();
        assert_eq!(
            z2.leq(&e(&[0]), &e(&[1, 2])),
            Err(Error::Dimension { expected: 2, found: 1 })
        );
    }

    #[test]
    fn matrix_cone_requires_full_rank() {
        assert!(OrderedGroup::matrix_i64(&[&[1, 1]]).is_err());
        assert!(OrderedGroup::matrix_i64(&[&[1, 1], &[2, 2]]).is_err());
        let g = OrderedGroup::matrix_i64(&[&[1, 0], &[1, 1]]).unwrap();
        assert!(g.leq(&e(&[0, 0]), &e(&[2, -1])).unwrap());
        assert!(!g.leq(&e(&[0, 0]), &e(&[1, -2])).unwrap());
        assert_eq!(matrix_rank(&to_big_rows(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]])), 2);
    }

    #[test]
    fn trivial_cone() {
        let t = OrderedGroup::trivial(1).unwrap();
        assert!(t.leq(&e(&[3]), &e(&[3])).unwrap());
        assert!(!t.leq(&e(&[3]), &e(&[4])).unwrap());
    }

    #[test]
    fn subset_ops() {
        let a = FiniteSubset::from_i64s(&[&[1, 0], &[0, 1]]).unwrap();
        let s = a.sumset(&a).unwrap();
        assert_eq!(s, FiniteSubset::from_i64s(&[&[2, 0], &[1, 1], &[0, 2]]).unwrap());
        assert_eq!(
            FiniteSubset::from_ints(&[5]).unwrap().nfold(3).unwrap(),
            FiniteSubset::from_ints(&[15]).unwrap()
        );
        assert_eq!(
            FiniteSubset::from_ints(&[3]).unwrap().difference_set(&FiniteSubset::from_ints(&[1, 2]).unwrap()).unwrap(),
            FiniteSubset::from_ints(&[1, 2]).unwrap()
        );
        assert!(matches!(a.nfold(0), Err(Error::Argument(_))));
        assert!(FiniteSubset::new(vec![]).is_err());
        assert_eq!(
            a.translate(&e(&[1, 1])).unwrap(),
            FiniteSubset::from_i64s(&[&[2, 1], &[1, 2]]).unwrap()
        );
        assert_eq!(a.negate(), FiniteSubset::from_i64s(&[&[-1, 0], &[0, -1]]).unwrap());
    }

    #[test]
    fn mixed_ranks_rejected() {
        assert!(FiniteSubset::new(vec![e(&[1]), e(&[1, 2])]).is_err());
        let a = FiniteSubset::from_ints(&[1]).unwrap();
        let b = FiniteSubset::from_i64s(&[&[1, 2]]).unwrap();
        assert!(a.sumset(&b).is_err());
    }

    #[test]
    fn lcd_violations() {
        assert_eq!(lcd_condition_violation(&OrderedGroup::product(2).unwrap(), 4, 5), None);
        assert_eq!(lcd_condition_violation(&OrderedGroup::trivial(1).unwrap(), 6, 5), None);
        assert_eq!(
            lcd_condition_violation(&OrderedGroup::semigroup(&[2, 3]).unwrap(), 8, 5),
            Some((e(&[1]), 2))
        );
        let m = OrderedGroup::matrix_i64(&[&[1, 0], &[1, 2]]).unwrap();
        assert_eq!(lcd_condition_violation(&m, 4, 5), None);
    }

    #[test]
    fn json_shape() {
        let a = FiniteSubset::from_i64s(&[&[1, -2], &[0, 3]]).unwrap();
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, "[[0,3],[1,-2]]");
        let back: FiniteSubset = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        let big: GroupElement = serde_json::from_str("[123456789012345678901234567890]").unwrap();
        assert_eq!(serde_json::to_string(&big).unwrap(), "[123456789012345678901234567890]");
        assert!(serde_json::from_str::<FiniteSubset>("[]").is_err());
    }
}
