//! Seeded random generation of group elements and subsets for the
//! property checks.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::group::{Cone, FiniteSubset, GroupElement, OrderedGroup};

pub struct Sampler {
    rng: ChaCha8Rng,
    group: OrderedGroup,
    radius: i64,
}

impl Sampler {
    pub fn new(group: &OrderedGroup, radius: i64, seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            group: group.clone(),
            radius: radius.max(1),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn group(&self) -> &OrderedGroup {
        &self.group
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n.max(1))
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    /// Uniform in the box `[-radius, radius]^d`.
    pub fn element(&mut self) -> GroupElement {
        let r = self.radius;
        let coords: Vec<i64> = (0..self.group.rank()).map(|_| self.rng.gen_range(-r..=r)).collect();
        GroupElement::from_i64s(&coords)
    }

    /// A subset of between 1 and `max_size` elements.
    pub fn subset(&mut self, max_size: usize) -> FiniteSubset {
        let n = self.rng.gen_range(1..=max_size.max(1));
        let elems = (0..n).map(|_| self.element()).collect();
        FiniteSubset::new(elems).expect("sampled elements share the group rank")
    }

    /// A random element of the positive cone, small in size.
    pub fn positive(&mut self) -> GroupElement {
        let d = self.group.rank();
        let r = self.radius;
        match self.group.cone().clone() {
            Cone::Product => {
                let coords: Vec<i64> = (0..d).map(|_| self.rng.gen_range(0..=r)).collect();
                GroupElement::from_i64s(&coords)
            }
            Cone::Trivial => self.group.zero(),
            Cone::Semigroup(s) => {
                let gens = s.generators();
                let terms = self.rng.gen_range(0..=2);
                let total: u64 = (0..terms).map(|_| *gens.choose(&mut self.rng).unwrap()).sum();
                GroupElement::new(vec![BigInt::from(total)])
            }
            Cone::Matrix(_) => {
                for _ in 0..64 {
                    let a = self.element();
                    if self.group.in_cone(&a) {
                        return a;
                    }
                }
                self.group.zero()
            }
        }
    }

    pub fn pick<'a>(&mut self, set: &'a FiniteSubset) -> &'a GroupElement {
        &set.elems()[self.rng.gen_range(0..set.len())]
    }
}
