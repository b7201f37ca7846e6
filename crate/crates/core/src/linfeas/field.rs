use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed};

/// An exact ordered field the feasibility engines can run over.
///
/// `from_bigint` fails when an input coefficient does not fit the
/// representation; fixed-width rationals are only meant for small inputs.
pub trait ExactField: Clone + Debug + Ord + Num + Signed {
    fn from_bigint(v: &BigInt) -> Option<Self>;
    fn to_big_rational(&self) -> BigRational;
}

impl<T> ExactField for Ratio<T>
where
    T: Clone + Debug + Integer + Signed + TryFrom<BigInt> + Into<BigInt>,
{
    fn from_bigint(v: &BigInt) -> Option<Self> {
        T::try_from(v.clone()).ok().map(Ratio::from_integer)
    }

    fn to_big_rational(&self) -> BigRational {
        BigRational::new(self.numer().clone().into(), self.denom().clone().into())
    }
}
