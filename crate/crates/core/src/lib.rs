//! Exact decision procedures for systems of ideals over ordered abelian
//! groups, their regularisations, the lattice-ordered groups they generate,
//! and divisor theory for monomial domains.
//!
//! Every positive decision carries a certificate that can be re-checked
//! with [`certificate::verify`].

pub mod certificate;
pub mod dedekind;
pub mod entailment;
pub mod error;
pub mod group;
pub mod json;
pub mod lgroup;
pub mod linfeas;
pub mod meet;
pub mod regularise;
pub mod report;
pub mod sampling;
pub mod semigroup;

pub use error::{Error, Result};
pub use group::{Cone, FiniteSubset, GroupElement, OrderedGroup};
pub use semigroup::NumericalSemigroup;

/// Coordinates of group elements.
pub type Integer = num_bigint::BigInt;
/// Default exact field of the feasibility engine.
pub type Rational = num_rational::BigRational;
/// Fixed-width exact field, adequate for small inputs.
pub type SmallRational = num_rational::Ratio<i64>;
