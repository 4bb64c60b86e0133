//! Decides whether an observed random choice rule on an arbitrary collection
//! of menus is stochastically rationalizable, i.e. whether some probability
//! distribution over strict preference orders reproduces the observed choice
//! frequencies through best-element choice.
//!
//! Two independent routes are implemented and cross-checked:
//!
//! * [`vrep`] — the vertex route: search for nonnegative weights over all
//!   linear orders whose induced choice probabilities match the data,
//!   optionally via column generation.
//! * [`hrep`] — the half-space route: extend the data to the full menu
//!   lattice with slack variables constrained so that the extension has a
//!   nonnegative Möbius inverse.
//!
//! Both reduce to exact rational LP feasibility ([`lp`]); infeasibility is
//! always witnessed by a Farkas certificate that re-verifies independently.
//! [`monotone`] adds dominance restrictions (and the two-good budget patch
//! construction), and [`axiom`] converts certificates into
//! assignment/capacity counterexamples.
//!
//! All arithmetic is exact. No feasibility verdict ever touches a float.

pub mod axiom;
pub mod choice;
pub mod hrep;
pub mod limits;
pub mod lp;
pub mod mobius;
pub mod monotone;
pub mod vrep;

/// Arbitrary-precision rational, the only scalar type used in feasibility
/// paths.
pub type Rational = num_rational::BigRational;

pub use choice::{
    enumerate_orders, induce_rcr, validate_rcr, AlternativeSet, ChoiceError, LinearOrder, Menu,
    MenuCollection, PreferenceDistribution, RandomChoiceRule,
};
pub use lp::{FarkasCertificate, FeasibilityResult, LinearSystem};

/// Convenience constructor for small rational constants.
pub fn rat(num: i64, den: i64) -> Rational {
    use num_bigint::BigInt;
    Rational::new(BigInt::from(num), BigInt::from(den))
}
