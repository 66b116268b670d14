//! Exact analysis of torus-invariant ℚ-divisors on complete toric varieties.
//!
//! The crate decides Cartier, nef, basepoint-free and very-ample status of
//! T-divisors from their local data, computes intersection numbers with
//! T-curves, the piecewise-linear functions `λ^min`/`λ^max` on dual cones,
//! Hilbert bases, and runs executable checks of Fujita-type positivity bounds
//! over built-in and randomly generated instances.
//!
//! All arithmetic is exact. Every geometric type is generic over the lattice
//! integer type (see [`scalar::Int`]); the aliases below fix it to
//! arbitrary-precision integers, which is what the CLI and the checks use.

pub mod cone;
pub mod divisor;
pub mod error;
pub mod fan;
pub mod harness;
pub mod intersection;
pub mod lambda;
pub mod lattice;
pub mod lp;
pub mod polytope;
pub mod scalar;
pub mod semigroup;

pub use error::{Error, Result};
pub use lattice::{Ambient, Solution};
pub use scalar::{Field, Int};

use num_bigint::BigInt;
use num_rational::Ratio;

pub type Integer = BigInt;
pub type Rational = Ratio<BigInt>;
pub type LatticeVector = lattice::LatticeVector<BigInt>;
pub type RatVector = lattice::RatVector<BigInt>;
pub type Cone = cone::Cone<BigInt>;
pub type Fan = fan::Fan<BigInt>;
pub type Wall = fan::Wall<BigInt>;
pub type Polytope = polytope::Polytope<BigInt>;
pub type TDivisor = divisor::TDivisor<BigInt>;
