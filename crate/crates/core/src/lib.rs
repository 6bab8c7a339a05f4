//! Certified computational toolkit for Diophantine approximation by linear
//! combinations of powers of algebraic numbers.
//!
//! Everything approximate is carried by [`interval::RealBall`] /
//! [`interval::ComplexBall`] enclosures; every yes/no answer is either decided
//! exactly or reported as undecided.
//!
//! Layout:
//!
//! * [`exact`]: big integers, rationals, integer polynomials, resultants,
//!   cyclotomic polynomials and irreducibility.
//! * [`interval`]: dyadic midpoint-radius balls with outward rounding.
//! * [`algebraic`]: algebraic numbers as (minimal polynomial, root index).
//! * [`heights`]: Mahler measure and Weil heights.
//! * [`classify`]: Pisot, Salem and pseudo-Pisot predicates.
//! * [`partition`]: root-of-unity quotient equivalence and torsion exponents.
//! * [`approx`]: nearest-integer distances and grid scans.
//! * [`products`]: certified enclosures of infinite products of floor ratios.

pub mod algebraic;
pub mod approx;
pub mod classify;
pub mod error;
pub mod exact;
pub mod heights;
pub mod interval;
pub mod partition;
pub mod products;
pub mod serde_util;

pub use algebraic::{AlgebraicNumber, ConjugateSet, ModulusClass};
pub use error::{Error, Result};
pub use exact::{IntPoly, Int, Rat};
pub use interval::{ComplexBall, Ctx, RealBall, Tri};
