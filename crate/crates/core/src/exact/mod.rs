//! Exact integers, rationals and integer polynomials.

mod cyclotomic;
mod factor;
mod poly;
mod resultant;

pub use cyclotomic::{cyclotomic, cyclotomic_index, divisors, euler_phi, indices_with_phi, indices_with_phi_at_most};
pub use factor::{factor_squarefree, factor_through_root, is_irreducible, DEGREE_CAP};
pub use poly::IntPoly;
pub use resultant::{
    det_bareiss, discriminant, interpolate_consecutive, lcm_all, power_charpoly, resultant, resultant_y, BiPoly,
};

/// Arbitrary precision integer.
pub type Int = num_bigint::BigInt;
/// Rational in lowest terms with positive denominator.
pub type Rat = num_rational::BigRational;
