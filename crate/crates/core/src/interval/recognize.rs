use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::real::RealBall;

/// Result of looking for a rational with bounded denominator inside a ball.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recognized {
    /// Exactly one rational with denominator at most the bound lies in the ball.
    Unique(BigRational),
    /// No such rational lies in the ball.
    Absent,
    /// At least two lie in the ball; more precision is needed.
    Ambiguous,
}

/// Simplest rational (smallest denominator, then smallest numerator in
/// absolute value) in the closed interval `[lo, hi]`.
pub fn simplest_between(lo: &BigRational, hi: &BigRational) -> BigRational {
    debug_assert!(lo <= hi);
    if hi.is_negative() {
        return -simplest_between(&-hi, &-lo);
    }
    if !lo.is_positive() {
        return BigRational::zero();
    }
    let c = lo.ceil();
    if &c <= hi {
        return c;
    }
    let f = lo.floor();
    // both endpoints lie strictly inside (f, f + 1)
    let inner = simplest_between(&(hi - &f).recip(), &(lo - &f).recip());
    f + inner.recip()
}

/// Farey neighbours of `p/q` (in lowest terms, `q <= bound`) in the Farey
/// sequence of order `bound`.
pub fn farey_neighbours(r: &BigRational, bound: &BigInt) -> (BigRational, BigRational) {
    let p = r.numer();
    let q = r.denom();
    if q.is_one() {
        let left = BigRational::new(p * bound - 1, bound.clone());
        let right = BigRational::new(p * bound + 1, bound.clone());
        return (left, right);
    }
    // inverse of p modulo q
    let ext = p.mod_floor(q).extended_gcd(q);
    let inv = ext.x.mod_floor(q);
    // left neighbour a/b: p b - q a = 1, b = inv (mod q), b maximal <= bound
    let b: BigInt = &inv + q * (bound - &inv).div_floor(q);
    let a = (p * &b - 1u32).div_floor(q);
    // right neighbour c/d: q c - p d = 1, d = -inv (mod q)
    let d0 = (-&inv).mod_floor(q);
    let d: BigInt = &d0 + q * (bound - &d0).div_floor(q);
    let c = (p * &d + 1u32).div_floor(q);
    (BigRational::new(a, b), BigRational::new(c, d))
}

/// Finds the rational with denominator at most `den_bound` inside `ball`.
pub fn recognize_rational(ball: &RealBall, den_bound: &BigInt) -> Recognized {
    let lo = ball.lower().to_rat();
    let hi = ball.upper().to_rat();
    let s = simplest_between(&lo, &hi);
    if s.denom() > den_bound {
        return Recognized::Absent;
    }
    let (left, right) = farey_neighbours(&s, den_bound);
    if left >= lo || right <= hi {
        return Recognized::Ambiguous;
    }
    Recognized::Unique(s)
}
