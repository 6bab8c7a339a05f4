use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use super::dyadic::Dyadic;
use super::mag::Mag;
use crate::error::{Error, Result};

/// Outcome of a certified comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Cmp {
    Less,
    Greater,
    Indeterminate,
}

/// Real midpoint-radius ball. The true value lies in `[mid - rad, mid + rad]`.
#[derive(Clone, PartialEq, Eq)]
pub struct RealBall {
    mid: Dyadic,
    rad: Mag,
    prec: u32,
}

impl fmt::Debug for RealBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for RealBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (m, r) = super::decimal::ball_to_decimal(self);
        write!(f, "{} ± {} @ {}", m, r, self.prec)
    }
}

impl RealBall {
    pub fn new(mid: Dyadic, rad: Mag, prec: u32) -> Self {
        let (mid, err) = mid.round(prec);
        RealBall { mid, rad: rad.add(&err), prec }
    }

    /// Ball with the given midpoint kept exactly (no rounding).
    pub fn exact(mid: Dyadic, prec: u32) -> Self {
        RealBall { mid, rad: Mag::zero(), prec }
    }

    pub fn zero(prec: u32) -> Self {
        Self::exact(Dyadic::zero(), prec)
    }

    pub fn one(prec: u32) -> Self {
        Self::exact(Dyadic::one(), prec)
    }

    pub fn from_int(v: &BigInt, prec: u32) -> Self {
        Self::exact(Dyadic::from_int(v.clone()), prec)
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        Self::exact(Dyadic::from_i64(v), prec)
    }

    pub fn from_f64_exact(v: f64, prec: u32) -> Self {
        Self::exact(Dyadic::from_f64(v), prec)
    }

    pub fn from_rat(r: &BigRational, prec: u32) -> Self {
        let (mid, err) = Dyadic::from_rat_floor(r, prec);
        RealBall { mid, rad: err, prec }
    }

    /// Interval hull `[lo, hi]`.
    pub fn from_endpoints(lo: &Dyadic, hi: &Dyadic, prec: u32) -> Self {
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        let sum = lo.add(hi);
        let mid = sum.mul_2exp(-1);
        let rad = hi.sub(lo).mul_2exp(-1).mag_up();
        RealBall::new(mid, rad, prec)
    }

    pub fn mid(&self) -> &Dyadic {
        &self.mid
    }

    pub fn rad(&self) -> Mag {
        self.rad
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        RealBall::new(self.mid.clone(), self.rad, prec)
    }

    pub fn add_error(&self, err: Mag) -> Self {
        RealBall { mid: self.mid.clone(), rad: self.rad.add(&err), prec: self.prec }
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn lower(&self) -> Dyadic {
        self.mid.sub(&self.rad.to_dyadic())
    }

    pub fn upper(&self) -> Dyadic {
        self.mid.add(&self.rad.to_dyadic())
    }

    /// Upper bound for `|x|` over the ball.
    pub fn mag_up(&self) -> Mag {
        self.mid.mag_up().add(&self.rad)
    }

    /// Lower bound for `|x|` over the ball (zero if the ball contains zero).
    pub fn mag_down(&self) -> Mag {
        if self.contains_zero() {
            return Mag::zero();
        }
        let l = self.lower();
        let u = self.upper();
        if l.is_negative() {
            u.abs().mag_down()
        } else {
            l.mag_down()
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    pub fn contains_zero(&self) -> bool {
        let l = self.lower();
        let u = self.upper();
        (l.is_zero() || l.is_negative()) && !u.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        let l = self.lower();
        !l.is_zero() && !l.is_negative()
    }

    pub fn is_negative(&self) -> bool {
        self.upper().is_negative()
    }

    pub fn contains_dyadic(&self, d: &Dyadic) -> bool {
        &self.lower() <= d && d <= &self.upper()
    }

    pub fn contains_rat(&self, r: &BigRational) -> bool {
        self.lower().cmp_rat(r) != Ordering::Greater && self.upper().cmp_rat(r) != Ordering::Less
    }

    pub fn contains_int(&self, v: &BigInt) -> bool {
        self.contains_dyadic(&Dyadic::from_int(v.clone()))
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &RealBall) -> bool {
        self.lower() <= other.lower() && other.upper() <= self.upper()
    }

    pub fn overlaps(&self, other: &RealBall) -> bool {
        self.lower() <= other.upper() && other.lower() <= self.upper()
    }

    /// Integers inside the ball, as `(ceil(lower), floor(upper))`.
    pub fn integer_range(&self) -> (BigInt, BigInt) {
        (self.lower().ceil(), self.upper().floor())
    }

    /// The unique integer in the ball, if there is exactly one.
    pub fn unique_integer(&self) -> Option<BigInt> {
        let (lo, hi) = self.integer_range();
        if lo == hi {
            Some(lo)
        } else {
            None
        }
    }

    pub fn hull(&self, other: &RealBall) -> RealBall {
        let lo = std::cmp::min(self.lower(), other.lower());
        let hi = std::cmp::max(self.upper(), other.upper());
        RealBall::from_endpoints(&lo, &hi, self.prec.max(other.prec))
    }

    /// Intersection; `None` if disjoint.
    pub fn intersect(&self, other: &RealBall) -> Option<RealBall> {
        let lo = std::cmp::max(self.lower(), other.lower());
        let hi = std::cmp::min(self.upper(), other.upper());
        if lo > hi {
            return None;
        }
        Some(RealBall::from_endpoints(&lo, &hi, self.prec.max(other.prec)))
    }

    /// Restrict to `[floor, ∞)` when the true value is known to be ≥ floor.
    pub fn clamp_below(&self, floor: &Dyadic) -> RealBall {
        if &self.lower() >= floor {
            return self.clone();
        }
        let hi = std::cmp::max(self.upper(), floor.clone());
        RealBall::from_endpoints(floor, &hi, self.prec)
    }

    pub fn compare(&self, other: &RealBall) -> Cmp {
        if self.upper() < other.lower() {
            Cmp::Less
        } else if self.lower() > other.upper() {
            Cmp::Greater
        } else {
            Cmp::Indeterminate
        }
    }

    pub fn compare_rat(&self, r: &BigRational) -> Cmp {
        if self.upper().cmp_rat(r) == Ordering::Less {
            Cmp::Less
        } else if self.lower().cmp_rat(r) == Ordering::Greater {
            Cmp::Greater
        } else {
            Cmp::Indeterminate
        }
    }

    pub fn abs(&self) -> RealBall {
        if !self.contains_zero() {
            if self.mid.is_negative() {
                return -self;
            }
            return self.clone();
        }
        let hi = std::cmp::max(self.upper(), self.lower().neg());
        RealBall::from_endpoints(&Dyadic::zero(), &hi, self.prec)
    }

    pub fn sqr(&self) -> RealBall {
        let a = self.abs();
        &a * &a
    }

    pub fn pow(&self, n: u64) -> RealBall {
        let mut result = RealBall::one(self.prec);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        result
    }

    pub fn mul_2exp(&self, k: i64) -> RealBall {
        RealBall { mid: self.mid.mul_2exp(k), rad: self.rad.mul_2exp(k), prec: self.prec }
    }

    pub fn mul_int(&self, k: &BigInt) -> RealBall {
        self * &RealBall::from_int(k, self.prec)
    }

    pub fn div(&self, other: &RealBall) -> Result<RealBall> {
        if other.contains_zero() {
            return Err(Error::Indeterminate { what: "division by a ball containing zero".into(), bits: other.prec });
        }
        let prec = self.prec.max(other.prec);
        // mid quotient with prec + 2 bits
        let (q, qerr) = div_dyadic(&self.mid, &other.mid, prec);
        // |x/y - mx/my| <= (rx + |mx/my| ry) / (|my| - ry)
        let mut rad = qerr;
        if !self.rad.is_zero() || !other.rad.is_zero() {
            let qmag = q.mag_up().add(&qerr);
            let num = self.rad.add(&qmag.mul(&other.rad));
            let den_lo = other.mag_down();
            rad = rad.add(&num.div(&den_lo));
        }
        Ok(RealBall::new(q, rad, prec))
    }

    pub fn inv(&self) -> Result<RealBall> {
        RealBall::one(self.prec).div(self)
    }

    pub fn div_int(&self, k: &BigInt) -> Result<RealBall> {
        self.div(&RealBall::from_int(k, self.prec))
    }

    pub fn sqrt(&self) -> Result<RealBall> {
        if self.is_negative() {
            return Err(Error::invalid("square root of a negative ball"));
        }
        let prec = self.prec;
        if !self.is_positive() {
            // ball touches zero: [0, sqrt(upper)]
            let up = self.upper();
            let s = up.mag_up().sqrt_up().to_dyadic();
            return Ok(RealBall::from_endpoints(&Dyadic::zero(), &s, prec));
        }
        let (s, serr) = sqrt_dyadic(&self.mid, prec);
        let mut rad = serr;
        if !self.rad.is_zero() {
            let lo = self.lower().mag_down().sqrt_down();
            rad = rad.add(&self.rad.div(&lo));
        }
        Ok(RealBall::new(s, rad, prec))
    }

    /// Width `2·rad` as an upper bound.
    pub fn width(&self) -> Mag {
        self.rad.mul_2exp(1)
    }
}

/// `a / b` truncated to about `prec` bits; returns (quotient, error bound).
fn div_dyadic(a: &Dyadic, b: &Dyadic, prec: u32) -> (Dyadic, Mag) {
    if a.is_zero() {
        return (Dyadic::zero(), Mag::zero());
    }
    // a = ma 2^ea, b = mb 2^eb; q = (ma << k) / mb * 2^(ea - eb - k)
    let k = (prec as i64 + 2 + b.bits() as i64 - a.bits() as i64).max(0);
    let num = a.mantissa() << k as usize;
    let (q, r) = num.div_mod_floor(b.mantissa());
    let e = a.exponent() - b.exponent() - k;
    let err = if r.is_zero() { Mag::zero() } else { Mag::pow2(e) };
    (Dyadic::new(q, e), err)
}

/// `sqrt(a)` for `a > 0`, truncated; returns (root, error bound).
fn sqrt_dyadic(a: &Dyadic, prec: u32) -> (Dyadic, Mag) {
    let target = 2 * (prec as i64 + 2);
    let mut k = (target - a.bits() as i64).max(0);
    if (a.exponent() - k).rem_euclid(2) != 0 {
        k += 1;
    }
    let m = a.mantissa() << k as usize;
    let s = m.sqrt();
    let e = (a.exponent() - k) / 2;
    let exact = &s * &s == m;
    let err = if exact { Mag::zero() } else { Mag::pow2(e) };
    (Dyadic::new(s, e), err)
}

impl Add for &RealBall {
    type Output = RealBall;
    fn add(self, o: &RealBall) -> RealBall {
        let prec = self.prec.max(o.prec);
        RealBall::new(self.mid.add(&o.mid), self.rad.add(&o.rad), prec)
    }
}

impl Sub for &RealBall {
    type Output = RealBall;
    fn sub(self, o: &RealBall) -> RealBall {
        let prec = self.prec.max(o.prec);
        RealBall::new(self.mid.sub(&o.mid), self.rad.add(&o.rad), prec)
    }
}

impl Mul for &RealBall {
    type Output = RealBall;
    fn mul(self, o: &RealBall) -> RealBall {
        let prec = self.prec.max(o.prec);
        let mid = self.mid.mul(&o.mid);
        let mut rad = Mag::zero();
        if !o.rad.is_zero() {
            rad = rad.add(&self.mid.mag_up().mul(&o.rad));
        }
        if !self.rad.is_zero() {
            rad = rad.add(&o.mid.mag_up().mul(&self.rad));
            rad = rad.add(&self.rad.mul(&o.rad));
        }
        RealBall::new(mid, rad, prec)
    }
}

impl Neg for &RealBall {
    type Output = RealBall;
    fn neg(self) -> RealBall {
        RealBall { mid: self.mid.neg(), rad: self.rad, prec: self.prec }
    }
}

impl Add for RealBall {
    type Output = RealBall;
    fn add(self, o: RealBall) -> RealBall {
        &self + &o
    }
}

impl Sub for RealBall {
    type Output = RealBall;
    fn sub(self, o: RealBall) -> RealBall {
        &self - &o
    }
}

impl Mul for RealBall {
    type Output = RealBall;
    fn mul(self, o: RealBall) -> RealBall {
        &self * &o
    }
}

impl Neg for RealBall {
    type Output = RealBall;
    fn neg(self) -> RealBall {
        -&self
    }
}

/// Exact rational `r` as a ball; exact when `r` is dyadic.
#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: f64, r: f64) -> RealBall {
        RealBall::new(Dyadic::from_f64(x), Dyadic::from_f64(r).mag_up(), 64)
    }

    #[test]
    fn power_of_two_exact() {
        let two = RealBall::from_i64(2, 64);
        let p = two.pow(5);
        assert!(p.is_exact());
        assert_eq!(p.mid(), &Dyadic::from_i64(32));
    }

    #[test]
    fn abs_of_ball_around_zero() {
        let x = b(0.0, 0.5);
        let a = x.abs();
        assert!(a.contains_dyadic(&Dyadic::zero()));
        assert!(a.contains_dyadic(&Dyadic::from_f64(0.5)));
        assert!(!a.contains_dyadic(&Dyadic::from_f64(-0.01)));
    }

    #[test]
    fn compare_examples() {
        assert_eq!(b(0.5, 0.01).compare(&b(1.0, 0.0)), Cmp::Less);
        assert_eq!(b(1.0, 0.1).compare(&b(1.0, 0.0)), Cmp::Indeterminate);
        assert_eq!(b(1.001, 0.0001).compare(&b(1.0, 0.0)), Cmp::Greater);
    }

    #[test]
    fn division_encloses() {
        let x = RealBall::from_i64(1, 100);
        let y = RealBall::from_i64(3, 100);
        let q = x.div(&y).unwrap();
        assert!(q.contains_rat(&BigRational::new(1.into(), 3.into())));
        assert!(q.rad().to_f64() < 1e-28);
        assert!(x.div(&b(0.0, 1.0)).is_err());
    }

    #[test]
    fn sqrt_two() {
        let s = RealBall::from_i64(2, 128).sqrt().unwrap();
        let sq = s.sqr();
        assert!(sq.contains_int(&BigInt::from(2)));
        assert!(s.rad().to_f64() < 1e-35);
    }
}
