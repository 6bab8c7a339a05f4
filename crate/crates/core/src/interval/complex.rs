use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::dyadic::Dyadic;
use super::mag::Mag;
use super::real::RealBall;
use crate::error::{Error, Result};

/// Rectangular complex ball: independent real and imaginary enclosures.
#[derive(Clone, PartialEq, Eq)]
pub struct ComplexBall {
    pub re: RealBall,
    pub im: RealBall,
}

impl fmt::Debug for ComplexBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})i", self.re, self.im)
    }
}

impl fmt::Display for ComplexBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})i", self.re, self.im)
    }
}

impl ComplexBall {
    pub fn new(re: RealBall, im: RealBall) -> Self {
        ComplexBall { re, im }
    }

    pub fn real(re: RealBall) -> Self {
        let p = re.prec();
        ComplexBall { re, im: RealBall::zero(p) }
    }

    pub fn zero(prec: u32) -> Self {
        Self::real(RealBall::zero(prec))
    }

    pub fn one(prec: u32) -> Self {
        Self::real(RealBall::one(prec))
    }

    pub fn from_int(v: &BigInt, prec: u32) -> Self {
        Self::real(RealBall::from_int(v, prec))
    }

    pub fn from_rat(r: &BigRational, prec: u32) -> Self {
        Self::real(RealBall::from_rat(r, prec))
    }

    pub fn from_f64_pair(re: f64, im: f64, prec: u32) -> Self {
        ComplexBall { re: RealBall::from_f64_exact(re, prec), im: RealBall::from_f64_exact(im, prec) }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        ComplexBall { re: self.re.with_prec(prec), im: self.im.with_prec(prec) }
    }

    /// Midpoint as a complex ball with zero radius.
    pub fn mid_point(&self) -> Self {
        let p = self.prec();
        ComplexBall { re: RealBall::exact(self.re.mid().clone(), p), im: RealBall::exact(self.im.mid().clone(), p) }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn conj(&self) -> Self {
        ComplexBall { re: self.re.clone(), im: -&self.im }
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn overlaps(&self, o: &ComplexBall) -> bool {
        self.re.overlaps(&o.re) && self.im.overlaps(&o.im)
    }

    pub fn contains(&self, o: &ComplexBall) -> bool {
        self.re.contains(&o.re) && self.im.contains(&o.im)
    }

    pub fn intersect(&self, o: &ComplexBall) -> Option<ComplexBall> {
        Some(ComplexBall { re: self.re.intersect(&o.re)?, im: self.im.intersect(&o.im)? })
    }

    pub fn hull(&self, o: &ComplexBall) -> ComplexBall {
        ComplexBall { re: self.re.hull(&o.re), im: self.im.hull(&o.im) }
    }

    /// Inflate both parts by `r`, giving a rectangle containing the disc of
    /// radius `r` around every point of `self`.
    pub fn inflate(&self, r: Mag) -> Self {
        ComplexBall { re: self.re.add_error(r), im: self.im.add_error(r) }
    }

    /// Enclosure of `|z|^2`.
    pub fn abs_sqr(&self) -> RealBall {
        &self.re.sqr() + &self.im.sqr()
    }

    /// Enclosure of `|z|`.
    pub fn abs(&self) -> RealBall {
        self.abs_sqr().sqrt().expect("nonnegative")
    }

    /// Upper bound for `|z|` over the rectangle.
    pub fn mag_up(&self) -> Mag {
        let a = self.re.mag_up();
        let b = self.im.mag_up();
        a.mul(&a).add(&b.mul(&b)).sqrt_up()
    }

    /// Lower bound for `|z|` over the rectangle.
    pub fn mag_down(&self) -> Mag {
        let a = self.re.mag_down();
        let b = self.im.mag_down();
        let s = Dyadic::add(&a.to_dyadic().mul(&a.to_dyadic()), &b.to_dyadic().mul(&b.to_dyadic()));
        s.mag_down().sqrt_down()
    }

    /// Largest of the two radii.
    pub fn rad(&self) -> Mag {
        self.re.rad().max(&self.im.rad())
    }

    pub fn sqr(&self) -> Self {
        self * self
    }

    pub fn pow(&self, n: u64) -> Self {
        let mut result = ComplexBall::one(self.prec());
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

    pub fn scale(&self, r: &RealBall) -> Self {
        ComplexBall { re: &self.re * r, im: &self.im * r }
    }

    pub fn mul_2exp(&self, k: i64) -> Self {
        ComplexBall { re: self.re.mul_2exp(k), im: self.im.mul_2exp(k) }
    }

    pub fn inv(&self) -> Result<Self> {
        let d = self.abs_sqr();
        if d.contains_zero() {
            return Err(Error::Indeterminate { what: "inverse of a ball containing zero".into(), bits: self.prec() });
        }
        Ok(ComplexBall { re: self.re.div(&d)?, im: (-&self.im).div(&d)? })
    }

    pub fn div(&self, o: &ComplexBall) -> Result<Self> {
        if o.im.is_exact() && o.im.mid().is_zero() {
            return Ok(ComplexBall { re: self.re.div(&o.re)?, im: self.im.div(&o.re)? });
        }
        let d = o.abs_sqr();
        if d.contains_zero() {
            return Err(Error::Indeterminate { what: "division by a ball containing zero".into(), bits: o.prec() });
        }
        let n = self * &o.conj();
        Ok(ComplexBall { re: n.re.div(&d)?, im: n.im.div(&d)? })
    }

    /// Whether the imaginary part is certified nonzero.
    pub fn is_nonreal(&self) -> bool {
        !self.im.contains_zero()
    }
}

impl Add for &ComplexBall {
    type Output = ComplexBall;
    fn add(self, o: &ComplexBall) -> ComplexBall {
        ComplexBall { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Sub for &ComplexBall {
    type Output = ComplexBall;
    fn sub(self, o: &ComplexBall) -> ComplexBall {
        ComplexBall { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Mul for &ComplexBall {
    type Output = ComplexBall;
    fn mul(self, o: &ComplexBall) -> ComplexBall {
        let re = &(&self.re * &o.re) - &(&self.im * &o.im);
        let im = &(&self.re * &o.im) + &(&self.im * &o.re);
        ComplexBall { re, im }
    }
}

impl Neg for &ComplexBall {
    type Output = ComplexBall;
    fn neg(self) -> ComplexBall {
        ComplexBall { re: -&self.re, im: -&self.im }
    }
}

impl Add for ComplexBall {
    type Output = ComplexBall;
    fn add(self, o: ComplexBall) -> ComplexBall {
        &self + &o
    }
}

impl Sub for ComplexBall {
    type Output = ComplexBall;
    fn sub(self, o: ComplexBall) -> ComplexBall {
        &self - &o
    }
}

impl Mul for ComplexBall {
    type Output = ComplexBall;
    fn mul(self, o: ComplexBall) -> ComplexBall {
        &self * &o
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared_is_minus_one() {
        let i = ComplexBall::from_f64_pair(0.0, 1.0, 64);
        let s = i.sqr();
        assert!(s.re.contains_int(&BigInt::from(-1)));
        assert!(s.im.contains_int(&BigInt::from(0)));
    }

    #[test]
    fn division_round_trip() {
        let a = ComplexBall::from_f64_pair(1.5, -2.0, 128);
        let b = ComplexBall::from_f64_pair(0.25, 3.0, 128);
        let q = a.div(&b).unwrap();
        let back = &q * &b;
        assert!(back.re.contains_dyadic(&Dyadic::from_f64(1.5)));
        assert!(back.im.contains_dyadic(&Dyadic::from_f64(-2.0)));
    }

    #[test]
    fn modulus_bounds() {
        let z = ComplexBall::from_f64_pair(3.0, 4.0, 64);
        assert!(z.mag_down().to_f64() <= 5.0 && z.mag_up().to_f64() >= 5.0);
        assert!(z.abs().contains_int(&BigInt::from(5)));
    }
}
