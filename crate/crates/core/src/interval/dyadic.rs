use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::mag::Mag;

/// Exact binary floating value `man * 2^exp`, normalized so the mantissa is
/// odd (or zero with exponent zero).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    man: BigInt,
    exp: i64,
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.man, self.exp)
    }
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic { man: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { man: BigInt::one(), exp: 0 }
    }

    pub fn new(man: BigInt, exp: i64) -> Self {
        if man.is_zero() {
            return Self::zero();
        }
        let tz = man.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            Dyadic { man: man >> tz, exp: exp + tz as i64 }
        } else {
            Dyadic { man, exp }
        }
    }

    pub fn from_int(v: BigInt) -> Self {
        Self::new(v, 0)
    }

    pub fn from_i64(v: i64) -> Self {
        Self::new(BigInt::from(v), 0)
    }

    /// Exact conversion from an `f64` (which is always dyadic).
    pub fn from_f64(v: f64) -> Self {
        if v == 0.0 || !v.is_finite() {
            return Self::zero();
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 0 { 1i64 } else { -1 };
        let exponent = ((bits >> 52) & 0x7ff) as i64;
        let fraction = bits & 0x000f_ffff_ffff_ffff;
        let (m, e) = if exponent == 0 {
            (fraction, -1074)
        } else {
            (fraction | (1u64 << 52), exponent - 1075)
        };
        Self::new(BigInt::from(m) * sign, e)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.man.is_negative()
    }

    pub fn sign(&self) -> Sign {
        self.man.sign()
    }

    /// Bit length of the mantissa.
    pub fn bits(&self) -> u64 {
        self.man.bits()
    }

    /// `|x| < 2^top_exp`; meaningless for zero.
    pub fn top_exp(&self) -> i64 {
        self.exp + self.man.bits() as i64
    }

    pub fn neg(&self) -> Self {
        Dyadic { man: -&self.man, exp: self.exp }
    }

    pub fn abs(&self) -> Self {
        Dyadic { man: self.man.abs(), exp: self.exp }
    }

    pub fn mul_2exp(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Dyadic { man: self.man.clone(), exp: self.exp + k }
    }

    pub fn add(&self, o: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        match self.exp.cmp(&o.exp) {
            Ordering::Equal => Dyadic::new(&self.man + &o.man, self.exp),
            Ordering::Less => {
                let shifted = &o.man << ((o.exp - self.exp) as usize);
                Dyadic::new(&self.man + shifted, self.exp)
            }
            Ordering::Greater => {
                let shifted = &self.man << ((self.exp - o.exp) as usize);
                Dyadic::new(shifted + &o.man, o.exp)
            }
        }
    }

    pub fn sub(&self, o: &Dyadic) -> Dyadic {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Dyadic) -> Dyadic {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        Dyadic { man: &self.man * &o.man, exp: self.exp + o.exp }
    }

    /// Rounds toward negative infinity to at most `prec` significant bits.
    /// Returns the rounded value and an upper bound on the discarded part.
    pub fn round(&self, prec: u32) -> (Dyadic, Mag) {
        let bits = self.man.bits();
        if bits <= prec as u64 {
            return (self.clone(), Mag::zero());
        }
        let shift = bits - prec as u64;
        // arithmetic shift floors toward -inf for negative values
        let man = &self.man >> shift as usize;
        let exp = self.exp + shift as i64;
        (Dyadic::new(man, exp), Mag::pow2(exp))
    }

    /// Upper bound for `|self|`.
    pub fn mag_up(&self) -> Mag {
        Mag::from_dyadic_up(self)
    }

    pub fn mag_down(&self) -> Mag {
        Mag::from_dyadic_down(self)
    }

    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.man << self.exp as usize
        } else {
            &self.man >> (-self.exp) as usize
        }
    }

    pub fn ceil(&self) -> BigInt {
        -(self.neg().floor())
    }

    pub fn to_rat(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.man << self.exp as usize)
        } else {
            BigRational::new(self.man.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    /// Exact comparison against a rational.
    pub fn cmp_rat(&self, r: &BigRational) -> Ordering {
        // self = man*2^exp ; r = n/d with d > 0
        let (n, d) = (r.numer(), r.denom());
        if self.exp >= 0 {
            ((&self.man << self.exp as usize) * d).cmp(n)
        } else {
            (&self.man * d).cmp(&(n << (-self.exp) as usize))
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.man.bits() as i64;
        let (m, e) = if bits > 60 {
            let s = bits - 60;
            ((&self.man >> s as usize).to_f64().unwrap_or(0.0), self.exp + s)
        } else {
            (self.man.to_f64().unwrap_or(0.0), self.exp)
        };
        if e > 2000 {
            return if m > 0.0 { f64::INFINITY } else { f64::NEG_INFINITY };
        }
        if e < -2200 {
            return 0.0;
        }
        m * 2f64.powi(e as i32)
    }

    /// `floor(log2 |x|)`; zero maps to `i64::MIN`.
    pub fn log2_floor(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.top_exp() - 1
        }
    }

    /// Integer part quotient `floor(self / 2^k)` for fixed point conversion:
    /// returns `floor(self * 2^w)`.
    pub fn to_fixed_floor(&self, w: i64) -> BigInt {
        self.mul_2exp(w).floor()
    }

    pub fn is_integer(&self) -> bool {
        self.exp >= 0 || self.is_zero()
    }

    pub fn from_rat_floor(r: &BigRational, prec: u32) -> (Dyadic, Mag) {
        // floor(r * 2^k) * 2^-k with k chosen to keep ~prec bits
        if r.is_zero() {
            return (Dyadic::zero(), Mag::zero());
        }
        let nb = r.numer().bits() as i64;
        let db = r.denom().bits() as i64;
        let k = prec as i64 + 2 - (nb - db);
        let scaled = if k >= 0 {
            (r.numer() << k as usize).div_floor(r.denom())
        } else {
            r.numer().div_floor(&(r.denom() << (-k) as usize))
        };
        let exact = if k >= 0 {
            &scaled * r.denom() == (r.numer() << k as usize)
        } else {
            &scaled * (r.denom() << (-k) as usize) == *r.numer()
        };
        let d = Dyadic::new(scaled, -k);
        if exact {
            (d, Mag::zero())
        } else {
            (d, Mag::pow2(-k))
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let s1 = self.man.sign();
        let s2 = other.man.sign();
        if s1 != s2 {
            let rank = |s: Sign| match s {
                Sign::Minus => 0,
                Sign::NoSign => 1,
                Sign::Plus => 2,
            };
            return rank(s1).cmp(&rank(s2));
        }
        if s1 == Sign::NoSign {
            return Ordering::Equal;
        }
        // same sign: compare magnitudes by top exponent first
        let t1 = self.top_exp();
        let t2 = other.top_exp();
        if t1 != t2 {
            let ord = t1.cmp(&t2);
            return if s1 == Sign::Plus { ord } else { ord.reverse() };
        }
        match self.sub(other).man.sign() {
            Sign::Plus => Ordering::Greater,
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_strips_trailing_zeros() {
        let d = Dyadic::new(BigInt::from(12), 0);
        assert_eq!(d.mantissa(), &BigInt::from(3));
        assert_eq!(d.exponent(), 2);
    }

    #[test]
    fn ordering_matches_rationals() {
        let vals = [-3.5, -1.0, -0.25, 0.0, 0.125, 1.0, 7.75, 1e10];
        for a in vals {
            for b in vals {
                let da = Dyadic::from_f64(a);
                let db = Dyadic::from_f64(b);
                assert_eq!(da.cmp(&db), a.partial_cmp(&b).unwrap(), "{a} vs {b}");
            }
        }
    }

    #[test]
    fn round_floors_and_bounds_error() {
        let d = Dyadic::new(BigInt::from(-0b1011011), 0);
        let (r, err) = d.round(3);
        assert!(r <= d);
        assert!(d.sub(&r) <= err.to_dyadic());
    }

    #[test]
    fn floor_and_ceil() {
        let d = Dyadic::from_f64(-2.5);
        assert_eq!(d.floor(), BigInt::from(-3));
        assert_eq!(d.ceil(), BigInt::from(-2));
    }
}
