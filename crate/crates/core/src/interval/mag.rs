use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::dyadic::Dyadic;

const MAG_BITS: u32 = 30;

/// Nonnegative magnitude `man * 2^exp` with a short mantissa, used for ball
/// radii. Every operation rounds up unless its name says otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mag {
    man: u64,
    exp: i64,
}

impl Mag {
    pub fn zero() -> Self {
        Mag { man: 0, exp: 0 }
    }

    pub fn pow2(e: i64) -> Self {
        Mag { man: 1, exp: e }.norm_up()
    }

    pub fn from_u64(v: u64) -> Self {
        Mag { man: v, exp: 0 }.norm_up()
    }

    pub fn is_zero(&self) -> bool {
        self.man == 0
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    fn norm_up(mut self) -> Self {
        if self.man == 0 {
            return Mag::zero();
        }
        while self.man >= (1u64 << MAG_BITS) {
            let lost = self.man & 1;
            self.man = (self.man >> 1) + lost;
            self.exp += 1;
        }
        self
    }

    fn norm_down(mut self) -> Self {
        if self.man == 0 {
            return Mag::zero();
        }
        while self.man >= (1u64 << MAG_BITS) {
            self.man >>= 1;
            self.exp += 1;
        }
        self
    }

    fn from_u128_up(mut m: u128, mut e: i64) -> Self {
        if m == 0 {
            return Mag::zero();
        }
        let bits = 128 - m.leading_zeros();
        if bits > 62 {
            let s = bits - 62;
            let lost = m & ((1u128 << s) - 1) != 0;
            m = (m >> s) + lost as u128;
            e += s as i64;
        }
        Mag { man: m as u64, exp: e }.norm_up()
    }

    pub fn from_dyadic_up(d: &Dyadic) -> Self {
        Self::from_bigint_up(d.mantissa(), d.exponent())
    }

    pub fn from_dyadic_down(d: &Dyadic) -> Self {
        if d.is_zero() {
            return Mag::zero();
        }
        let a = d.mantissa().abs();
        let bits = a.bits();
        if bits <= 62 {
            return Mag { man: a.to_u64().unwrap(), exp: d.exponent() }.norm_down();
        }
        let s = bits - 62;
        let m = (a >> s as usize).to_u64().unwrap();
        Mag { man: m, exp: d.exponent() + s as i64 }.norm_down()
    }

    pub fn from_bigint_up(man: &BigInt, exp: i64) -> Self {
        if man.is_zero() {
            return Mag::zero();
        }
        let a = man.abs();
        let bits = a.bits();
        if bits <= 62 {
            return Mag { man: a.to_u64().unwrap(), exp }.norm_up();
        }
        let s = bits - 62;
        let lost = a.trailing_zeros().unwrap_or(0) < s;
        let m = (a >> s as usize).to_u64().unwrap() + lost as u64;
        Mag { man: m, exp: exp + s as i64 }.norm_up()
    }

    pub fn to_dyadic(&self) -> Dyadic {
        Dyadic::new(BigInt::from(self.man), self.exp)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_dyadic().to_f64()
    }

    pub fn add(&self, o: &Mag) -> Mag {
        if self.is_zero() {
            return *o;
        }
        if o.is_zero() {
            return *self;
        }
        let (hi, lo) = if self.exp >= o.exp { (self, o) } else { (o, self) };
        let shift = hi.exp - lo.exp;
        if shift > 64 {
            // lo is below one unit of hi's mantissa: absorb it as one ulp
            return Mag { man: hi.man + 1, exp: hi.exp }.norm_up();
        }
        let m = ((hi.man as u128) << shift) + lo.man as u128;
        Self::from_u128_up(m, lo.exp)
    }

    pub fn mul(&self, o: &Mag) -> Mag {
        if self.is_zero() || o.is_zero() {
            return Mag::zero();
        }
        Self::from_u128_up(self.man as u128 * o.man as u128, self.exp + o.exp)
    }

    pub fn mul_u64(&self, k: u64) -> Mag {
        self.mul(&Mag::from_u64(k))
    }

    pub fn mul_2exp(&self, k: i64) -> Mag {
        if self.is_zero() {
            return *self;
        }
        Mag { man: self.man, exp: self.exp + k }
    }

    /// Upper bound on `self / o`; `o` must be nonzero.
    pub fn div(&self, o: &Mag) -> Mag {
        assert!(!o.is_zero(), "Mag division by zero");
        if self.is_zero() {
            return Mag::zero();
        }
        let num = (self.man as u128) << 64;
        let d = o.man as u128;
        let q = num / d + !num.is_multiple_of(d) as u128;
        Self::from_u128_up(q, self.exp - 64 - o.exp)
    }

    /// Lower bound on `self / o`.
    pub fn div_down(&self, o: &Mag) -> Mag {
        if self.is_zero() {
            return Mag::zero();
        }
        let num = (self.man as u128) << 64;
        let q = num / o.man as u128;
        let bits = 128 - q.leading_zeros();
        let (m, e) = if bits > 62 {
            let s = bits - 62;
            ((q >> s) as u64, self.exp - 64 - o.exp + s as i64)
        } else {
            (q as u64, self.exp - 64 - o.exp)
        };
        Mag { man: m, exp: e }.norm_down()
    }

    /// Upper bound on `sqrt(self)`.
    pub fn sqrt_up(&self) -> Mag {
        if self.is_zero() {
            return *self;
        }
        let (mut m, mut e) = ((self.man as u128) << 60, self.exp - 60);
        if e % 2 != 0 {
            m <<= 1;
            e -= 1;
        }
        let mut s = (m as f64).sqrt() as u128;
        while s * s < m {
            s += 1;
        }
        while s > 0 && (s - 1) * (s - 1) >= m {
            s -= 1;
        }
        Self::from_u128_up(s, e / 2)
    }

    /// Lower bound on `sqrt(self)`.
    pub fn sqrt_down(&self) -> Mag {
        if self.is_zero() {
            return *self;
        }
        let (mut m, mut e) = ((self.man as u128) << 60, self.exp - 60);
        if e % 2 != 0 {
            m <<= 1;
            e -= 1;
        }
        let mut s = (m as f64).sqrt() as u128;
        while s * s > m {
            s -= 1;
        }
        while (s + 1) * (s + 1) <= m {
            s += 1;
        }
        Mag { man: s as u64, exp: e / 2 }.norm_down()
    }

    pub fn max(&self, o: &Mag) -> Mag {
        if self.cmp_mag(o) == Ordering::Less {
            *o
        } else {
            *self
        }
    }

    pub fn cmp_mag(&self, o: &Mag) -> Ordering {
        self.to_dyadic().cmp(&o.to_dyadic())
    }

    /// `floor(log2(self))` rounded up to an integer bound, i.e. an integer
    /// `e` with `self < 2^e`.
    pub fn log2_ceil_bound(&self) -> i64 {
        if self.is_zero() {
            return i64::MIN / 2;
        }
        self.exp + (64 - self.man.leading_zeros()) as i64
    }
}
