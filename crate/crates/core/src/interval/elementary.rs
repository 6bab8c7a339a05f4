use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::BigInt;

use super::dyadic::Dyadic;
use super::mag::Mag;
use super::real::RealBall;
use crate::error::{Error, Result};

thread_local! {
    static LN2_CACHE: RefCell<HashMap<u32, RealBall>> = RefCell::new(HashMap::new());
}

/// `atanh(t)` for an exact dyadic `|t| <= 1/2`, via its odd power series.
fn atanh_small(t: &Dyadic, prec: u32) -> RealBall {
    let tb = RealBall::exact(t.clone(), prec);
    let t2 = tb.sqr();
    let mut power = tb.clone();
    let mut sum = tb.clone();
    let target = -(prec as i64) - 4;
    let mut k: u64 = 1;
    loop {
        power = &power * &t2;
        let term = power.div_int(&BigInt::from(2 * k + 1)).expect("odd denominator");
        sum = &sum + &term;
        k += 1;
        if power.mag_up().log2_ceil_bound() < target {
            break;
        }
    }
    // remaining terms are bounded by |t|^(2k+1) / (1 - t^2) <= 4/3 |t|^(2k+1)
    let tail = power.mag_up().mul(&t2.mag_up()).mul(&Mag::from_u64(2));
    sum.add_error(tail)
}

/// Enclosure of `ln 2` with about `prec` correct bits.
pub fn ln2(prec: u32) -> RealBall {
    if let Some(v) = LN2_CACHE.with(|c| c.borrow().get(&prec).cloned()) {
        return v;
    }
    let wp = prec + 16;
    // ln 2 = 2 atanh(1/3); 1/3 is not dyadic so evaluate the series in balls
    let third = RealBall::one(wp).div_int(&BigInt::from(3)).expect("nonzero");
    let t2 = third.sqr();
    let mut power = third.clone();
    let mut sum = third.clone();
    let target = -(wp as i64) - 4;
    let mut k: u64 = 1;
    loop {
        power = &power * &t2;
        sum = &sum + &power.div_int(&BigInt::from(2 * k + 1)).expect("odd denominator");
        k += 1;
        if power.mag_up().log2_ceil_bound() < target {
            break;
        }
    }
    let tail = power.mag_up().mul(&Mag::pow2(-2));
    let v = sum.add_error(tail).mul_2exp(1).with_prec(prec);
    LN2_CACHE.with(|c| c.borrow_mut().insert(prec, v.clone()));
    v
}

/// `ln(x)` for an exact positive dyadic.
fn log_dyadic(x: &Dyadic, prec: u32) -> RealBall {
    if x == &Dyadic::one() {
        return RealBall::zero(prec);
    }
    // x = y 2^k with y in [1, 2)
    let k = x.top_exp() - 1;
    let y = x.mul_2exp(-k);
    let kbits = 64 - (k.unsigned_abs()).leading_zeros();
    let wp = prec + 20 + kbits;
    // t = (y - 1)/(y + 1) in [0, 1/3)
    let num = y.sub(&Dyadic::one());
    let den = y.add(&Dyadic::one());
    let tball = RealBall::exact(num, wp).div(&RealBall::exact(den, wp)).expect("positive");
    let t_mid = tball.mid().clone();
    let t_err = tball.rad();
    // d/dt atanh(t) = 1/(1 - t^2) <= 9/8 near t_mid
    let at = atanh_small(&t_mid, wp).add_error(t_err.mul(&Mag::from_u64(2)));
    let logy = at.mul_2exp(1);
    let r = if k == 0 { logy } else { &logy + &ln2(wp).mul_int(&BigInt::from(k)) };
    r.with_prec(prec)
}

/// `exp(x)` for an exact dyadic.
fn exp_dyadic(x: &Dyadic, prec: u32) -> Result<RealBall> {
    if x.is_zero() {
        return Ok(RealBall::one(prec));
    }
    let xf = x.to_f64();
    if !xf.is_finite() || xf.abs() > 1e15 {
        return Err(Error::invalid("exponent argument out of range"));
    }
    let k = (xf / std::f64::consts::LN_2).round() as i64;
    let kbits = 64 - k.unsigned_abs().leading_zeros();
    let s: i64 = 12;
    let wp = prec + 24 + kbits + s as u32;
    let xb = RealBall::exact(x.clone(), wp);
    let r = if k == 0 { xb } else { &xb - &ln2(wp).mul_int(&BigInt::from(k)) };
    let r = r.mul_2exp(-s);
    // Taylor series, |r| < 2^-10
    let mut term = RealBall::one(wp);
    let mut sum = RealBall::one(wp);
    let target = -(wp as i64) - 4;
    let mut j: u64 = 1;
    loop {
        term = (&term * &r).div_int(&BigInt::from(j)).expect("nonzero");
        sum = &sum + &term;
        j += 1;
        if term.mag_up().log2_ceil_bound() < target {
            break;
        }
    }
    // tail <= 2 |term| |r|
    sum = sum.add_error(term.mag_up().mul(&r.mag_up()).mul_2exp(1));
    for _ in 0..s {
        sum = sum.sqr();
    }
    Ok(sum.mul_2exp(k).with_prec(prec))
}

impl RealBall {
    /// Natural logarithm; the ball must be strictly positive.
    pub fn log(&self) -> Result<RealBall> {
        if !self.is_positive() {
            return Err(Error::Indeterminate { what: "logarithm of a ball not certified positive".into(), bits: self.prec() });
        }
        let prec = self.prec();
        if self.is_exact() {
            return Ok(log_dyadic(self.mid(), prec));
        }
        let lo = log_dyadic(&self.lower(), prec);
        let hi = log_dyadic(&self.upper(), prec);
        Ok(RealBall::from_endpoints(&lo.lower(), &hi.upper(), prec))
    }

    pub fn exp(&self) -> Result<RealBall> {
        let prec = self.prec();
        if self.is_exact() {
            return exp_dyadic(self.mid(), prec);
        }
        let lo = exp_dyadic(&self.lower(), prec)?;
        let hi = exp_dyadic(&self.upper(), prec)?;
        Ok(RealBall::from_endpoints(&lo.lower(), &hi.upper(), prec))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln2_matches_f64() {
        let l = ln2(200);
        assert!((l.to_f64() - std::f64::consts::LN_2).abs() < 1e-16);
        assert!(l.rad().to_f64() < 1e-55);
    }

    #[test]
    fn exp_log_round_trip() {
        for v in [0.001, 0.5, 1.0, 3.0, 1234.5] {
            let x = RealBall::from_f64_exact(v, 160);
            let y = x.log().unwrap().exp().unwrap();
            assert!(y.contains_dyadic(&Dyadic::from_f64(v)), "{v}: {y}");
            assert!(y.rad().to_f64() < v * 1e-40);
        }
    }

    #[test]
    fn exp_of_negative() {
        let x = RealBall::from_i64(-50, 128);
        let e = x.exp().unwrap();
        let f = (-50f64).exp();
        assert!((e.to_f64() - f).abs() < f * 1e-14);
    }

    #[test]
    fn log_of_wide_ball_encloses_endpoints() {
        let x = RealBall::from_endpoints(&Dyadic::from_f64(2.0), &Dyadic::from_f64(3.0), 64);
        let l = x.log().unwrap();
        assert!(l.lower().to_f64() <= 2f64.ln() && l.upper().to_f64() >= 3f64.ln());
    }
}
