use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::dyadic::Dyadic;
use super::mag::Mag;
use super::real::RealBall;
use crate::error::{Error, Result};

fn pow10(k: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), k as usize)
}

/// `floor(log10 |v|)` for nonzero `v`.
fn log10_floor(v: &BigRational) -> i64 {
    let a = v.abs();
    let n = a.numer();
    let d = a.denom();
    let mut e = ((n.bits() as f64 - d.bits() as f64) * std::f64::consts::LOG10_2).floor() as i64;
    // fix the estimate exactly
    loop {
        let p = ten_pow_rat(e);
        if a < p {
            e -= 1;
            continue;
        }
        if a >= ten_pow_rat(e + 1) {
            e += 1;
            continue;
        }
        return e;
    }
}

fn ten_pow_rat(e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(pow10(e as u32))
    } else {
        BigRational::new(BigInt::one(), pow10((-e) as u32))
    }
}

fn format_scaled(neg: bool, digits: &BigInt, e10: i64) -> String {
    // leading digit of `digits` sits at 10^e10
    let mut s = digits.to_string();
    while s.len() > 1 && s.ends_with('0') {
        s.pop();
    }
    let sign = if neg { "-" } else { "" };
    if (-6..=20).contains(&e10) {
        if e10 >= 0 {
            let int_len = (e10 + 1) as usize;
            if s.len() <= int_len {
                let zeros = "0".repeat(int_len - s.len());
                format!("{sign}{s}{zeros}")
            } else {
                format!("{sign}{}.{}", &s[..int_len], &s[int_len..])
            }
        } else {
            let zeros = "0".repeat((-e10 - 1) as usize);
            format!("{sign}0.{zeros}{s}")
        }
    } else if s.len() == 1 {
        format!("{sign}{s}e{e10}")
    } else {
        format!("{sign}{}.{}e{e10}", &s[..1], &s[1..])
    }
}

/// Decimal with `sig` significant digits, rounded to nearest; returns the
/// string and the exact rational it denotes.
pub fn rat_to_decimal(v: &BigRational, sig: u32) -> (String, BigRational) {
    if v.is_zero() {
        return ("0".into(), BigRational::zero());
    }
    let sig = sig.max(1);
    let mut e10 = log10_floor(v);
    let scale = |e10: i64| ten_pow_rat(sig as i64 - 1 - e10);
    let mut n = (v.abs() * scale(e10)).round().to_integer();
    if n >= pow10(sig) {
        e10 += 1;
        n = (v.abs() * scale(e10)).round().to_integer();
    }
    let neg = v.is_negative();
    let exact = BigRational::from_integer(if neg { -n.clone() } else { n.clone() }) / scale(e10);
    (format_scaled(neg, &n, e10), exact)
}

/// Decimal upper bound of a nonnegative rational with `sig` digits.
pub fn rat_to_decimal_up(v: &BigRational, sig: u32) -> String {
    if v.is_zero() {
        return "0".into();
    }
    let mut e10 = log10_floor(v);
    let scale = |e10: i64| ten_pow_rat(sig as i64 - 1 - e10);
    let mut n = (v * scale(e10)).ceil().to_integer();
    if n >= pow10(sig) {
        e10 += 1;
        n = (v * scale(e10)).ceil().to_integer();
    }
    format_scaled(false, &n, e10)
}

pub fn mag_to_decimal_up(m: &Mag) -> String {
    rat_to_decimal_up(&m.to_dyadic().to_rat(), 3)
}

pub fn dyadic_to_decimal(d: &Dyadic, sig: u32) -> String {
    rat_to_decimal(&d.to_rat(), sig).0
}

/// Midpoint and radius strings such that the printed ball encloses the
/// original one.
pub fn ball_to_decimal(b: &RealBall) -> (String, String) {
    let mid = b.mid().to_rat();
    let rad = b.rad().to_dyadic().to_rat();
    if rad.is_zero() && mid.is_zero() {
        return ("0".into(), "0".into());
    }
    let mut sig = ((b.prec() as f64) * std::f64::consts::LOG10_2).ceil() as u32 + 1;
    if !rad.is_zero() && !mid.is_zero() {
        // digits beyond the radius carry no information
        let useful = log10_floor(&mid) - log10_floor(&rad) + 3;
        sig = sig.min(useful.max(3) as u32);
    }
    let (ms, mval) = rat_to_decimal(&mid, sig);
    let total = rad + (mid - mval).abs();
    (ms, rat_to_decimal_up(&total, 3))
}

/// Parses a plain decimal such as `-12.5`, `0.9`, `3e-4` or a fraction `p/q`
/// into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let q: BigInt = q.trim().parse().map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(p, q));
    }
    let (body, exp) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = s[i + 1..].parse().map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (neg, body) = match body.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, body.strip_prefix('+').unwrap_or(body)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty()
        || !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(Error::Parse(format!("not a number: {s:?}")));
    }
    let digits = format!("{int_part}{frac_part}");
    let n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().expect("digits") };
    let e = exp - frac_part.len() as i64;
    let mut v = BigRational::from_integer(n) * ten_pow_rat(e);
    if neg {
        v = -v;
    }
    Ok(v)
}

/// Parses `"m ± r @ bits"` (also accepting `+/-`) into a ball that encloses
/// the printed interval.
pub fn parse_ball(s: &str) -> Result<RealBall> {
    let (body, bits) = match s.rsplit_once('@') {
        Some((b, p)) => (b, p.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad precision in {s:?}")))?),
        None => (s, 128),
    };
    let (m, r) = if let Some((m, r)) = body.split_once('±') {
        (m, r)
    } else if let Some((m, r)) = body.split_once("+/-") {
        (m, r)
    } else {
        (body, "0")
    };
    let m = parse_rational(m)?;
    let r = parse_rational(r)?;
    if r.is_negative() {
        return Err(Error::Parse("negative radius".into()));
    }
    let mb = RealBall::from_rat(&m, bits);
    let (rd, rerr) = Dyadic::from_rat_floor(&r, 64);
    Ok(mb.add_error(rd.mag_up().add(&rerr)))
}

/// `p/q` or `p` when the denominator is one.
pub fn rat_to_string(v: &BigRational) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("0.9").unwrap(), q(9, 10));
        assert_eq!(parse_rational("-12.5").unwrap(), q(-25, 2));
        assert_eq!(parse_rational("3e-4").unwrap(), q(3, 10000));
        assert_eq!(parse_rational("7/21").unwrap(), q(1, 3));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn format_forms() {
        assert_eq!(rat_to_decimal(&q(1, 3), 5).0, "0.33333");
        assert_eq!(rat_to_decimal(&q(-25, 2), 6).0, "-12.5");
        assert_eq!(rat_to_decimal(&q(1, 1_000_000_000), 3).0, "1e-9");
        assert_eq!(rat_to_decimal_up(&q(1, 3), 3), "0.334");
        assert_eq!(rat_to_decimal(&q(999_999, 1_000_000), 3).0, "1");
    }

    #[test]
    fn ball_string_round_trip_encloses() {
        let b = RealBall::from_rat(&q(22, 7), 100).add_error(Mag::pow2(-60));
        let s = b.to_string();
        let back = parse_ball(&s).unwrap();
        assert!(back.contains(&b), "{s}");
    }
}
