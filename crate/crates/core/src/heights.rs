//! Mahler measure and absolute Weil height.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebraic::{isolate_roots, AlgebraicNumber, ModulusClass};
use crate::error::{Error, Result};
use crate::exact::IntPoly;
use crate::interval::{ComplexBall, Ctx, Dyadic, RealBall};

/// `H(a)` and `h(a) = log H(a)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct HeightValue {
    pub H: RealBall,
    pub h: RealBall,
}

/// Enclosure of `max(1, |z|)`.
fn max_one_abs(z: &ComplexBall, prec: u32) -> RealBall {
    let one = Dyadic::one();
    let a = z.abs();
    if a.upper() <= one {
        RealBall::one(prec)
    } else if a.lower() >= one {
        a
    } else {
        RealBall::from_endpoints(&one, &a.upper(), prec)
    }
}

/// `M(p) = |lc(p)| ∏ max(1, |root|)` over all complex roots with multiplicity.
pub fn mahler_measure(p: &IntPoly, prec: u32, ctx: &Ctx) -> Result<RealBall> {
    if p.is_zero() {
        return Err(Error::invalid("Mahler measure of the zero polynomial"));
    }
    let mut m = RealBall::from_int(&p.content().abs(), prec);
    for (f, e) in p.squarefree_decomposition() {
        let mut mf = RealBall::from_int(&f.lc(), prec);
        if f.degree() == 1 {
            let r = num_rational::BigRational::new(-f.coeff(0), f.coeff(1));
            mf = &mf * &max_one_abs(&ComplexBall::from_rat(&r, prec), prec);
        } else {
            let set = isolate_roots(&f, prec, ctx)?;
            for z in &set.roots {
                mf = &mf * &max_one_abs(z, prec);
            }
        }
        m = &m * &mf.pow(e as u64);
    }
    Ok(m)
}

/// Mahler measure of the minimal polynomial of `a`, with each conjugate's
/// position against the unit circle decided exactly, so that numbers with
/// no conjugate outside the circle get an exact result.
fn minpoly_measure(a: &AlgebraicNumber, prec: u32, ctx: &Ctx) -> Result<RealBall> {
    let p = a.minpoly();
    let mut m = RealBall::from_int(&p.lc(), prec);
    let set = a.conjugates_at(prec, ctx)?;
    for (k, z) in set.roots.iter().enumerate() {
        if a.conjugate(k).compare_modulus_to_one(ctx)? == ModulusClass::Outside {
            m = &m * &z.abs();
        }
    }
    Ok(m)
}

/// Absolute multiplicative and logarithmic Weil height.
pub fn weil_height(a: &AlgebraicNumber, prec: u32, ctx: &Ctx) -> Result<HeightValue> {
    if a.is_zero() {
        return Err(Error::invalid("height of zero"));
    }
    let prec = prec.max(32);
    if let Some(r) = a.as_rational() {
        let big = std::cmp::max(r.numer().abs(), r.denom().clone());
        let big_h = RealBall::from_int(&big, prec);
        let h = big_h.log()?;
        return Ok(HeightValue { H: big_h, h });
    }
    let m = minpoly_measure(a, prec, ctx)?;
    let zero = Dyadic::zero();
    if m.is_exact() && m.mid() == &Dyadic::one() {
        return Ok(HeightValue { H: RealBall::one(prec), h: RealBall::zero(prec) });
    }
    let d = BigInt::from(a.degree());
    let h = m.log()?.div_int(&d)?.clamp_below(&zero);
    let big_h = h.exp()?.clamp_below(&Dyadic::one());
    Ok(HeightValue { H: big_h, h })
}

/// Projective height of an integer vector: `max |x_i|` after dividing by the gcd.
pub fn projective_height(v: &[BigInt]) -> Result<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return Err(Error::invalid("projective height of the zero vector"));
    }
    Ok(v.iter().map(|x| (x / &g).abs()).max().unwrap_or_else(BigInt::one))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::cyclotomic;

    fn num(s: &str) -> AlgebraicNumber {
        AlgebraicNumber::parse(s, &Ctx::default()).unwrap()
    }

    #[test]
    fn mahler_examples() {
        let ctx = Ctx::default();
        let m = mahler_measure(&IntPoly::from_i64s(&[-3, 2]), 64, &ctx).unwrap();
        assert!(m.contains_int(&3.into()) && m.is_exact());
        let m = mahler_measure(&IntPoly::from_i64s(&[-2, 0, 1]), 128, &ctx).unwrap();
        assert!(m.contains_int(&2.into()));
        assert!(m.rad().to_f64() < 1e-30);
        let m = mahler_measure(&cyclotomic(12), 128, &ctx).unwrap();
        assert!(m.contains_int(&1.into()));
        // M is multiplicative, and sees repeated roots
        let sq = IntPoly::from_i64s(&[-2, 0, 1]).pow(2).scale(&3.into());
        let m = mahler_measure(&sq, 128, &ctx).unwrap();
        assert!(m.contains_int(&12.into()));
    }

    #[test]
    fn weil_examples() {
        let ctx = Ctx::default();
        let v = weil_height(&num("rat=3/2"), 128, &ctx).unwrap();
        assert!(v.H.contains_int(&3.into()) && v.H.is_exact());
        assert!((v.h.to_f64() - 3f64.ln()).abs() < 1e-15);
        let v = weil_height(&num("poly=-2,0,1;root=0"), 128, &ctx).unwrap();
        assert!((v.H.to_f64() - 2f64.sqrt()).abs() < 1e-15);
        let v = weil_height(&num("poly=1,1,1,1,1;root=1"), 128, &ctx).unwrap();
        assert!(v.h.is_exact() && v.h.mid().is_zero());
        assert!(v.H.is_exact());
        let lehmer = num("poly=1,1,0,-1,-1,-1,-1,-1,0,1,1;root=0");
        let v = weil_height(&lehmer, 128, &ctx).unwrap();
        assert!(v.h.is_positive());
        assert!((v.h.to_f64() - 1.1762808182599175f64.ln() / 10.0).abs() < 1e-14);
    }

    #[test]
    fn projective() {
        let v: Vec<BigInt> = [6, -4, 10].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(projective_height(&v).unwrap(), BigInt::from(5));
        assert!(projective_height(&[BigInt::zero()]).is_err());
    }
}
