use super::combine::annihilator;
use super::combine::CombineOp;
use super::number::AlgebraicNumber;
use crate::error::{Error, Result};
use crate::exact::{cyclotomic, euler_phi, IntPoly};
use crate::interval::{Cmp, ComplexBall, Ctx, RealBall};

/// Multiplicative order of a value `v` that is known to be a root of `ann`,
/// or `None` if `v` is not a root of unity. `value(prec)` must enclose `v`.
///
/// No factoring is needed: for each candidate `m` with `Φ_m | ann`, write
/// `ann = Φ_m^e S` with `gcd(Φ_m, S) = 1`; exactly one of `Φ_m(v)`, `S(v)`
/// vanishes, and ball evaluation at rising precision tells which.
pub fn unity_order_of_root(ann: &IntPoly, value: &dyn Fn(u32) -> Result<ComplexBall>, ctx: &Ctx) -> Result<Option<u64>> {
    let deg = ann.degree() as u64;
    if deg == 0 {
        return Err(Error::invalid("annihilator must have positive degree"));
    }
    let v0 = value(ctx.prec)?;
    let one = RealBall::one(ctx.prec);
    if v0.abs_sqr().compare(&one) != Cmp::Indeterminate {
        return Ok(None);
    }
    let bound = 2 * deg * deg + 2;
    for m in 1..=bound {
        if euler_phi(m) > deg {
            continue;
        }
        // v^m must be able to equal 1
        let pw = v0.pow(m);
        if !pw.re.contains_int(&1.into()) || !pw.im.contains_zero() {
            continue;
        }
        let phi = cyclotomic(m);
        let Ok(mut rest) = ann.div_exact(&phi) else { continue };
        while let Ok(q) = rest.div_exact(&phi) {
            rest = q;
        }
        if decide_vanishing(&phi, &rest, value, ctx)? {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// True iff `a(v) = 0`, given that exactly one of `a(v)`, `b(v)` is zero.
fn decide_vanishing(a: &IntPoly, b: &IntPoly, value: &dyn Fn(u32) -> Result<ComplexBall>, ctx: &Ctx) -> Result<bool> {
    if b.degree() == 0 {
        return Ok(true);
    }
    for prec in ctx.schedule() {
        let v = value(prec)?.with_prec(prec);
        if !a.eval_complex(&v).contains_zero() {
            return Ok(false);
        }
        if !b.eval_complex(&v).contains_zero() {
            return Ok(true);
        }
    }
    Err(Error::exhausted("deciding a cyclotomic factor", ctx.ceiling))
}

/// Root-of-unity order of `a / b` without constructing its minimal
/// polynomial. `ann` may be supplied when the same pair of minimal
/// polynomials is tested repeatedly.
pub fn quotient_unity_order(
    a: &AlgebraicNumber,
    b: &AlgebraicNumber,
    ann: Option<&IntPoly>,
    ctx: &Ctx,
) -> Result<Option<u64>> {
    if let (Some(ra), Some(rb)) = (a.as_rational(), b.as_rational()) {
        let q = ra / rb;
        return AlgebraicNumber::from_rat(&q).root_of_unity_order(ctx);
    }
    if a == b {
        return Ok(Some(1));
    }
    let owned;
    let ann = match ann {
        Some(p) => p,
        None => {
            owned = quotient_annihilator(a, b)?;
            &owned
        }
    };
    let value = |prec: u32| -> Result<ComplexBall> { a.enclosure(prec, ctx)?.div(&b.enclosure(prec, ctx)?) };
    unity_order_of_root(ann, &value, ctx)
}

/// Polynomial vanishing at every quotient of a conjugate of `a` by a
/// conjugate of `b`.
pub fn quotient_annihilator(a: &AlgebraicNumber, b: &AlgebraicNumber) -> Result<IntPoly> {
    annihilator(a, &CombineOp::Quotient(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn num(s: &str) -> AlgebraicNumber {
        AlgebraicNumber::parse(s, &Ctx::default()).unwrap()
    }

    #[test]
    fn conjugate_quotients() {
        let ctx = Ctx::default();
        let r2 = num("poly=-2,0,1;root=0");
        assert_eq!(quotient_unity_order(&r2.conjugate(1), &r2, None, &ctx).unwrap(), Some(2));
        let phi = num("poly=-1,-1,1;root=0");
        assert_eq!(quotient_unity_order(&phi.conjugate(1), &phi, None, &ctx).unwrap(), None);
        let i = num("poly=1,0,1;root=0");
        assert_eq!(quotient_unity_order(&i, &i.conjugate(1), None, &ctx).unwrap(), Some(2));
        let z5 = num("poly=1,1,1,1,1;root=0");
        assert_eq!(quotient_unity_order(&z5, &z5.conjugate(1), None, &ctx).unwrap(), Some(5));
    }

    #[test]
    fn salem_conjugates_on_circle_are_not_torsion() {
        let ctx = Ctx::default();
        let lehmer = num("poly=1,1,0,-1,-1,-1,-1,-1,0,1,1;root=2");
        let ann = quotient_annihilator(&lehmer, &lehmer).unwrap();
        let r = quotient_unity_order(&lehmer, &lehmer.conjugate(3), Some(&ann), &ctx).unwrap();
        assert_eq!(r, None);
    }
}
