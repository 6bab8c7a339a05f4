use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::number::AlgebraicNumber;
use super::roots::isolate_roots;
use crate::error::{Error, Result};
use crate::exact::{factor_squarefree, power_charpoly, resultant_y, BiPoly, IntPoly};
use crate::interval::{ComplexBall, Ctx};

/// Operations producing a new algebraic number from one or two inputs.
#[derive(Clone, Debug)]
pub enum CombineOp<'a> {
    Power(u64),
    Scale(BigRational),
    Quotient(&'a AlgebraicNumber),
    Product(&'a AlgebraicNumber),
    Sum(&'a AlgebraicNumber),
    Inverse,
    Negate,
}

/// Integer polynomial vanishing at `op(a)` (not necessarily irreducible).
pub fn annihilator(a: &AlgebraicNumber, op: &CombineOp<'_>) -> Result<IntPoly> {
    let p = a.minpoly();
    Ok(match op {
        CombineOp::Power(n) => power_charpoly(p, *n as u32),
        CombineOp::Scale(c) => {
            if c.is_zero() {
                IntPoly::x()
            } else {
                p.scale_roots(c.numer(), c.denom())
            }
        }
        CombineOp::Inverse => p.reversed(),
        CombineOp::Negate => p.negate_x(),
        CombineOp::Quotient(b) => {
            if b.is_zero() {
                return Err(Error::invalid("quotient by zero"));
            }
            resultant_y(&BiPoly::in_y(b.minpoly()), &BiPoly::dilate(p))?
        }
        CombineOp::Product(b) => resultant_y(&BiPoly::in_y(b.minpoly()), &BiPoly::homogenize(p))?,
        CombineOp::Sum(b) => resultant_y(&BiPoly::in_y(b.minpoly()), &BiPoly::shifted(p))?,
    })
}

/// Enclosure of `op(a)` at roughly `prec` bits.
pub fn value_ball(a: &AlgebraicNumber, op: &CombineOp<'_>, prec: u32, ctx: &Ctx) -> Result<ComplexBall> {
    let za = a.enclosure(prec, ctx)?;
    Ok(match op {
        CombineOp::Power(n) => za.with_prec(prec).pow(*n),
        CombineOp::Scale(c) => za.scale(&crate::interval::RealBall::from_rat(c, prec)),
        CombineOp::Inverse => za.inv()?,
        CombineOp::Negate => -&za,
        CombineOp::Quotient(b) => za.div(&b.enclosure(prec, ctx)?)?,
        CombineOp::Product(b) => &za * &b.enclosure(prec, ctx)?,
        CombineOp::Sum(b) => &za + &b.enclosure(prec, ctx)?,
    })
}

fn exact_rational(a: &AlgebraicNumber, op: &CombineOp<'_>) -> Result<Option<BigRational>> {
    let Some(ra) = a.as_rational() else { return Ok(None) };
    let other = |b: &AlgebraicNumber| b.as_rational();
    Ok(match op {
        CombineOp::Power(n) => Some(num_traits::pow(ra, *n as usize)),
        CombineOp::Scale(c) => Some(ra * c),
        CombineOp::Inverse => {
            if ra.is_zero() {
                return Err(Error::invalid("inverse of zero"));
            }
            Some(ra.recip())
        }
        CombineOp::Negate => Some(-ra),
        CombineOp::Quotient(b) => match other(b) {
            Some(rb) if rb.is_zero() => return Err(Error::invalid("quotient by zero")),
            Some(rb) => Some(ra / rb),
            None => None,
        },
        CombineOp::Product(b) => other(b).map(|rb| ra * rb),
        CombineOp::Sum(b) => other(b).map(|rb| ra + rb),
    })
}

/// Locates the irreducible factor of `ann` and the root index whose enclosure
/// holds the value computed by `value(prec)`. Pass `irreducible` when `ann`
/// is already known to be irreducible.
pub fn locate_root(
    ann: &IntPoly,
    value: &dyn Fn(u32) -> Result<ComplexBall>,
    irreducible: bool,
    ctx: &Ctx,
) -> Result<AlgebraicNumber> {
    let sq = ann.squarefree_part();
    let factors = if irreducible || sq.degree() <= 1 { vec![sq] } else { factor_squarefree(&sq, ctx)? };
    let mut chosen: Option<IntPoly> = if factors.len() == 1 { Some(factors[0].clone()) } else { None };
    for prec in ctx.schedule() {
        let v = value(prec)?;
        if chosen.is_none() {
            let vanishing: Vec<&IntPoly> = factors.iter().filter(|g| g.eval_complex(&v.with_prec(prec)).contains_zero()).collect();
            match vanishing.len() {
                0 => return Err(Error::invalid("value enclosure is not a root of its annihilator")),
                1 => chosen = Some(vanishing[0].clone()),
                _ => continue,
            }
        }
        let g = chosen.as_ref().expect("factor chosen");
        if g.degree() == 1 {
            return Ok(AlgebraicNumber::from_rat(&BigRational::new(-g.coeff(0), g.coeff(1))));
        }
        let set = isolate_roots(g, prec, ctx)?;
        let hits: Vec<usize> = (0..set.degree()).filter(|&i| set.roots[i].overlaps(&v)).collect();
        match hits.len() {
            0 => return Err(Error::invalid("value enclosure meets no root of its minimal polynomial")),
            1 => return Ok(AlgebraicNumber::new_unchecked(g.clone(), hits[0])),
            _ => continue,
        }
    }
    Err(Error::exhausted("matching a combined value to a root enclosure", ctx.ceiling))
}

impl AlgebraicNumber {
    /// Exact result of `op` applied to `self`, as a new algebraic number.
    pub fn combine(&self, op: &CombineOp<'_>, ctx: &Ctx) -> Result<AlgebraicNumber> {
        if let Some(r) = exact_rational(self, op)? {
            return Ok(AlgebraicNumber::from_rat(&r));
        }
        match op {
            CombineOp::Power(0) => return Ok(AlgebraicNumber::from_int(1)),
            CombineOp::Power(1) => return Ok(self.clone()),
            CombineOp::Scale(c) if c.is_one() => return Ok(self.clone()),
            CombineOp::Scale(c) if c.is_zero() => return Ok(AlgebraicNumber::from_int(0)),
            CombineOp::Inverse if self.is_zero() => return Err(Error::invalid("inverse of zero")),
            _ => {}
        }
        // rational second operands reduce to scaling
        if let CombineOp::Quotient(b) | CombineOp::Product(b) = op {
            if let Some(rb) = b.as_rational() {
                if rb.is_zero() {
                    return match op {
                        CombineOp::Quotient(_) => Err(Error::invalid("quotient by zero")),
                        _ => Ok(AlgebraicNumber::from_int(0)),
                    };
                }
                let c = if matches!(op, CombineOp::Quotient(_)) { rb.recip() } else { rb };
                return self.combine(&CombineOp::Scale(c), ctx);
            }
        }
        // a rational first operand: swap so the irrational one drives the construction
        if let Some(ra) = self.as_rational() {
            match op {
                CombineOp::Product(b) => return b.combine(&CombineOp::Scale(ra), ctx),
                CombineOp::Sum(b) => return b.combine(&CombineOp::Sum(self), ctx),
                CombineOp::Quotient(b) => {
                    return b.combine(&CombineOp::Inverse, ctx)?.combine(&CombineOp::Scale(ra), ctx);
                }
                _ => {}
            }
        }
        let ann = annihilator(self, op)?;
        let value = |prec: u32| value_ball(self, op, prec, ctx);
        // unary maps preserve irreducibility
        if matches!(op, CombineOp::Scale(_) | CombineOp::Inverse | CombineOp::Negate) {
            return locate_root(&ann.primitive_part(), &value, true, ctx);
        }
        locate_root(&ann, &value, false, ctx)
    }

    pub fn pow(&self, n: u64, ctx: &Ctx) -> Result<AlgebraicNumber> {
        self.combine(&CombineOp::Power(n), ctx)
    }

    pub fn inverse(&self, ctx: &Ctx) -> Result<AlgebraicNumber> {
        self.combine(&CombineOp::Inverse, ctx)
    }

    pub fn negate(&self, ctx: &Ctx) -> Result<AlgebraicNumber> {
        self.combine(&CombineOp::Negate, ctx)
    }

    /// `q * self` for an integer `q`.
    pub fn scale_int(&self, q: &BigInt, ctx: &Ctx) -> Result<AlgebraicNumber> {
        self.combine(&CombineOp::Scale(BigRational::from_integer(q.clone())), ctx)
    }
}

/// Sign of a real algebraic number (exact).
pub fn sign_of_real(a: &AlgebraicNumber, ctx: &Ctx) -> Result<i32> {
    if let Some(r) = a.as_rational() {
        return Ok(if r.is_positive() {
            1
        } else if r.is_negative() {
            -1
        } else {
            0
        });
    }
    for prec in ctx.schedule() {
        let b = a.real_enclosure(prec, ctx)?;
        if b.is_positive() {
            return Ok(1);
        }
        if b.is_negative() {
            return Ok(-1);
        }
    }
    Err(Error::exhausted("sign of a real algebraic number", ctx.ceiling))
}
