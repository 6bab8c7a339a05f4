//! Pisot, Salem and pseudo-Pisot predicates for numbers and tuples.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::algebraic::{sign_of_real, AlgebraicNumber, ModulusClass};
use crate::error::{Error, Result};
use crate::interval::{recognize_rational, ComplexBall, Ctx, Recognized, RealBall, Tri};
use crate::serde_util;

/// Turns precision exhaustion into `None`; other errors propagate.
pub(crate) fn decided<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.is_precision() => Ok(None),
        Err(e) => Err(e),
    }
}

fn tri_is(m: Option<ModulusClass>, want: ModulusClass) -> Tri {
    match m {
        Some(c) => Tri::from_bool(c == want),
        None => Tri::Undecided,
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NumberClass {
    pub number: AlgebraicNumber,
    pub degree: usize,
    pub is_rational_integer: bool,
    pub is_algebraic_integer: bool,
    pub is_real: bool,
    pub is_pisot: Tri,
    pub is_salem: Tri,
    pub is_pseudo_pisot: Tri,
    #[serde(with = "serde_util::rat")]
    pub trace: BigRational,
    pub trace_is_integer: bool,
    pub reciprocal_minpoly: bool,
    /// Position of every conjugate (canonical order) relative to the unit
    /// circle; `None` where the ceiling was reached.
    pub conjugate_moduli: Vec<Option<ModulusClass>>,
    /// `+1`/`-1` for real numbers, `None` for non-real ones.
    pub sign: Option<i32>,
}

impl NumberClass {
    /// True when every flag is decided.
    pub fn is_decided(&self) -> bool {
        self.is_pisot.is_decided() && self.is_salem.is_decided() && self.is_pseudo_pisot.is_decided()
    }
}

pub fn classify_number(a: &AlgebraicNumber, ctx: &Ctx) -> Result<NumberClass> {
    if a.is_zero() {
        return Err(Error::invalid("cannot classify zero"));
    }
    let me = a.root_index();
    let mut moduli = Vec::with_capacity(a.degree());
    for k in 0..a.degree() {
        moduli.push(decided(a.conjugate(k).compare_modulus_to_one(ctx))?);
    }
    let is_real = a.is_real(ctx)?;
    let sign = if is_real { decided(sign_of_real(a, ctx))? } else { None };
    let trace = a.trace();
    let trace_is_integer = trace.is_integer();
    let integral = a.is_algebraic_integer();
    let reciprocal = a.minpoly().is_self_reciprocal();

    let outside_self = tri_is(moduli[me], ModulusClass::Outside);
    let mut others_inside = Tri::Yes;
    let mut others_not_outside = Tri::Yes;
    let mut some_on = Tri::No;
    for (k, m) in moduli.iter().enumerate() {
        if k == me {
            continue;
        }
        others_inside = others_inside.and(tri_is(*m, ModulusClass::Inside));
        others_not_outside = others_not_outside.and(tri_is(*m, ModulusClass::Outside).not());
        some_on = some_on.or(tri_is(*m, ModulusClass::On));
    }
    let greater_than_one = if is_real {
        match sign {
            Some(s) => Tri::from_bool(s > 0).and(outside_self),
            None => Tri::Undecided,
        }
    } else {
        Tri::No
    };

    let is_pseudo_pisot = outside_self.and(others_inside).and(Tri::from_bool(trace_is_integer));
    let is_pisot = greater_than_one.and(Tri::from_bool(integral)).and(others_inside);
    let is_salem = greater_than_one
        .and(Tri::from_bool(integral && reciprocal))
        .and(others_not_outside)
        .and(some_on);

    Ok(NumberClass {
        number: a.clone(),
        degree: a.degree(),
        is_rational_integer: a.as_rational().is_some_and(|r| r.is_integer()),
        is_algebraic_integer: integral,
        is_real,
        is_pisot,
        is_salem,
        is_pseudo_pisot,
        trace,
        trace_is_integer,
        reciprocal_minpoly: reciprocal,
        conjugate_moduli: moduli,
        sign,
    })
}

/// Outcome of the pseudo-Pisot test for a tuple.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TupleReport {
    pub tuple: Vec<AlgebraicNumber>,
    /// Conjugates of the entries that are not themselves entries, each once.
    #[serde(rename = "B")]
    pub b: Vec<AlgebraicNumber>,
    pub b_moduli: Vec<Option<ModulusClass>>,
    /// Enclosure of the sum over the tuple and `B`.
    pub sum_enclosure: RealBall,
    #[serde(with = "serde_util::opt_rat")]
    pub sum_rational: Option<BigRational>,
    #[serde(with = "serde_util::int")]
    pub denominator_bound: BigInt,
    pub sum_is_integer: Tri,
    pub is_pseudo_pisot_tuple: Tri,
    pub is_pisot_tuple: Tri,
}

pub fn pseudo_pisot_tuple(ts: &[AlgebraicNumber], ctx: &Ctx) -> Result<TupleReport> {
    if ts.is_empty() {
        return Err(Error::invalid("empty tuple"));
    }
    for (i, t) in ts.iter().enumerate() {
        if t.is_zero() {
            return Err(Error::invalid(format!("tuple entry {i} is zero")));
        }
        if ts[..i].contains(t) {
            return Err(Error::invalid(format!("tuple entry {i} repeats an earlier entry")));
        }
    }
    let mut all: Vec<AlgebraicNumber> = ts.to_vec();
    let mut b = Vec::new();
    for t in ts {
        for c in t.all_conjugates() {
            if !all.contains(&c) {
                all.push(c.clone());
                b.push(c);
            }
        }
    }
    let den_bound = ts.iter().fold(BigInt::one(), |l, t| l.lcm(&t.leading_coefficient()));

    let mut sum_enclosure = None;
    let mut sum_rational = None;
    for prec in ctx.schedule() {
        let mut s = ComplexBall::zero(prec);
        for x in &all {
            s = &s + &x.enclosure(prec, ctx)?;
        }
        if !s.im.contains_zero() {
            return Err(Error::invalid("conjugate-closed sum has a nonzero imaginary part"));
        }
        let rec = recognize_rational(&s.re, &den_bound);
        sum_enclosure = Some(s.re);
        match rec {
            Recognized::Unique(r) => {
                sum_rational = Some(r);
                break;
            }
            Recognized::Absent => {
                return Err(Error::invalid("conjugate-closed sum is not a rational with the expected denominator"));
            }
            Recognized::Ambiguous => {}
        }
    }
    let sum_enclosure = sum_enclosure.expect("schedule is nonempty");
    let sum_is_integer = match &sum_rational {
        Some(r) => Tri::from_bool(r.is_integer()),
        None => Tri::Undecided,
    };

    let mut b_moduli = Vec::with_capacity(b.len());
    let mut all_inside = Tri::Yes;
    for x in &b {
        let m = decided(x.compare_modulus_to_one(ctx))?;
        all_inside = all_inside.and(tri_is(m, ModulusClass::Inside));
        b_moduli.push(m);
    }
    let is_pseudo_pisot_tuple = sum_is_integer.and(all_inside);
    let integral = ts.iter().all(|t| t.is_algebraic_integer());
    Ok(TupleReport {
        tuple: ts.to_vec(),
        b,
        b_moduli,
        sum_enclosure,
        sum_rational,
        denominator_bound: den_bound,
        sum_is_integer,
        is_pseudo_pisot_tuple,
        is_pisot_tuple: is_pseudo_pisot_tuple.and(Tri::from_bool(integral)),
    })
}

/// One step of [`pisot_power_search`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PowerStep {
    pub m: u64,
    pub power: AlgebraicNumber,
    pub is_pisot: Tri,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PisotPowerReport {
    pub number: AlgebraicNumber,
    pub m_max: u64,
    /// Smallest `m` with `a^m` Pisot.
    pub found: Option<u64>,
    pub steps: Vec<PowerStep>,
    /// Exponents whose status could not be decided before `found`.
    pub undecided: Vec<u64>,
}

fn reason_for(c: &NumberClass) -> String {
    let me = c.number.root_index();
    if c.is_pisot.is_yes() {
        return "Pisot".into();
    }
    if !c.is_algebraic_integer {
        return format!("minimal polynomial {} is not monic", c.number.minpoly());
    }
    if c.sign == Some(-1) || !c.is_real {
        return "not a positive real number".into();
    }
    if c.conjugate_moduli[me] != Some(ModulusClass::Outside) && c.conjugate_moduli[me].is_some() {
        return "not greater than 1".into();
    }
    for (k, m) in c.conjugate_moduli.iter().enumerate() {
        if k == me {
            continue;
        }
        match m {
            Some(ModulusClass::On) => return format!("conjugate {k} lies on the unit circle"),
            Some(ModulusClass::Outside) => return format!("conjugate {k} lies outside the unit circle"),
            None => return format!("conjugate {k}: modulus undecided"),
            _ => {}
        }
    }
    "undecided".into()
}

/// Smallest `m <= m_max` such that `a^m` is a Pisot number.
pub fn pisot_power_search(a: &AlgebraicNumber, m_max: u64, ctx: &Ctx) -> Result<PisotPowerReport> {
    if !a.is_real(ctx)? || sign_of_real(a, ctx)? <= 0 || a.compare_modulus_to_one(ctx)? != ModulusClass::Outside {
        return Err(Error::invalid("Pisot power search needs a real number greater than 1"));
    }
    let mut steps = Vec::new();
    let mut undecided = Vec::new();
    let mut found = None;
    for m in 1..=m_max {
        let power = a.pow(m, ctx)?;
        let class = classify_number(&power, ctx)?;
        let reason = reason_for(&class);
        steps.push(PowerStep { m, power, is_pisot: class.is_pisot, reason });
        match class.is_pisot {
            Tri::Yes => {
                found = Some(m);
                break;
            }
            Tri::Undecided => undecided.push(m),
            Tri::No => {}
        }
    }
    Ok(PisotPowerReport { number: a.clone(), m_max, found, steps, undecided })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn num(s: &str) -> AlgebraicNumber {
        AlgebraicNumber::parse(s, &Ctx::default()).unwrap()
    }

    const LEHMER: &str = "poly=1,1,0,-1,-1,-1,-1,-1,0,1,1;root=0";

    #[test]
    fn classify_examples() {
        let ctx = Ctx::default();
        let c = classify_number(&num("poly=-1,-1,1;root=0"), &ctx).unwrap();
        assert!(c.is_pisot.is_yes() && c.is_pseudo_pisot.is_yes() && c.is_algebraic_integer);
        assert!(c.is_salem.is_no());
        let c = classify_number(&num(LEHMER), &ctx).unwrap();
        assert!((c.number.to_f64(&ctx).unwrap().0 - 1.17628081826).abs() < 1e-10);
        assert!(c.is_salem.is_yes() && c.is_pisot.is_no() && c.is_pseudo_pisot.is_no());
        let on = c.conjugate_moduli.iter().filter(|m| **m == Some(ModulusClass::On)).count();
        assert_eq!(on, 8);
        let c = classify_number(&num("poly=1,-6,2;root=0"), &ctx).unwrap();
        assert!(c.is_pseudo_pisot.is_yes() && !c.is_algebraic_integer && c.is_pisot.is_no());
        let c = classify_number(&num("rat=3"), &ctx).unwrap();
        assert!(c.is_pisot.is_yes() && c.is_rational_integer);
        let c = classify_number(&num("rat=3/2"), &ctx).unwrap();
        assert!(c.is_pseudo_pisot.is_no() && c.is_pisot.is_no());
    }

    #[test]
    fn tuple_examples() {
        let ctx = Ctx::default();
        let phi = num("poly=-1,-1,1;root=0");
        let r = pseudo_pisot_tuple(std::slice::from_ref(&phi), &ctx).unwrap();
        assert_eq!(r.b, vec![phi.conjugate(1)]);
        assert_eq!(r.sum_rational, Some(BigRational::one()));
        assert!(r.is_pseudo_pisot_tuple.is_yes() && r.is_pisot_tuple.is_yes());

        let r2 = num("poly=-2,0,1;root=0");
        let r = pseudo_pisot_tuple(&[r2], &ctx).unwrap();
        assert_eq!(r.b_moduli, vec![Some(ModulusClass::Outside)]);
        assert!(r.is_pseudo_pisot_tuple.is_no());

        let phi2 = phi.pow(2, &ctx).unwrap();
        let r = pseudo_pisot_tuple(&[phi.clone(), phi2.clone()], &ctx).unwrap();
        assert_eq!(r.b, vec![phi.conjugate(1), phi2.conjugate(1)]);
        assert_eq!(r.sum_rational, Some(BigRational::from_integer(4.into())));
        assert!(r.is_pseudo_pisot_tuple.is_yes());

        // conjugate entries share B
        let r = pseudo_pisot_tuple(&[phi.clone(), phi.conjugate(1)], &ctx).unwrap();
        assert!(r.b.is_empty());
        assert_eq!(r.sum_rational, Some(BigRational::one()));
    }

    #[test]
    fn power_search_examples() {
        let ctx = Ctx::default();
        let r = pisot_power_search(&num("poly=-1,-1,1;root=0"), 5, &ctx).unwrap();
        assert_eq!(r.found, Some(1));
        let r = pisot_power_search(&num("rat=3/2"), 10, &ctx).unwrap();
        assert_eq!(r.found, None);
        assert_eq!(r.steps.len(), 10);
        assert!(r.steps.iter().all(|s| s.reason.contains("not monic")));
    }
}
