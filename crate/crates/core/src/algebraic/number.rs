use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::roots::{isolate_roots, ConjugateSet};
use crate::error::{Error, Result};
use crate::exact::{cyclotomic_index, discriminant, is_irreducible, IntPoly};
use crate::interval::decimal::{parse_rational, rat_to_string};
use crate::interval::{ComplexBall, Ctx, RealBall};

/// Position of a complex number relative to the unit circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModulusClass {
    Inside,
    On,
    Outside,
}

/// An algebraic number given by its minimal polynomial (irreducible,
/// primitive, positive leading coefficient) and the index of the root in the
/// canonical root order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgebraicNumber {
    minpoly: IntPoly,
    root_index: usize,
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.literal())
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.literal())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum NumberJson {
    Rat { rat: String },
    Poly { poly: IntPoly, root: usize },
    Literal(String),
}

impl Serialize for AlgebraicNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.as_rational() {
            Some(r) => NumberJson::Rat { rat: rat_to_string(&r) },
            None => NumberJson::Poly { poly: self.minpoly.clone(), root: self.root_index },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraicNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = NumberJson::deserialize(d)?;
        let ctx = Ctx::default();
        match j {
            NumberJson::Rat { rat } => parse_rational(&rat).map(|r| AlgebraicNumber::from_rat(&r)),
            NumberJson::Poly { poly, root } => AlgebraicNumber::new(poly, root, &ctx),
            NumberJson::Literal(s) => AlgebraicNumber::parse(&s, &ctx),
        }
        .map_err(serde::de::Error::custom)
    }
}

impl AlgebraicNumber {
    /// Validates irreducibility and the root index.
    pub fn new(minpoly: IntPoly, root_index: usize, ctx: &Ctx) -> Result<Self> {
        let p = minpoly.primitive_part();
        if p.degree() == 0 {
            return Err(Error::invalid("minimal polynomial must have positive degree"));
        }
        if root_index >= p.degree() {
            return Err(Error::invalid(format!("root index {root_index} out of range for degree {}", p.degree())));
        }
        if !is_irreducible(&p, ctx)? {
            return Err(Error::invalid(format!("{p} is not irreducible over Q")));
        }
        Ok(AlgebraicNumber { minpoly: p, root_index })
    }

    /// Trusts the caller that `minpoly` is irreducible.
    pub(crate) fn new_unchecked(minpoly: IntPoly, root_index: usize) -> Self {
        let p = minpoly.primitive_part();
        debug_assert!(root_index < p.degree());
        AlgebraicNumber { minpoly: p, root_index }
    }

    pub fn from_rat(r: &BigRational) -> Self {
        AlgebraicNumber { minpoly: IntPoly::from_rational_root(r).primitive_part(), root_index: 0 }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rat(&BigRational::from_integer(BigInt::from(v)))
    }

    /// Parses `"poly=c0,c1,...;root=k"` or `"rat=p/q"`.
    pub fn parse(s: &str, ctx: &Ctx) -> Result<Self> {
        let s = s.trim();
        if let Some(r) = s.strip_prefix("rat=") {
            return Ok(Self::from_rat(&parse_rational(r)?));
        }
        let mut poly = None;
        let mut root = None;
        for part in s.split(';') {
            let part = part.trim();
            if let Some(v) = part.strip_prefix("poly=") {
                poly = Some(IntPoly::parse(v)?);
            } else if let Some(v) = part.strip_prefix("root=") {
                root = Some(v.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad root index {v:?}")))?);
            } else if !part.is_empty() {
                return Err(Error::Parse(format!("unknown field {part:?} in number literal")));
            }
        }
        match (poly, root) {
            (Some(p), Some(r)) => Self::new(p, r, ctx),
            (Some(p), None) if p.degree() == 1 => Self::new(p, 0, ctx),
            _ => Err(Error::Parse(format!("expected \"poly=...;root=k\" or \"rat=p/q\", got {s:?}"))),
        }
    }

    pub fn literal(&self) -> String {
        match self.as_rational() {
            Some(r) => format!("rat={}", rat_to_string(&r)),
            None => format!("poly={};root={}", self.minpoly.to_text(), self.root_index),
        }
    }

    pub fn minpoly(&self) -> &IntPoly {
        &self.minpoly
    }

    pub fn root_index(&self) -> usize {
        self.root_index
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree()
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_rational() {
            Some(BigRational::new(-self.minpoly.coeff(0), self.minpoly.coeff(1)))
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.is_rational() && self.minpoly.coeff(0).is_zero()
    }

    pub fn is_algebraic_integer(&self) -> bool {
        self.minpoly.is_monic()
    }

    pub fn leading_coefficient(&self) -> BigInt {
        self.minpoly.lc()
    }

    /// Sum of all conjugates, `-c_(d-1) / c_d`.
    pub fn trace(&self) -> BigRational {
        let d = self.degree();
        BigRational::new(-self.minpoly.coeff(d - 1), self.minpoly.lc())
    }

    /// The conjugate with canonical index `k`.
    pub fn conjugate(&self, k: usize) -> Self {
        AlgebraicNumber { minpoly: self.minpoly.clone(), root_index: k }
    }

    pub fn all_conjugates(&self) -> Vec<Self> {
        (0..self.degree()).map(|k| self.conjugate(k)).collect()
    }

    pub fn conjugates(&self, ctx: &Ctx) -> Result<Arc<ConjugateSet>> {
        self.conjugates_at(ctx.prec, ctx)
    }

    pub fn conjugates_at(&self, prec: u32, ctx: &Ctx) -> Result<Arc<ConjugateSet>> {
        isolate_roots(&self.minpoly, prec, ctx)
    }

    /// Enclosure with relative accuracy about `2^-prec`.
    pub fn enclosure(&self, prec: u32, ctx: &Ctx) -> Result<ComplexBall> {
        if let Some(r) = self.as_rational() {
            return Ok(ComplexBall::from_rat(&r, prec));
        }
        Ok(self.conjugates_at(prec, ctx)?.roots[self.root_index].clone())
    }

    pub fn is_real(&self, ctx: &Ctx) -> Result<bool> {
        if self.is_rational() {
            return Ok(true);
        }
        Ok(self.conjugates(ctx)?.is_real[self.root_index])
    }

    pub fn real_enclosure(&self, prec: u32, ctx: &Ctx) -> Result<RealBall> {
        if let Some(r) = self.as_rational() {
            return Ok(RealBall::from_rat(&r, prec));
        }
        let set = self.conjugates_at(prec, ctx)?;
        set.real_root(self.root_index)
            .cloned()
            .ok_or_else(|| Error::invalid(format!("{} is not real", self.literal())))
    }

    pub fn to_f64(&self, ctx: &Ctx) -> Result<(f64, f64)> {
        Ok(self.enclosure(64, ctx)?.to_f64_pair())
    }

    /// Exact position relative to the unit circle.
    pub fn compare_modulus_to_one(&self, ctx: &Ctx) -> Result<ModulusClass> {
        if self.is_zero() {
            return Err(Error::invalid("modulus class of zero"));
        }
        if let Some(r) = self.as_rational() {
            let a = r.abs();
            return Ok(if a < BigRational::one() {
                ModulusClass::Inside
            } else if a > BigRational::one() {
                ModulusClass::Outside
            } else {
                ModulusClass::On
            });
        }
        let reciprocal = self.minpoly.is_self_reciprocal();
        let sep2 = if reciprocal { Some(separation_sqr_lower_bound(&self.minpoly)) } else { None };
        let one = RealBall::one(ctx.prec);
        for prec in ctx.schedule() {
            let z = self.enclosure(prec, ctx)?;
            match z.abs_sqr().compare(&one) {
                crate::interval::Cmp::Less => return Ok(ModulusClass::Inside),
                crate::interval::Cmp::Greater => return Ok(ModulusClass::Outside),
                crate::interval::Cmp::Indeterminate => {}
            }
            if let Some(sep2) = &sep2 {
                // 1/conj(z) is also a root; if it coincides with z then |z| = 1
                let Ok(w) = z.conj().inv() else { continue };
                if z.contains(&w) {
                    return Ok(ModulusClass::On);
                }
                let h = z.hull(&w);
                let wr = h.re.width().to_dyadic();
                let wi = h.im.width().to_dyadic();
                let diam2 = wr.mul(&wr).add(&wi.mul(&wi));
                if diam2.cmp_rat(sep2) == std::cmp::Ordering::Less {
                    return Ok(ModulusClass::On);
                }
            }
        }
        Err(Error::exhausted(format!("modulus of {} against 1", self.literal()), ctx.ceiling))
    }

    /// Smallest `m >= 1` with `a^m = 1`.
    pub fn root_of_unity_order(&self, _ctx: &Ctx) -> Result<Option<u64>> {
        if self.is_zero() {
            return Err(Error::invalid("root-of-unity order of zero"));
        }
        if let Some(r) = self.as_rational() {
            return Ok(if r.is_one() {
                Some(1)
            } else if r == -BigRational::one() {
                Some(2)
            } else {
                None
            });
        }
        if !self.minpoly.is_monic() || !self.minpoly.is_self_reciprocal() {
            return Ok(None);
        }
        Ok(cyclotomic_index(&self.minpoly))
    }

    /// Enclosure of `a^n` with absolute accuracy about `2^-prec`.
    pub fn eval_power_ball(&self, n: u64, prec: u32, ctx: &Ctx) -> Result<ComplexBall> {
        if let Some(r) = self.as_rational() {
            let v = num_traits::pow(r, n as usize);
            return Ok(ComplexBall::from_rat(&v, prec.max(8)));
        }
        let rough = self.enclosure(64, ctx)?;
        let log_mag = rough.mag_up().log2_ceil_bound().max(0) as u64;
        let extra = n.saturating_mul(log_mag) + 64 - (n + 1).leading_zeros() as u64 + 16;
        let bits = (prec as u64 + extra).min(u32::MAX as u64 / 2) as u32;
        if bits > ctx.ceiling {
            return Err(Error::exhausted(format!("power {n} of {}", self.literal()), ctx.ceiling));
        }
        let z = self.enclosure(bits, ctx)?.with_prec(bits);
        let mut r = z.pow(n);
        if self.is_real(ctx)? {
            r = ComplexBall::real(r.re);
        }
        Ok(r)
    }
}

/// Lower bound for the squared minimal distance between distinct roots of a
/// squarefree polynomial: `3 |D| / (d^(d+2) ||p||_2^(2(d-1)))`.
pub fn separation_sqr_lower_bound(p: &IntPoly) -> BigRational {
    let d = p.degree();
    let disc = discriminant(p).abs();
    let num = BigInt::from(3) * disc;
    let den = num_traits::pow(BigInt::from(d), d + 2) * num_traits::pow(p.norm2_sqr(), d - 1);
    BigRational::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn num(s: &str) -> AlgebraicNumber {
        AlgebraicNumber::parse(s, &Ctx::default()).unwrap()
    }

    #[test]
    fn literals_round_trip() {
        let phi = num("poly=-1,-1,1;root=0");
        assert_eq!(phi.literal(), "poly=-1,-1,1;root=0");
        assert_eq!(num("rat=6/4").literal(), "rat=3/2");
        assert!(AlgebraicNumber::parse("poly=-1,0,1;root=0", &Ctx::default()).is_err());
        assert!(AlgebraicNumber::parse("poly=-1,-1,1;root=2", &Ctx::default()).is_err());
        let j = serde_json::to_string(&phi).unwrap();
        assert_eq!(serde_json::from_str::<AlgebraicNumber>(&j).unwrap(), phi);
        assert_eq!(serde_json::from_str::<AlgebraicNumber>("\"poly=-1,-1,1;root=0\"").unwrap(), phi);
    }

    #[test]
    fn integrality_and_trace() {
        let phi = num("poly=-1,-1,1;root=0");
        assert!(phi.is_algebraic_integer());
        assert_eq!(phi.trace(), BigRational::from_integer(1.into()));
        assert_eq!(phi.degree(), 2);
        let r = num("rat=3/2");
        assert!(!r.is_algebraic_integer());
        assert_eq!(r.trace(), BigRational::new(3.into(), 2.into()));
        let q = num("poly=1,-6,2;root=0");
        assert!(!q.is_algebraic_integer());
        assert_eq!(q.trace(), BigRational::from_integer(3.into()));
    }

    #[test]
    fn modulus_classes() {
        let ctx = Ctx::default();
        assert_eq!(num("poly=-1,-1,1;root=0").compare_modulus_to_one(&ctx).unwrap(), ModulusClass::Outside);
        assert_eq!(num("poly=-1,-1,1;root=1").compare_modulus_to_one(&ctx).unwrap(), ModulusClass::Inside);
        for k in 0..4 {
            assert_eq!(num(&format!("poly=1,1,1,1,1;root={k}")).compare_modulus_to_one(&ctx).unwrap(), ModulusClass::On);
        }
    }

    #[test]
    fn unity_orders() {
        let ctx = Ctx::default();
        assert_eq!(num("poly=1,0,1;root=0").root_of_unity_order(&ctx).unwrap(), Some(4));
        assert_eq!(num("poly=-1,-1,1;root=0").root_of_unity_order(&ctx).unwrap(), None);
        assert_eq!(num("poly=1,0,-1,0,1;root=2").root_of_unity_order(&ctx).unwrap(), Some(12));
        assert_eq!(num("rat=-1").root_of_unity_order(&ctx).unwrap(), Some(2));
    }

    #[test]
    fn power_enclosures() {
        let ctx = Ctx::default();
        let r = num("rat=3/2").eval_power_ball(4, 64, &ctx).unwrap();
        assert!(r.re.is_exact());
        assert_eq!(r.re.mid().to_rat(), BigRational::new(81.into(), 16.into()));
        let phi = num("poly=-1,-1,1;root=0");
        let psi = phi.conjugate(1);
        let s = &phi.eval_power_ball(10, 80, &ctx).unwrap() + &psi.eval_power_ball(10, 80, &ctx).unwrap();
        assert!(s.re.contains_int(&BigInt::from(123)));
        assert!((phi.eval_power_ball(10, 80, &ctx).unwrap().re.to_f64() - 122.991869381).abs() < 1e-8);
        let two = num("poly=-2,0,1;root=0").eval_power_ball(2, 80, &ctx).unwrap();
        assert!(two.re.contains_int(&BigInt::from(2)));
    }
}
