use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::interval::{ComplexBall, RealBall};

/// Dense univariate polynomial with integer coefficients `c0, c1, ..., cd`.
/// Trailing zero coefficients are always trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly[{}]", self.to_text())
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = k == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{a}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        IntPoly::parse(&s).map_err(serde::de::Error::custom)
    }
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn x() -> Self {
        Self::from_i64s(&[0, 1])
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c x^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `q x - p`, the primitive polynomial vanishing at `p/q`.
    pub fn from_rational_root(r: &BigRational) -> Self {
        Self::new(vec![-r.numer().clone(), r.denom().clone()])
    }

    /// Parses comma-separated ascending coefficients, e.g. `"-1,-1,1"`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let coeffs = s
            .split(',')
            .map(|t| t.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("bad coefficient {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(coeffs))
    }

    /// Comma-separated ascending coefficients.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_one()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = IntPoly::one();
        for _ in 0..n {
            r = &r * self;
        }
        r
    }

    /// Content with the sign of the leading coefficient.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if self.lc().is_negative() {
            -g
        } else {
            g
        }
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let c = self.content();
        Self::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    pub fn is_primitive(&self) -> bool {
        !self.is_zero() && self.content().is_one()
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * BigInt::from(k)).collect())
    }

    /// `x^d p(1/x)`.
    pub fn reversed(&self) -> Self {
        let mut v = self.coeffs.clone();
        v.reverse();
        Self::new(v)
    }

    /// `p(-x)`.
    pub fn negate_x(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() }).collect())
    }

    /// `x^d p(1/x) = ±p(x)` for a polynomial with nonzero constant term.
    pub fn is_self_reciprocal(&self) -> bool {
        if self.is_zero() || self.coeffs[0].is_zero() {
            return false;
        }
        let r = self.reversed();
        r == *self || r == -self
    }

    /// Exact quotient; fails unless `d` divides `self` in `Z[x]`.
    pub fn div_exact(&self, d: &IntPoly) -> Result<IntPoly> {
        let (q, r) = self.div_rem_rat(d)?;
        if !r.iter().all(|c| c.is_zero()) {
            return Err(Error::NotDivisible);
        }
        let mut out = Vec::with_capacity(q.len());
        for c in q {
            if !c.is_integer() {
                return Err(Error::NotDivisible);
            }
            out.push(c.to_integer());
        }
        Ok(IntPoly::new(out))
    }

    pub fn divides(&self, other: &IntPoly) -> bool {
        other.div_exact(self).is_ok()
    }

    /// Division over the rationals; returns (quotient, remainder) coefficients.
    pub fn div_rem_rat(&self, d: &IntPoly) -> Result<(Vec<BigRational>, Vec<BigRational>)> {
        if d.is_zero() {
            return Err(Error::invalid("division by the zero polynomial"));
        }
        let mut r: Vec<BigRational> = self.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        let dd = d.degree();
        if self.is_zero() || self.degree() < dd {
            return Ok((Vec::new(), r));
        }
        let lc = BigRational::from_integer(d.lc());
        let mut q = vec![BigRational::zero(); self.degree() - dd + 1];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &lc;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * BigRational::from_integer(dc.clone());
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((q, r))
    }

    /// Pseudo-remainder `prem(self, d)`.
    fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree();
        let mut r = self.coeffs.clone();
        let lc = d.lc();
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let top = r.last().unwrap().clone();
            for c in r.iter_mut() {
                *c *= &lc;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] -= &top * dc;
            }
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        IntPoly::new(r)
    }

    /// Greatest common divisor over `Q`, returned primitive with positive
    /// leading coefficient (zero only if both inputs are zero).
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.primitive_part()
    }

    /// Primitive squarefree part `p / gcd(p, p')`.
    pub fn squarefree_part(&self) -> IntPoly {
        if self.degree() == 0 {
            return self.primitive_part();
        }
        let g = self.gcd(&self.derivative());
        self.primitive_part().div_exact(&g).expect("gcd divides").primitive_part()
    }

    pub fn is_squarefree(&self) -> bool {
        self.degree() == 0 || self.gcd(&self.derivative()).degree() == 0
    }

    /// Squarefree decomposition: primitive pairwise coprime squarefree
    /// `(f_i, i)` with `prim(self) = prod f_i^i`.
    pub fn squarefree_decomposition(&self) -> Vec<(IntPoly, usize)> {
        let mut g = self.primitive_part();
        if g.degree() == 0 {
            return Vec::new();
        }
        // s_i is the product of the irreducible factors of multiplicity >= i
        let mut s = g.squarefree_part();
        let mut out = Vec::new();
        let mut i = 1;
        while s.degree() > 0 {
            g = g.div_exact(&s).expect("squarefree part divides").primitive_part();
            let next = if g.degree() == 0 { IntPoly::one() } else { g.squarefree_part() };
            let f = s.div_exact(&next).expect("nested squarefree parts").primitive_part();
            if f.degree() > 0 {
                out.push((f, i));
            }
            s = next;
            i += 1;
        }
        out
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_real(&self, x: &RealBall) -> RealBall {
        let prec = x.prec();
        let mut acc = RealBall::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &RealBall::from_int(c, prec);
        }
        acc
    }

    pub fn eval_complex(&self, z: &ComplexBall) -> ComplexBall {
        let prec = z.prec();
        let mut acc = ComplexBall::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z) + &ComplexBall::from_int(c, prec);
        }
        acc
    }

    /// Euclidean 2-norm squared of the coefficient vector.
    pub fn norm2_sqr(&self) -> BigInt {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    /// `max |c_i|`.
    pub fn height(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// `p(x/v) v^d u^?`: polynomial whose roots are `u/v` times the roots of
    /// `self` (for `u != 0`), i.e. `sum c_k v^k u^(d-k) x^k`.
    pub fn scale_roots(&self, u: &BigInt, v: &BigInt) -> IntPoly {
        let d = self.degree();
        let mut out = Vec::with_capacity(d + 1);
        for (k, c) in self.coeffs.iter().enumerate() {
            out.push(c * num_traits::pow(v.clone(), k) * num_traits::pow(u.clone(), d - k));
        }
        IntPoly::new(out)
    }

    /// `p(x + s)` for an integer shift.
    pub fn shift(&self, s: &BigInt) -> IntPoly {
        let mut acc = IntPoly::zero();
        let lin = IntPoly::new(vec![s.clone(), BigInt::one()]);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &IntPoly::constant(c.clone());
        }
        acc
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPoly::new(v)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for IntPoly {
    type Output = IntPoly;
    fn add(self, o: IntPoly) -> IntPoly {
        &self + &o
    }
}

impl Sub for IntPoly {
    type Output = IntPoly;
    fn sub(self, o: IntPoly) -> IntPoly {
        &self - &o
    }
}

impl Mul for IntPoly {
    type Output = IntPoly;
    fn mul(self, o: IntPoly) -> IntPoly {
        &self * &o
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}
