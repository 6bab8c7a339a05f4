//! Certified enclosures of `δ = ∏_{n≥1} [b_n α^{a_n}] / (b_n α^{a_n})` and the
//! growth hypotheses of the two transcendence criteria for such products.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebraic::{quotient_unity_order, sign_of_real, AlgebraicNumber, ModulusClass};
use crate::classify::{pisot_power_search, PisotPowerReport};
use crate::error::{Error, Result};
use crate::interval::{Cmp, Ctx, Dyadic, RealBall};
use crate::serde_util;

/// Integer sequence indexed from `n = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Sequence {
    /// `c r^n + s`.
    Geometric {
        #[serde(with = "serde_util::int")]
        c: BigInt,
        #[serde(with = "serde_util::int")]
        r: BigInt,
        #[serde(default, with = "serde_util::int")]
        s: BigInt,
    },
    /// `2^(c^n)`.
    DoublyExponential { c: u32 },
    /// Explicit terms `x_1, x_2, …`.
    List {
        #[serde(with = "serde_util::int_vec")]
        values: Vec<BigInt>,
    },
}

impl Sequence {
    pub fn geometric(c: i64, r: i64, s: i64) -> Self {
        Sequence::Geometric { c: c.into(), r: r.into(), s: s.into() }
    }

    pub fn constant(v: i64) -> Self {
        Sequence::geometric(v, 1, 0)
    }

    pub fn list(values: &[i64]) -> Self {
        Sequence::List { values: values.iter().map(|&v| BigInt::from(v)).collect() }
    }

    pub fn term(&self, n: u64) -> Result<BigInt> {
        if n == 0 {
            return Err(Error::invalid("sequences are indexed from 1"));
        }
        match self {
            Sequence::Geometric { c, r, s } => Ok(c * num_traits::pow(r.clone(), n as usize) + s),
            Sequence::DoublyExponential { c } => {
                let e = (*c as u64)
                    .checked_pow(n as u32)
                    .filter(|&e| e <= 1 << 26)
                    .ok_or_else(|| Error::invalid(format!("2^({c}^{n}) is too large")))?;
                Ok(BigInt::one() << e)
            }
            Sequence::List { values } => values
                .get(n as usize - 1)
                .cloned()
                .ok_or_else(|| Error::invalid(format!("explicit sequence has no term {n}"))),
        }
    }

    /// Number of available terms, `None` if unbounded.
    pub fn len(&self) -> Option<u64> {
        match self {
            Sequence::List { values } => Some(values.len() as u64),
            _ => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    fn is_closed_form(&self) -> bool {
        !matches!(self, Sequence::List { .. })
    }

    /// Whether the closed form is non-decreasing (`None` for lists).
    fn nondecreasing(&self) -> Option<bool> {
        match self {
            Sequence::Geometric { c, r, .. } => Some(r.is_one() || c.is_zero() || (c.is_positive() && r.is_positive())),
            Sequence::DoublyExponential { .. } => Some(true),
            Sequence::List { .. } => None,
        }
    }

    /// Whether the closed form is strictly increasing (`None` for lists).
    fn increasing(&self) -> Option<bool> {
        match self {
            Sequence::Geometric { c, r, .. } => Some(c.is_positive() && r > &BigInt::one()),
            Sequence::DoublyExponential { c } => Some(*c >= 2),
            Sequence::List { .. } => None,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProductSpec {
    pub alpha: AlgebraicNumber,
    pub a: Sequence,
    pub b: Sequence,
    #[serde(with = "serde_util::rat")]
    pub epsilon: BigRational,
    #[serde(with = "serde_util::rat")]
    pub delta: BigRational,
    /// Prefix length.
    pub m: u64,
    /// Terms examined by the hypothesis checks; defaults to `max(m + 1, 20)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check_prefix: Option<u64>,
    /// Largest exponent tried by the Pisot-power search on `α`.
    #[serde(default = "default_power_max")]
    pub pisot_power_max: u64,
}

fn default_power_max() -> u64 {
    8
}

impl ProductSpec {
    pub fn new(alpha: AlgebraicNumber, a: Sequence, b: Sequence, m: u64) -> Self {
        ProductSpec {
            alpha,
            a,
            b,
            epsilon: BigRational::one(),
            delta: BigRational::one(),
            m,
            check_prefix: None,
            pisot_power_max: default_power_max(),
        }
    }

    fn prefix_len(&self) -> u64 {
        let want = self.check_prefix.unwrap_or((self.m + 1).max(20));
        match (self.a.len(), self.b.len()) {
            (Some(x), Some(y)) => want.min(x).min(y),
            (Some(x), None) | (None, Some(x)) => want.min(x),
            (None, None) => want,
        }
    }
}

/// Data for one factor `[B_n] / B_n`, `B_n = b_n α^{a_n}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FactorInfo {
    pub n: u64,
    #[serde(with = "serde_util::int")]
    pub a_n: BigInt,
    #[serde(with = "serde_util::int")]
    pub b_n: BigInt,
    /// `[B_n]`.
    #[serde(with = "serde_util::int")]
    pub floor: BigInt,
    /// `B_n` is an integer, so the factor is exactly 1.
    pub integral: bool,
    pub factor: RealBall,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Proved for the closed-form generators.
    Holds,
    /// Disproved for the closed-form generators.
    Fails,
    /// Every checked term satisfies the condition.
    NotFalsifiedOnPrefix,
    /// Some checked term violates it (the condition may still hold eventually).
    FailsOnPrefix,
    /// Neither the prefix nor the generator form decides it.
    Undecidable,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HypothesisCheck {
    pub statement: String,
    pub verdict: Verdict,
    /// Terms `1..=prefix` were examined.
    pub prefix: u64,
    pub first_prefix_failure: Option<u64>,
    pub detail: String,
}

impl HypothesisCheck {
    fn new(statement: &str, symbolic: Option<bool>, prefix: u64, first_failure: Option<u64>, detail: String) -> Self {
        let verdict = match (symbolic, first_failure) {
            (Some(true), _) => Verdict::Holds,
            (Some(false), _) => Verdict::Fails,
            (None, Some(_)) => Verdict::FailsOnPrefix,
            (None, None) => Verdict::NotFalsifiedOnPrefix,
        };
        HypothesisCheck { statement: statement.into(), verdict, prefix, first_prefix_failure: first_failure, detail }
    }

    pub fn passes(&self) -> bool {
        matches!(self.verdict, Verdict::Holds | Verdict::NotFalsifiedOnPrefix)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Hypotheses62 {
    pub d: u64,
    pub liminf_ratio: HypothesisCheck,
    pub b_nondecreasing: HypothesisCheck,
    pub b_product_growth: HypothesisCheck,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Hypotheses61 {
    pub d: u64,
    /// `(1+d+δ)/(1+d) · ε/(1+ε)`.
    #[serde(with = "serde_util::rat")]
    pub parameter_value: BigRational,
    pub parameter_inequality: HypothesisCheck,
    pub capital_b_nondecreasing: HypothesisCheck,
    pub limsup_growth: HypothesisCheck,
    pub polynomial_growth: HypothesisCheck,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProductCertificate {
    pub alpha: AlgebraicNumber,
    pub m: u64,
    pub factors: Vec<FactorInfo>,
    /// `p = ∏_{n≤m} [b_n α^{a_n}]`.
    #[serde(with = "serde_util::int")]
    pub p: BigInt,
    /// `b_1 ⋯ b_m`.
    #[serde(with = "serde_util::int")]
    pub b_product: BigInt,
    /// `N = a_1 + ⋯ + a_m`.
    #[serde(rename = "N", with = "serde_util::int")]
    pub n_sum: BigInt,
    /// `p / (b_1 ⋯ b_m α^N)` exactly, when `α` is rational.
    #[serde(with = "serde_util::opt_rat")]
    pub partial_exact: Option<BigRational>,
    pub partial: RealBall,
    /// `2 / (b_{m+1} α^{a_{m+1}} (α − 1))`.
    pub tail_bound_stated: RealBall,
    /// `α / (b_{m+1} α^{a_{m+1}} (α − 1))`, from `1 − ∏(1 − t_n) ≤ Σ t_n`.
    pub tail_bound_direct: RealBall,
    /// Bound actually used: the larger of the two.
    pub tail_bound: RealBall,
    /// Enclosure of `δ`: `partial · [1 − tail_bound, 1]`.
    pub enclosure: RealBall,
    /// Exact dyadic endpoints of `enclosure` before it is rounded to a ball.
    #[serde(with = "serde_util::rat")]
    pub lower: BigRational,
    #[serde(with = "serde_util::rat")]
    pub upper: BigRational,
    pub hypotheses_62: Hypotheses62,
    pub hypotheses_61: Hypotheses61,
    pub pisot_power: Option<PisotPowerReport>,
    /// The tail bound assumes explicit lists continue monotonically.
    pub tail_assumes_list_continuation: bool,
}

fn to_u64(v: &BigInt, what: &str) -> Result<u64> {
    v.to_u64().ok_or_else(|| Error::invalid(format!("{what} = {v} does not fit the supported range")))
}

struct Alpha {
    value: AlgebraicNumber,
    rational: Option<BigRational>,
    /// `α^k0` rational for the least such `k0 ≥ 1`, if any.
    torsion: Option<(u64, BigRational)>,
}

fn prepare_alpha(alpha: &AlgebraicNumber, ctx: &Ctx) -> Result<Alpha> {
    if !alpha.is_real(ctx)? || sign_of_real(alpha, ctx)? <= 0 || alpha.compare_modulus_to_one(ctx)? != ModulusClass::Outside {
        return Err(Error::invalid("alpha must be a real number greater than 1"));
    }
    let rational = alpha.as_rational();
    let torsion = if rational.is_some() {
        None
    } else {
        // α^k is rational iff every σ(α)/α is a root of unity of order dividing k
        let mut k0 = 1u64;
        let mut all = true;
        for c in alpha.all_conjugates() {
            if &c == alpha {
                continue;
            }
            match quotient_unity_order(&c, alpha, None, ctx)? {
                Some(o) => k0 = k0.lcm(&o),
                None => {
                    all = false;
                    break;
                }
            }
        }
        if all {
            let r = alpha.pow(k0, ctx)?.as_rational().ok_or_else(|| Error::invalid("torsion power is not rational"))?;
            Some((k0, r))
        } else {
            None
        }
    };
    Ok(Alpha { value: alpha.clone(), rational, torsion })
}

impl Alpha {
    /// `α^e` exactly when it is rational.
    fn rational_power(&self, e: u64) -> Option<BigRational> {
        if let Some(r) = &self.rational {
            return Some(num_traits::pow(r.clone(), e as usize));
        }
        match &self.torsion {
            Some((k0, r)) if e.is_multiple_of(*k0) => Some(num_traits::pow(r.clone(), (e / k0) as usize)),
            _ => None,
        }
    }

    fn ball(&self, prec: u32, ctx: &Ctx) -> Result<RealBall> {
        self.value.real_enclosure(prec, ctx)
    }

    /// Enclosure of `log2 α` good to a few bits.
    fn log2_estimate(&self, ctx: &Ctx) -> Result<f64> {
        Ok(self.ball(64, ctx)?.to_f64().log2())
    }
}

fn factor(alpha: &Alpha, n: u64, a_n: &BigInt, b_n: &BigInt, prec: u32, ctx: &Ctx) -> Result<FactorInfo> {
    let e = to_u64(a_n, "a_n")?;
    if let Some(pw) = alpha.rational_power(e) {
        let big = pw * BigRational::from_integer(b_n.clone());
        let floor = big.floor().to_integer();
        let f = BigRational::from_integer(floor.clone()) / &big;
        return Ok(FactorInfo {
            n,
            a_n: a_n.clone(),
            b_n: b_n.clone(),
            integral: big.is_integer(),
            floor,
            factor: RealBall::from_rat(&f, prec),
        });
    }
    let size_bits = (e as f64 * alpha.log2_estimate(ctx)?).ceil() as u32 + b_n.bits() as u32;
    for wp in ctx.schedule_from(size_bits.saturating_add(prec)) {
        let x = alpha.value.eval_power_ball(e, wp, ctx)?.re.mul_int(b_n);
        let lo = x.lower().floor();
        if lo == x.upper().floor() && lo.is_positive() {
            let fb = RealBall::from_int(&lo, wp).div(&x)?.with_prec(prec);
            return Ok(FactorInfo { n, a_n: a_n.clone(), b_n: b_n.clone(), integral: false, floor: lo, factor: fb });
        }
    }
    Err(Error::exhausted(format!("floor of b_{n} α^a_{n}"), ctx.ceiling))
}

struct Tails {
    stated: RealBall,
    direct: RealBall,
    used_upper: Dyadic,
    exact: Option<BigRational>,
}

fn tail_bounds(alpha: &Alpha, a_next: &BigInt, b_next: &BigInt, prec: u32, ctx: &Ctx) -> Result<Tails> {
    let e = to_u64(a_next, "a_(m+1)")?;
    if let Some(r) = &alpha.rational {
        let big = num_traits::pow(r.clone(), e as usize) * BigRational::from_integer(b_next.clone());
        let am1 = r - BigRational::one();
        let stated = BigRational::from_integer(2.into()) / (&big * &am1);
        let direct = r / (&big * &am1);
        let used = std::cmp::max(stated.clone(), direct.clone());
        let used_ball = RealBall::from_rat(&used, prec);
        return Ok(Tails {
            stated: RealBall::from_rat(&stated, prec),
            direct: RealBall::from_rat(&direct, prec),
            used_upper: used_ball.upper(),
            exact: Some(used),
        });
    }
    let a = alpha.ball(prec + 32, ctx)?;
    // B_{m+1} through logarithms keeps the cost independent of a_{m+1}
    let log_big = &(&a.log()? * &RealBall::from_int(a_next, prec + 32)) + &RealBall::from_int(b_next, prec + 32).log()?;
    let inv_big = (-&log_big).exp()?;
    let am1 = &a - &RealBall::one(prec + 32);
    let stated = inv_big.mul_2exp(1).div(&am1)?.with_prec(prec);
    let direct = (&inv_big * &a).div(&am1)?.with_prec(prec);
    let used_upper = std::cmp::max(stated.upper(), direct.upper());
    Ok(Tails { stated, direct, used_upper, exact: None })
}

/// `r` rounded down (or up) onto a grid of `prec` significant bits that
/// depends only on `r`, so grids at higher precision refine lower ones.
fn rat_to_dyadic(r: &BigRational, prec: u32, up: bool) -> Dyadic {
    let e = r.numer().bits() as i64 - r.denom().bits() as i64;
    let s = prec as i64 - e;
    let scaled = if s >= 0 {
        r * BigRational::from_integer(BigInt::one() << s as u64)
    } else {
        r / BigRational::from_integer(BigInt::one() << (-s) as u64)
    };
    let k = if up { scaled.ceil() } else { scaled.floor() }.to_integer();
    Dyadic::new(k, -s)
}

/// Exact partial product `∏_{n≤m} [B_n]/B_n` for rational `α`.
pub fn partial_product_exact(spec: &ProductSpec, m: u64) -> Result<Option<BigRational>> {
    let Some(r) = spec.alpha.as_rational() else { return Ok(None) };
    let mut acc = BigRational::one();
    for n in 1..=m {
        let e = to_u64(&spec.a.term(n)?, "a_n")?;
        let big = num_traits::pow(r.clone(), e as usize) * BigRational::from_integer(spec.b.term(n)?);
        acc *= BigRational::from_integer(big.floor().to_integer()) / big;
    }
    Ok(Some(acc))
}

/// The tail bound used at prefix `m`, exactly, for rational `α`.
pub fn tail_bound_exact(spec: &ProductSpec, m: u64) -> Result<Option<BigRational>> {
    let Some(r) = spec.alpha.as_rational() else { return Ok(None) };
    let e = to_u64(&spec.a.term(m + 1)?, "a_(m+1)")?;
    let big = num_traits::pow(r.clone(), e as usize) * BigRational::from_integer(spec.b.term(m + 1)?);
    let am1 = &r - BigRational::one();
    let stated = BigRational::from_integer(2.into()) / (&big * &am1);
    let direct = &r / (&big * &am1);
    Ok(Some(std::cmp::max(stated, direct)))
}

fn validate(spec: &ProductSpec) -> Result<()> {
    if spec.m == 0 {
        return Err(Error::invalid("prefix length m must be at least 1"));
    }
    if !spec.epsilon.is_positive() || !spec.delta.is_positive() {
        return Err(Error::invalid("epsilon and delta must be positive"));
    }
    if spec.a.increasing() == Some(false) {
        return Err(Error::invalid("a_n must be strictly increasing"));
    }
    if spec.b.nondecreasing() == Some(false) {
        return Err(Error::invalid("b_n must be non-decreasing"));
    }
    let last = spec.m + 1;
    let mut prev_a: Option<BigInt> = None;
    let mut prev_b: Option<BigInt> = None;
    for n in 1..=last {
        let a = spec.a.term(n)?;
        let b = spec.b.term(n)?;
        if !a.is_positive() || !b.is_positive() {
            return Err(Error::invalid(format!("a_{n} and b_{n} must be positive")));
        }
        if prev_a.as_ref().is_some_and(|p| &a <= p) {
            return Err(Error::invalid(format!("a_n is not strictly increasing at n = {n}")));
        }
        if prev_b.as_ref().is_some_and(|p| &b < p) {
            return Err(Error::invalid(format!("b_n decreases at n = {n}")));
        }
        prev_a = Some(a);
        prev_b = Some(b);
    }
    Ok(())
}

/// Enclosure of the product together with the hypothesis reports.
pub fn evaluate_product(spec: &ProductSpec, ctx: &Ctx) -> Result<ProductCertificate> {
    validate(spec)?;
    let alpha = prepare_alpha(&spec.alpha, ctx)?;
    let m = spec.m;
    let a_next = spec.a.term(m + 1)?;
    let b_next = spec.b.term(m + 1)?;
    let rough = tail_bounds(&alpha, &a_next, &b_next, 64, ctx)?;
    let tail_bits = (-rough.used_upper.log2_floor()).max(0) as u32;
    let prec = ctx.prec.max(tail_bits + 64);
    let tails = tail_bounds(&alpha, &a_next, &b_next, prec, ctx)?;

    let terms: Vec<(u64, BigInt, BigInt)> =
        (1..=m).map(|n| Ok((n, spec.a.term(n)?, spec.b.term(n)?))).collect::<Result<_>>()?;
    let factors: Vec<FactorInfo> =
        terms.par_iter().map(|(n, a, b)| factor(&alpha, *n, a, b, prec + 16, ctx)).collect::<Result<_>>()?;
    let p = factors.iter().fold(BigInt::one(), |acc, f| acc * &f.floor);
    let b_product = terms.iter().fold(BigInt::one(), |acc, t| acc * &t.2);
    let n_sum = terms.iter().fold(BigInt::zero(), |acc, t| acc + &t.1);

    let partial_exact = partial_product_exact(spec, m)?;
    let (partial, lower, upper) = match (&partial_exact, &tails.exact) {
        (Some(pe), Some(t)) => {
            let lo = pe * (BigRational::one() - t);
            (RealBall::from_rat(pe, prec), rat_to_dyadic(&lo, prec, false), rat_to_dyadic(pe, prec, true))
        }
        _ => {
            let mut part = RealBall::one(prec + 16);
            for f in &factors {
                part = &part * &f.factor;
            }
            let part = part.with_prec(prec);
            let one_minus = Dyadic::one().sub(&tails.used_upper);
            let lo = RealBall::exact(part.lower(), prec + 16) * RealBall::exact(one_minus, prec + 16);
            let upper = part.upper();
            (part, lo.lower(), upper)
        }
    };
    let enclosure = RealBall::from_endpoints(&lower, &upper, prec);
    let tail_bound = RealBall::exact(tails.used_upper.clone(), prec);

    let d = spec.alpha.degree() as u64;
    let hypotheses_62 = check_hypotheses_62(spec, d, ctx)?;
    let hypotheses_61 = check_hypotheses_61(spec, d, ctx)?;
    let pisot_power = if spec.pisot_power_max > 0 {
        Some(pisot_power_search(&spec.alpha, spec.pisot_power_max, ctx)?)
    } else {
        None
    };
    Ok(ProductCertificate {
        alpha: spec.alpha.clone(),
        m,
        factors,
        p,
        b_product,
        n_sum,
        partial_exact,
        partial,
        tail_bound_stated: tails.stated,
        tail_bound_direct: tails.direct,
        tail_bound,
        enclosure,
        lower: lower.to_rat(),
        upper: upper.to_rat(),
        hypotheses_62,
        hypotheses_61,
        pisot_power,
        tail_assumes_list_continuation: !(spec.a.is_closed_form() && spec.b.is_closed_form()),
    })
}

/// Smallest `m` whose tail bound is at most `10^-digits`.
pub fn prefix_for_digits(spec: &ProductSpec, digits: u32, ctx: &Ctx) -> Result<u64> {
    let alpha = prepare_alpha(&spec.alpha, ctx)?;
    let target = BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(10), digits as usize));
    for m in 1..=4096u64 {
        if spec.a.len().is_some_and(|l| m + 1 > l) || spec.b.len().is_some_and(|l| m + 1 > l) {
            break;
        }
        let t = tail_bounds(&alpha, &spec.a.term(m + 1)?, &spec.b.term(m + 1)?, 64, ctx)?;
        if t.used_upper.cmp_rat(&target) != std::cmp::Ordering::Greater {
            return Ok(m);
        }
    }
    Err(Error::invalid(format!("no available prefix reaches 10^-{digits}")))
}

/// `(1+d+δ)/(1+d) · ε/(1+ε)`.
pub fn parameter_inequality_value(epsilon: &BigRational, delta: &BigRational, d: u64) -> BigRational {
    let one = BigRational::one();
    let dd = BigRational::from_integer(d.into());
    (&one + &dd + delta) / (&one + &dd) * epsilon / (&one + epsilon)
}

/// Terms examined by the prefix checks, cut short where they stop being
/// cheap to compare exactly.
fn prefix_terms(spec: &ProductSpec) -> (Vec<BigInt>, Vec<BigInt>) {
    const BIT_BUDGET: u64 = 1 << 16;
    let mut a = Vec::new();
    let mut b = Vec::new();
    for n in 1..=spec.prefix_len() {
        match (spec.a.term(n), spec.b.term(n)) {
            (Ok(x), Ok(y)) if x.bits() <= BIT_BUDGET && y.bits() <= BIT_BUDGET => {
                a.push(x);
                b.push(y);
            }
            _ => break,
        }
    }
    (a, b)
}

/// Exact test of `x^e < y` for a positive rational exponent `e = u/v`.
fn pow_less(x: &BigInt, e: &BigRational, y: &BigInt) -> Result<bool> {
    let u = e.numer().to_usize().ok_or_else(|| Error::invalid("exponent numerator too large"))?;
    let v = e.denom().to_usize().ok_or_else(|| Error::invalid("exponent denominator too large"))?;
    Ok(num_traits::pow(x.clone(), u) < num_traits::pow(y.clone(), v))
}

pub fn check_hypotheses_62(spec: &ProductSpec, d: u64, _ctx: &Ctx) -> Result<Hypotheses62> {
    let (a, b) = prefix_terms(spec);
    let len = a.len() as u64;

    let two = BigInt::from(2);
    let ratio_fail = (0..a.len().saturating_sub(1)).find(|&i| a[i + 1] <= &two * &a[i]).map(|i| i as u64 + 1);
    let ratio_sym = match &spec.a {
        Sequence::Geometric { r, .. } => Some(r > &two),
        Sequence::DoublyExponential { c } => Some(*c >= 2),
        Sequence::List { .. } => None,
    };
    let ratio_detail = match &spec.a {
        Sequence::Geometric { r, .. } => format!("a_(n+1)/a_n tends to {r}"),
        Sequence::DoublyExponential { c } if *c >= 2 => "a_(n+1)/a_n tends to infinity".into(),
        Sequence::DoublyExponential { .. } => "a_n is constant".into(),
        Sequence::List { .. } => "checked a_(n+1) > 2 a_n on the prefix".into(),
    };
    let liminf_ratio = HypothesisCheck::new("liminf a_(n+1)/a_n > 2", ratio_sym, len, ratio_fail, ratio_detail);

    let mono_fail = (0..b.len().saturating_sub(1)).find(|&i| b[i + 1] < b[i]).map(|i| i as u64 + 2);
    let b_nondecreasing =
        HypothesisCheck::new("b_n non-decreasing", spec.b.nondecreasing(), len, mono_fail, "exact comparison".into());

    let e = BigRational::from_integer((1 + d).into()) + &spec.epsilon;
    let mut prod = BigInt::one();
    let mut growth_fail = None;
    for n in 1..len as usize {
        prod *= &b[n - 1];
        if growth_fail.is_none() && !pow_less(&prod, &e, &b[n])? {
            growth_fail = Some(n as u64);
        }
    }
    let growth_sym = match &spec.b {
        // products of a geometric sequence outgrow every single term
        Sequence::Geometric { .. } => Some(false),
        // log2 of the product is c(c^n − 1)/(c − 1) against c^(n+1)
        Sequence::DoublyExponential { c } => Some(*c >= 2 && e <= BigRational::from_integer((*c - 1).into())),
        Sequence::List { .. } => None,
    };
    let b_product_growth = HypothesisCheck::new(
        "(b_1 ⋯ b_n)^(1+d+ε) < b_(n+1) for large n",
        growth_sym,
        len,
        growth_fail,
        format!("exponent 1+d+ε = {}", crate::interval::decimal::rat_to_string(&e)),
    );
    Ok(Hypotheses62 { d, liminf_ratio, b_nondecreasing, b_product_growth })
}

/// First `n ≥ 2` in the list (`bs[i]` is `B_(i+1)`) where `B_n > n^(1+ε)`
/// fails, compared with certified logarithms.
pub fn polynomial_growth_failure(log_bs: &[RealBall], epsilon: &BigRational, ctx: &Ctx) -> Result<Option<u64>> {
    let e = BigRational::one() + epsilon;
    for (i, lb) in log_bs.iter().enumerate().skip(1) {
        let n = i as u64 + 1;
        let mut decided = None;
        for prec in ctx.schedule() {
            let rhs = &RealBall::from_rat(&e, prec) * &RealBall::from_i64(n as i64, prec).log()?;
            match lb.compare(&rhs) {
                Cmp::Greater => decided = Some(true),
                Cmp::Less => decided = Some(false),
                Cmp::Indeterminate if lb.rad().is_zero() && prec >= 4 * ctx.prec => decided = Some(false),
                Cmp::Indeterminate => {}
            }
            if decided.is_some() {
                break;
            }
        }
        match decided {
            Some(true) => {}
            Some(false) => return Ok(Some(n)),
            None => return Err(Error::exhausted(format!("B_{n} against n^(1+ε)"), ctx.ceiling)),
        }
    }
    Ok(None)
}

pub fn check_hypotheses_61(spec: &ProductSpec, d: u64, ctx: &Ctx) -> Result<Hypotheses61> {
    let value = parameter_inequality_value(&spec.epsilon, &spec.delta, d);
    let ok = value > BigRational::one();
    let parameter_inequality = HypothesisCheck::new(
        "(1+d+δ)/(1+d) · ε/(1+ε) > 1",
        Some(ok),
        0,
        None,
        format!("value {}", crate::interval::decimal::rat_to_string(&value)),
    );

    let (a, b) = prefix_terms(spec);
    let len = a.len() as u64;
    let prec = ctx.prec;
    let log_alpha = spec.alpha.real_enclosure(prec + 32, ctx)?.log()?;
    let log_bs: Vec<RealBall> = a
        .iter()
        .zip(&b)
        .map(|(an, bn)| Ok(&(&log_alpha * &RealBall::from_int(an, prec + 32)) + &RealBall::from_int(bn, prec + 32).log()?))
        .collect::<Result<_>>()?;

    // α > 1, so B_n is non-decreasing wherever a_n and b_n both are
    let mut mono_fail = None;
    for i in 0..log_bs.len().saturating_sub(1) {
        if a[i + 1] >= a[i] && b[i + 1] >= b[i] {
            continue;
        }
        if log_bs[i + 1].compare(&log_bs[i]) != Cmp::Greater {
            mono_fail = Some(i as u64 + 2);
            break;
        }
    }
    let mono_sym = match (spec.a.nondecreasing(), spec.b.nondecreasing()) {
        (Some(true), Some(true)) => Some(true),
        _ => None,
    };
    let capital_b_nondecreasing =
        HypothesisCheck::new("B_n = b_n α^(a_n) non-decreasing", mono_sym, len, mono_fail, "log comparison".into());

    // log B_n grows like ρ^n; B_n^(1/(2+d+δ)^n) → ∞ iff ρ > 2+d+δ
    let threshold = BigRational::from_integer((2 + d).into()) + &spec.delta;
    let rate = |s: &Sequence, in_exponent: bool| -> Option<Option<BigInt>> {
        match s {
            Sequence::Geometric { r, .. } => Some(Some(if in_exponent { r.clone() } else { BigInt::one() })),
            // 2^(c^n): log grows like c^n; as an exponent of α it grows faster than any ρ^n
            Sequence::DoublyExponential { c } => Some(if in_exponent && *c >= 2 { None } else { Some(BigInt::from(*c)) }),
            Sequence::List { .. } => None,
        }
    };
    let limsup_sym = match (rate(&spec.a, true), rate(&spec.b, false)) {
        (Some(None), Some(_)) => Some(true),
        (Some(Some(ra)), Some(rb)) => {
            let rho = match rb {
                Some(rb) => std::cmp::max(ra, rb),
                None => ra,
            };
            Some(BigRational::from_integer(rho) > threshold)
        }
        _ => None,
    };
    let limsup_growth = HypothesisCheck {
        statement: "limsup B_n^(1/(2+d+δ)^n) = ∞".into(),
        verdict: match limsup_sym {
            Some(true) => Verdict::Holds,
            Some(false) => Verdict::Fails,
            None => Verdict::Undecidable,
        },
        prefix: 0,
        first_prefix_failure: None,
        detail: format!("2+d+δ = {}", crate::interval::decimal::rat_to_string(&threshold)),
    };

    let growth_fail = polynomial_growth_failure(&log_bs, &spec.epsilon, ctx)?;
    let grows = |s: &Sequence| match s {
        Sequence::Geometric { c, r, .. } => Some(c.is_positive() && r > &BigInt::one()),
        Sequence::DoublyExponential { c } => Some(*c >= 2),
        Sequence::List { .. } => None,
    };
    let poly_sym = match (grows(&spec.a), grows(&spec.b)) {
        (Some(true), _) | (_, Some(true)) => Some(true),
        (Some(false), Some(false)) => Some(false),
        _ => None,
    };
    let polynomial_growth = HypothesisCheck::new(
        "B_n > n^(1+ε) for large n",
        poly_sym,
        len,
        growth_fail,
        "checked from n = 2".into(),
    );
    Ok(Hypotheses61 { d, parameter_value: value, parameter_inequality, capital_b_nondecreasing, limsup_growth, polynomial_growth })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn num(s: &str) -> AlgebraicNumber {
        AlgebraicNumber::parse(s, &Ctx::default()).unwrap()
    }

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    fn three_halves(m: u64) -> ProductSpec {
        let mut s = ProductSpec::new(num("rat=3/2"), Sequence::geometric(1, 2, 0), Sequence::constant(1), m);
        s.pisot_power_max = 0;
        s
    }

    #[test]
    fn integer_alpha_gives_one() {
        let ctx = Ctx::default();
        let mut s = ProductSpec::new(num("rat=2"), Sequence::geometric(1, 2, 0), Sequence::constant(1), 3);
        s.pisot_power_max = 0;
        let c = evaluate_product(&s, &ctx).unwrap();
        assert!(c.factors.iter().all(|f| f.integral));
        assert_eq!(c.partial_exact, Some(BigRational::one()));
        // 2 / (2^16 · 1)
        assert_eq!(tail_bound_exact(&s, 3).unwrap(), Some(rat(2, 1 << 16)));
        assert!(c.enclosure.contains_rat(&BigRational::one()));
    }

    #[test]
    fn three_halves_prefix() {
        let ctx = Ctx::default();
        let c = evaluate_product(&three_halves(3), &ctx).unwrap();
        let floors: Vec<i64> = c.factors.iter().map(|f| f.floor.to_i64().unwrap()).collect();
        assert_eq!(floors, vec![2, 5, 25]);
        let expect = rat(2, 1) / rat(9, 4) * (rat(5, 1) / rat(81, 16)) * (rat(25, 1) / rat(6561, 256));
        assert_eq!(c.partial_exact, Some(expect));
        let t4 = tail_bound_exact(&three_halves(4), 4).unwrap().unwrap();
        assert_eq!(t4, rat(4, 1) * num_traits::pow(rat(2, 3), 32));
        let c6 = evaluate_product(&three_halves(6), &ctx).unwrap();
        assert!(c.enclosure.contains(&c6.enclosure));
    }

    #[test]
    fn hypothesis_examples() {
        let ctx = Ctx::default();
        let s = three_halves(4);
        let h = check_hypotheses_62(&s, 1, &ctx).unwrap();
        assert_eq!(h.liminf_ratio.verdict, Verdict::Fails);
        assert_eq!(h.b_product_growth.verdict, Verdict::Fails);
        let mut s3 = s.clone();
        s3.a = Sequence::geometric(1, 3, 0);
        assert_eq!(check_hypotheses_62(&s3, 1, &ctx).unwrap().liminf_ratio.verdict, Verdict::Holds);
        assert_eq!(parameter_inequality_value(&rat(3, 1), &rat(3, 1), 2), rat(3, 2));
        assert_eq!(parameter_inequality_value(&rat(1, 1), &rat(1, 1), 2), rat(2, 3));
        // B_n = n
        let logs: Vec<RealBall> = (1..=5).map(|n| RealBall::from_i64(n, 128).log().unwrap()).collect();
        assert_eq!(polynomial_growth_failure(&logs, &rat(1, 2), &ctx).unwrap(), Some(2));
    }

    #[test]
    fn doubly_exponential_b() {
        let ctx = Ctx::default();
        let mut s = three_halves(3);
        s.b = Sequence::DoublyExponential { c: 4 };
        s.a = Sequence::geometric(1, 3, 0);
        s.epsilon = rat(1, 2);
        // 1 + d + ε = 5/2 <= c − 1 = 3
        let h = check_hypotheses_62(&s, 1, &ctx).unwrap();
        assert_eq!(h.b_product_growth.verdict, Verdict::Holds);
        assert!(h.b_product_growth.first_prefix_failure.is_none());
    }

    #[test]
    fn irrational_alpha() {
        let ctx = Ctx::default();
        let alpha = num("poly=-7,-4,4;root=0");
        let mut s = ProductSpec::new(alpha, Sequence::geometric(1, 2, 0), Sequence::constant(1), 4);
        s.pisot_power_max = 0;
        let c = evaluate_product(&s, &ctx).unwrap();
        let c5 = evaluate_product(&ProductSpec { m: 5, ..s.clone() }, &ctx).unwrap();
        assert!(c.enclosure.contains(&c5.enclosure));
        assert!(c.factors.iter().all(|f| !f.integral));
        // √2 has α^2 = 2 rational
        let mut s = ProductSpec::new(num("poly=-2,0,1;root=0"), Sequence::geometric(1, 2, 1), Sequence::constant(1), 3);
        s.pisot_power_max = 0;
        let c = evaluate_product(&s, &ctx).unwrap();
        assert!(c.factors.iter().all(|f| !f.integral));
        s.a = Sequence::geometric(2, 2, 0);
        let c = evaluate_product(&s, &ctx).unwrap();
        assert!(c.factors.iter().all(|f| f.integral));
    }
}
