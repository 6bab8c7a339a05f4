//! Nearest-integer distances, grid scans for small values of
//! `‖q (λ_1 α_1^n + … + λ_k α_k^n)‖` and decay-rate estimates.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebraic::{sign_of_real, AlgebraicNumber, CombineOp, ModulusClass};
use crate::error::{Error, Result};
use crate::interval::{Cmp, Ctx, Dyadic, Mag, RealBall};
use crate::serde_util;

/// Outcome of [`nearest_integer_distance`].
#[derive(Clone, Debug, PartialEq)]
pub enum Nearest {
    /// Every point of the ball has `p` as a nearest integer.
    Certain { p: BigInt, dist: RealBall },
    /// The ball contains a half-integer with distinct nearest integers on
    /// either side; `dist` still encloses `‖x‖`.
    Straddles { dist: RealBall },
}

impl Nearest {
    pub fn dist(&self) -> &RealBall {
        match self {
            Nearest::Certain { dist, .. } | Nearest::Straddles { dist } => dist,
        }
    }
}

fn half() -> Dyadic {
    Dyadic::new(BigInt::one(), -1)
}

/// `floor(x + 1/2)`: ties go up.
fn round_half_up(x: &Dyadic) -> BigInt {
    x.add(&half()).floor()
}

fn dyadic_dist(x: &Dyadic) -> Dyadic {
    x.sub(&Dyadic::from_int(round_half_up(x))).abs()
}

/// `‖x‖ = min_m |x − m|` for a real enclosure `x`.
pub fn nearest_integer_distance(x: &RealBall) -> Nearest {
    let lo = x.lower();
    let hi = x.upper();
    let p_lo = round_half_up(&lo);
    let p_hi = round_half_up(&hi);
    if p_lo == p_hi {
        let dist = (x - &RealBall::from_int(&p_lo, x.prec())).abs();
        return Nearest::Certain { p: p_lo, dist };
    }
    let prec = x.prec();
    let lower = if hi.sub(&lo) >= half() || Dyadic::from_int(lo.ceil()) <= hi {
        Dyadic::zero()
    } else {
        std::cmp::min(dyadic_dist(&lo), dyadic_dist(&hi))
    };
    Nearest::Straddles { dist: RealBall::from_endpoints(&lower, &half(), prec) }
}

/// Grid-search parameters.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchSpec {
    pub alphas: Vec<AlgebraicNumber>,
    /// Coefficients `λ_i`; all 1 when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambdas: Option<Vec<AlgebraicNumber>>,
    #[serde(with = "serde_util::rat")]
    pub theta: BigRational,
    #[serde(with = "serde_util::rat")]
    pub epsilon: BigRational,
    /// Exponent offset `d`; the sum of the degrees of the `α_i` when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u64>,
    pub n_range: (u64, u64),
    pub q_range: (u64, u64),
    /// Reject `α_i` strictly inside the unit circle.
    #[serde(default = "yes")]
    pub require_modulus_at_least_one: bool,
}

fn yes() -> bool {
    true
}

impl SearchSpec {
    pub fn new(alphas: Vec<AlgebraicNumber>, theta: BigRational, epsilon: BigRational, n_range: (u64, u64), q_range: (u64, u64)) -> Self {
        SearchSpec { alphas, lambdas: None, theta, epsilon, d: None, n_range, q_range, require_modulus_at_least_one: true }
    }
}

/// A certified solution of `0 < ‖x‖ < θ^n / q^(d+ε)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchHit {
    pub n: u64,
    pub q: u64,
    /// Nearest integer to `x`.
    #[serde(with = "serde_util::int")]
    pub p: BigInt,
    /// Enclosure of `x = q Σ λ_i α_i^n`.
    pub value: RealBall,
    pub distance: RealBall,
    pub bound: RealBall,
}

/// A cell with `‖x‖ = 0` exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroCell {
    pub n: u64,
    pub q: u64,
    #[serde(with = "serde_util::int")]
    pub p: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UndecidedCell {
    pub n: u64,
    pub q: u64,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub d: u64,
    pub cells: u64,
    pub hits: Vec<SearchHit>,
    pub exact_zeros: Vec<ZeroCell>,
    pub undecided: Vec<UndecidedCell>,
}

enum Cell {
    Hit(SearchHit),
    Miss,
    Zero(ZeroCell),
    Undecided(UndecidedCell),
}

struct Prepared {
    alphas: Vec<AlgebraicNumber>,
    lambdas: Vec<AlgebraicNumber>,
    rational: Option<(Vec<BigRational>, Vec<BigRational>)>,
    theta: BigRational,
    epsilon: BigRational,
    d: u64,
    /// Upper estimates of `log2 max(1, |α_i|)` and `log2 |λ_i|`.
    alpha_bits: Vec<f64>,
    lambda_bits: Vec<f64>,
}

fn log2_upper(a: &AlgebraicNumber, ctx: &Ctx) -> Result<f64> {
    let m = a.enclosure(64, ctx)?.mag_up();
    Ok(m.to_f64().log2().max(0.0) + 1e-9)
}

fn prepare(spec: &SearchSpec, ctx: &Ctx) -> Result<Prepared> {
    if spec.alphas.is_empty() {
        return Err(Error::invalid("no alphas given"));
    }
    let lambdas = match &spec.lambdas {
        Some(l) if l.len() != spec.alphas.len() => {
            return Err(Error::invalid("lambdas and alphas differ in length"));
        }
        Some(l) => l.clone(),
        None => vec![AlgebraicNumber::from_int(1); spec.alphas.len()],
    };
    if spec.theta <= BigRational::zero() || spec.theta >= BigRational::one() {
        return Err(Error::invalid("theta must lie in (0, 1)"));
    }
    if !spec.epsilon.is_positive() {
        return Err(Error::invalid("epsilon must be positive"));
    }
    let (n0, n1) = spec.n_range;
    let (q0, q1) = spec.q_range;
    if n0 < 1 || n0 > n1 || q0 < 1 || q0 > q1 {
        return Err(Error::invalid("ranges must be nonempty and start at 1 or later"));
    }
    for (i, a) in spec.alphas.iter().enumerate() {
        if a.is_zero() || !a.is_real(ctx)? {
            return Err(Error::invalid(format!("alpha {i} must be a nonzero real number")));
        }
        if spec.require_modulus_at_least_one && a.compare_modulus_to_one(ctx)? == ModulusClass::Inside {
            return Err(Error::invalid(format!("alpha {i} lies inside the unit circle")));
        }
    }
    for (i, l) in lambdas.iter().enumerate() {
        if l.is_zero() || !l.is_real(ctx)? {
            return Err(Error::invalid(format!("lambda {i} must be a nonzero real number")));
        }
    }
    let rational = if spec.alphas.iter().chain(&lambdas).all(|x| x.is_rational()) {
        Some((
            spec.alphas.iter().map(|a| a.as_rational().expect("rational")).collect(),
            lambdas.iter().map(|l| l.as_rational().expect("rational")).collect(),
        ))
    } else {
        None
    };
    let d = spec.d.unwrap_or_else(|| spec.alphas.iter().map(|a| a.degree() as u64).sum());
    Ok(Prepared {
        alpha_bits: spec.alphas.iter().map(|a| log2_upper(a, ctx)).collect::<Result<_>>()?,
        lambda_bits: lambdas.iter().map(|l| log2_upper(l, ctx)).collect::<Result<_>>()?,
        alphas: spec.alphas.clone(),
        lambdas,
        rational,
        theta: spec.theta.clone(),
        epsilon: spec.epsilon.clone(),
        d,
    })
}

/// `θ^n / q^(d+ε)`, exact when `q^ε` is rational.
fn bound_value(theta: &BigRational, eps: &BigRational, d: u64, n: u64, q: u64, prec: u32) -> Result<(RealBall, Option<BigRational>)> {
    let qb = BigInt::from(q);
    let base = num_traits::pow(theta.clone(), n as usize) / BigRational::from_integer(num_traits::pow(qb.clone(), d as usize));
    let (u, v) = (eps.numer(), eps.denom());
    let v_u32 = v.to_u32().ok_or_else(|| Error::invalid("epsilon denominator too large"))?;
    let root = qb.nth_root(v_u32);
    if num_traits::pow(root.clone(), v_u32 as usize) == qb {
        let u_us = u.to_usize().ok_or_else(|| Error::invalid("epsilon numerator too large"))?;
        let exact = base / BigRational::from_integer(num_traits::pow(root, u_us));
        return Ok((RealBall::from_rat(&exact, prec), Some(exact)));
    }
    let wp = prec + 16;
    let q_eps = (&RealBall::from_rat(eps, wp) * &RealBall::from_int(&qb, wp).log()?).exp()?;
    Ok((RealBall::from_rat(&base, wp).div(&q_eps)?.with_prec(prec), None))
}

fn working_bits(pr: &Prepared, n: u64, q: u64, guard: u32) -> u32 {
    let q_bits = (q as f64).log2();
    let alpha = pr.alpha_bits.iter().zip(&pr.lambda_bits).map(|(a, l)| n as f64 * a + l).fold(0.0, f64::max);
    let theta_bits = n as f64 * -pr.theta.to_f64().unwrap_or(0.5).log2();
    let eps = pr.epsilon.to_f64().unwrap_or(1.0);
    let bits = alpha + q_bits + theta_bits + (pr.d as f64 + eps) * q_bits + (pr.alphas.len() as f64).log2();
    (bits.ceil() as u32).saturating_add(guard).max(64)
}

/// Enclosure of `q Σ λ_i α_i^n` with absolute error about `2^-prec`.
fn value_ball(pr: &Prepared, n: u64, q: u64, prec: u32, ctx: &Ctx) -> Result<RealBall> {
    let mut s = RealBall::zero(prec);
    for ((a, l), (ab, lb)) in pr.alphas.iter().zip(&pr.lambdas).zip(pr.alpha_bits.iter().zip(&pr.lambda_bits)) {
        let p = prec + (q as f64).log2().ceil() as u32 + lb.ceil() as u32 + 8;
        let power = a.eval_power_ball(n, p, ctx)?.re;
        let lam = l.real_enclosure(p + (n as f64 * ab).ceil() as u32, ctx)?;
        s = &s + &(&lam * &power);
    }
    Ok(s.mul_int(&BigInt::from(q)))
}

/// `q Σ λ_i α_i^n` as an exact algebraic number.
pub fn exact_combination(
    alphas: &[AlgebraicNumber],
    lambdas: &[AlgebraicNumber],
    n: u64,
    q: u64,
    ctx: &Ctx,
) -> Result<AlgebraicNumber> {
    let mut acc = AlgebraicNumber::from_int(0);
    for (a, l) in alphas.iter().zip(lambdas) {
        let mut t = a.pow(n, ctx)?;
        if l.as_rational() != Some(BigRational::one()) {
            t = t.combine(&CombineOp::Product(l), ctx)?;
        }
        acc = if acc.is_zero() { t } else { acc.combine(&CombineOp::Sum(&t), ctx)? };
    }
    acc.scale_int(&BigInt::from(q), ctx)
}

fn rational_cell(pr: &Prepared, n: u64, q: u64, ctx: &Ctx) -> Result<Cell> {
    let (alphas, lambdas) = pr.rational.as_ref().expect("rational inputs");
    let x = alphas
        .iter()
        .zip(lambdas)
        .map(|(a, l)| l * num_traits::pow(a.clone(), n as usize))
        .fold(BigRational::zero(), |s, t| s + t)
        * BigRational::from_integer(q.into());
    let p = (&x + BigRational::new(1.into(), 2.into())).floor().to_integer();
    let dist = (&x - BigRational::from_integer(p.clone())).abs();
    if dist.is_zero() {
        return Ok(Cell::Zero(ZeroCell { n, q, p }));
    }
    let guard = ctx.prec / 2;
    let wp = working_bits(pr, n, q, guard);
    for prec in ctx.schedule_from(wp) {
        let (bound, exact) = bound_value(&pr.theta, &pr.epsilon, pr.d, n, q, prec)?;
        let below = match &exact {
            Some(b) => Some(dist < *b),
            None => match bound.compare_rat(&dist) {
                Cmp::Greater => Some(true),
                Cmp::Less => Some(false),
                Cmp::Indeterminate => None,
            },
        };
        match below {
            Some(true) => {
                let hit = SearchHit {
                    n,
                    q,
                    p,
                    value: RealBall::from_rat(&x, prec),
                    distance: RealBall::from_rat(&dist, prec),
                    bound,
                };
                return Ok(Cell::Hit(hit));
            }
            Some(false) => return Ok(Cell::Miss),
            None => {}
        }
    }
    Ok(Cell::Undecided(UndecidedCell { n, q, reason: "distance indistinguishable from the bound".into() }))
}

fn algebraic_cell(pr: &Prepared, n: u64, q: u64, ctx: &Ctx) -> Result<Cell> {
    let guard = ctx.prec / 2;
    let wp = working_bits(pr, n, q, guard);
    let mut zero_tested = false;
    let mut reason = "distance indistinguishable from the bound".to_string();
    for prec in ctx.schedule_from(wp) {
        let x = match value_ball(pr, n, q, prec, ctx) {
            Ok(x) => x,
            Err(e) if e.is_precision() => {
                reason = e.to_string();
                break;
            }
            Err(e) => return Err(e),
        };
        let near = nearest_integer_distance(&x);
        if let Nearest::Certain { p, dist } = &near {
            if dist.contains_zero() && !zero_tested {
                zero_tested = true;
                match exact_combination(&pr.alphas, &pr.lambdas, n, q, ctx) {
                    Ok(v) if v.as_rational() == Some(BigRational::from_integer(p.clone())) => {
                        return Ok(Cell::Zero(ZeroCell { n, q, p: p.clone() }));
                    }
                    Ok(_) => {}
                    Err(e @ (Error::DegreeCap { .. } | Error::PrecisionExhausted { .. })) => reason = e.to_string(),
                    Err(e) => return Err(e),
                }
            }
        }
        let (bound, _) = bound_value(&pr.theta, &pr.epsilon, pr.d, n, q, prec)?;
        let dist = near.dist();
        if dist.contains_zero() {
            continue;
        }
        match dist.compare(&bound) {
            Cmp::Greater => return Ok(Cell::Miss),
            Cmp::Less => {
                if let Nearest::Certain { p, dist } = near {
                    return Ok(Cell::Hit(SearchHit { n, q, p, value: x, distance: dist, bound }));
                }
            }
            Cmp::Indeterminate => {}
        }
    }
    Ok(Cell::Undecided(UndecidedCell { n, q, reason }))
}

/// Tests every cell of the `(n, q)` grid. Output is sorted by `(n, q)` and
/// does not depend on the number of worker threads.
pub fn scan(spec: &SearchSpec, ctx: &Ctx) -> Result<SearchOutcome> {
    let pr = prepare(spec, ctx)?;
    let cells: Vec<(u64, u64)> =
        (spec.n_range.0..=spec.n_range.1).flat_map(|n| (spec.q_range.0..=spec.q_range.1).map(move |q| (n, q))).collect();
    let results: Vec<Cell> = cells
        .par_iter()
        .map(|&(n, q)| if pr.rational.is_some() { rational_cell(&pr, n, q, ctx) } else { algebraic_cell(&pr, n, q, ctx) })
        .collect::<Result<_>>()?;
    let mut out = SearchOutcome { d: pr.d, cells: cells.len() as u64, hits: Vec::new(), exact_zeros: Vec::new(), undecided: Vec::new() };
    for c in results {
        match c {
            Cell::Hit(h) => out.hits.push(h),
            Cell::Zero(z) => out.exact_zeros.push(z),
            Cell::Undecided(u) => out.undecided.push(u),
            Cell::Miss => {}
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecayPoint {
    pub n: u64,
    #[serde(with = "serde_util::int")]
    pub p: BigInt,
    pub dist: RealBall,
    pub log_dist: RealBall,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecayReport {
    pub number: AlgebraicNumber,
    pub n_min: u64,
    pub n_max: u64,
    pub points: Vec<DecayPoint>,
    /// Certified enclosure of the least-squares slope of `log ‖a^n‖`.
    pub fit: RealBall,
    /// Standard error of the fit.
    pub std_error: RealBall,
    /// `fit` widened by one standard error.
    pub slope: RealBall,
}

fn power_distance(a: &AlgebraicNumber, n: u64, ctx: &Ctx) -> Result<(BigInt, RealBall)> {
    if let Some(r) = a.as_rational() {
        let x = num_traits::pow(r, n as usize);
        let p = (&x + BigRational::new(1.into(), 2.into())).floor().to_integer();
        let dist = (&x - BigRational::from_integer(p.clone())).abs();
        if dist.is_zero() {
            return Err(Error::Degenerate(format!("‖a^{n}‖ = 0")));
        }
        return Ok((p, RealBall::from_rat(&dist, ctx.prec)));
    }
    let mut zero_tested = false;
    for prec in ctx.schedule_from(64 + n as u32) {
        let x = a.eval_power_ball(n, prec, ctx)?.re;
        match nearest_integer_distance(&x) {
            Nearest::Certain { p, dist } => {
                if dist.contains_zero() {
                    if !zero_tested {
                        zero_tested = true;
                        if a.pow(n, ctx)?.as_rational() == Some(BigRational::from_integer(p.clone())) {
                            return Err(Error::Degenerate(format!("‖a^{n}‖ = 0")));
                        }
                    }
                    continue;
                }
                if dist.rad().to_f64() < dist.mid().to_f64().abs() * 2f64.powi(-(ctx.prec as i32) / 2) {
                    return Ok((p, dist));
                }
            }
            Nearest::Straddles { .. } => {}
        }
    }
    Err(Error::exhausted(format!("‖a^{n}‖"), ctx.ceiling))
}

/// Least-squares slope of `log ‖a^n‖` against `n` over `[n_max/2, n_max]`.
pub fn decay_rate(a: &AlgebraicNumber, n_max: u64, ctx: &Ctx) -> Result<DecayReport> {
    if !a.is_real(ctx)? || a.compare_modulus_to_one(ctx)? != ModulusClass::Outside {
        return Err(Error::invalid("decay rate needs a real number with |a| > 1"));
    }
    sign_of_real(a, ctx)?;
    let n_min = n_max / 2;
    if n_max < 4 {
        return Err(Error::invalid("n_max must be at least 4"));
    }
    let ns: Vec<u64> = (n_min..=n_max).collect();
    let points: Vec<DecayPoint> = ns
        .par_iter()
        .map(|&n| {
            let (p, dist) = power_distance(a, n, ctx)?;
            let log_dist = dist.with_prec(ctx.prec).log()?;
            Ok(DecayPoint { n, p, dist, log_dist })
        })
        .collect::<Result<_>>()?;

    let k = BigInt::from(ns.len());
    let sum_n: BigInt = ns.iter().map(|&n| BigInt::from(n)).sum();
    let mean = BigRational::new(sum_n, k);
    let centred: Vec<BigRational> = ns.iter().map(|&n| BigRational::from_integer(n.into()) - &mean).collect();
    let sxx: BigRational = centred.iter().map(|c| c * c).fold(BigRational::zero(), |s, t| s + t);
    let prec = ctx.prec;
    let mut fit = RealBall::zero(prec);
    for (c, pt) in centred.iter().zip(&points) {
        fit = &fit + &(&RealBall::from_rat(&(c / &sxx), prec) * &pt.log_dist);
    }
    // residual scatter around the fitted line, in double precision
    let ys: Vec<f64> = points.iter().map(|p| p.log_dist.to_f64()).collect();
    let y_mean = ys.iter().sum::<f64>() / ys.len() as f64;
    let b = fit.to_f64();
    let cs: Vec<f64> = centred.iter().map(|c| c.to_f64().unwrap_or(0.0)).collect();
    let rss: f64 = ys.iter().zip(&cs).map(|(y, c)| (y - y_mean - b * c).powi(2)).sum();
    let se = (rss / (ys.len() as f64 - 2.0) / sxx.to_f64().unwrap_or(f64::INFINITY)).sqrt();
    let se_ball = RealBall::from_f64_exact(se, prec);
    let widen = Mag::from_dyadic_up(&Dyadic::from_f64(se * (1.0 + 1e-9)));
    Ok(DecayReport { number: a.clone(), n_min, n_max, slope: fit.add_error(widen), fit, std_error: se_ball, points })
}
