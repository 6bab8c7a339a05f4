use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::IntPoly;
use crate::interval::{ComplexBall, Ctx, Dyadic, Mag, RealBall};

/// Certified enclosures of all complex roots of a squarefree polynomial, in
/// canonical order (real part descending, then imaginary part descending).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConjugateSet {
    pub minpoly: IntPoly,
    #[serde(with = "crate::serde_util::complex_vec")]
    pub roots: Vec<ComplexBall>,
    /// Certified real roots carry an exact zero imaginary part.
    pub is_real: Vec<bool>,
    /// Index of the complex-conjugate partner (self for real roots).
    pub partner: Vec<usize>,
    /// Bits of accuracy requested when the set was computed.
    pub prec: u32,
}

impl ConjugateSet {
    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    pub fn real_root(&self, i: usize) -> Option<&RealBall> {
        if self.is_real[i] {
            Some(&self.roots[i].re)
        } else {
            None
        }
    }
}

type Cache = Mutex<HashMap<(IntPoly, u32), Arc<ConjugateSet>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Isolates all roots of squarefree `p` so that every enclosure has radius
/// at most `2^-prec * max(1, |root|)`. Results are memoized.
pub fn isolate_roots(p: &IntPoly, prec: u32, ctx: &Ctx) -> Result<Arc<ConjugateSet>> {
    let key = (p.clone(), prec);
    if let Some(v) = cache().lock().expect("root cache").get(&key) {
        return Ok(v.clone());
    }
    let set = Arc::new(isolate_uncached(p, prec, ctx)?);
    let mut c = cache().lock().expect("root cache");
    if c.len() > 8192 {
        c.clear();
    }
    c.insert(key, set.clone());
    Ok(set)
}

fn isolate_uncached(p: &IntPoly, prec: u32, ctx: &Ctx) -> Result<ConjugateSet> {
    let d = p.degree();
    if p.is_zero() || d == 0 {
        return Err(Error::invalid("cannot isolate roots of a constant polynomial"));
    }
    if d == 1 {
        let r = num_rational::BigRational::new(-p.coeff(0), p.coeff(1));
        let ball = ComplexBall::from_rat(&r, prec + 8);
        return Ok(ConjugateSet { minpoly: p.clone(), roots: vec![ball], is_real: vec![true], partner: vec![0], prec });
    }
    let seeds = aberth_f64(p);
    let mut z: Vec<ComplexBall> = seeds.iter().map(|c| ComplexBall::from_f64_pair(c.re, c.im, 64)).collect();
    let start = prec + 16 + 2 * (usize::BITS - d.leading_zeros());
    let mut wp = start.max(64);
    loop {
        if wp > ctx.ceiling.max(prec + 64) * 2 {
            return Err(Error::exhausted(format!("root isolation of {p}"), ctx.ceiling));
        }
        z = aberth_refine(p, &z, wp);
        if let Some(set) = certify(p, &z, wp, prec)? {
            return Ok(set);
        }
        wp *= 2;
    }
}

/// Double precision Aberth iteration for starting values.
fn aberth_f64(p: &IntPoly) -> Vec<Complex64> {
    let d = p.degree();
    let scale = p.height().to_f64().unwrap_or(f64::MAX).max(1.0);
    let c: Vec<f64> = p.coeffs().iter().map(|x| x.to_f64().unwrap_or(0.0) / scale).collect();
    let lc = c[d];
    // Fujiwara-type bound for the starting circle
    let mut radius: f64 = 0.0;
    for k in 0..d {
        let v = (c[k] / lc).abs().powf(1.0 / (d - k) as f64);
        radius = radius.max(v);
    }
    let radius = (2.0 * radius).max(1e-3) * 0.75;
    let mut z: Vec<Complex64> =
        (0..d).map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / d as f64 + 0.4)).collect();
    let eval = |x: Complex64| {
        let mut v = Complex64::zero();
        let mut dv = Complex64::zero();
        for k in (0..=d).rev() {
            dv = dv * x + v;
            v = v * x + c[k];
        }
        (v, dv)
    };
    for _ in 0..500 {
        let mut max_step: f64 = 0.0;
        for i in 0..d {
            let (v, dv) = eval(z[i]);
            if v == Complex64::zero() {
                continue;
            }
            let ratio = v / dv;
            let mut s = Complex64::zero();
            for j in 0..d {
                if j != i {
                    s += 1.0 / (z[i] - z[j]);
                }
            }
            let w = ratio / (1.0 - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                max_step = max_step.max(w.norm() / z[i].norm().max(1.0));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    z
}

/// Aberth iteration on exact dyadic midpoints at `wp` bits.
fn aberth_refine(p: &IntPoly, z0: &[ComplexBall], wp: u32) -> Vec<ComplexBall> {
    let d = p.degree();
    let dp = p.derivative();
    let mut z: Vec<ComplexBall> = z0.iter().map(|b| b.with_prec(wp).mid_point()).collect();
    let target = -(wp as i64) + 4;
    for _ in 0..(8 + 2 * (wp as f64).log2() as usize) {
        let mut converged = true;
        for i in 0..d {
            let v = p.eval_complex(&z[i]).mid_point();
            if v.re.mid().is_zero() && v.im.mid().is_zero() {
                continue;
            }
            let dv = dp.eval_complex(&z[i]).mid_point();
            let Ok(ratio) = v.div(&dv) else { continue };
            let mut s = ComplexBall::zero(wp);
            for j in 0..d {
                if j != i {
                    if let Ok(t) = (&z[i] - &z[j]).mid_point().inv() {
                        s = &s + &t.mid_point();
                    }
                }
            }
            let denom = &ComplexBall::one(wp) - &(&ratio.mid_point() * &s).mid_point();
            let Ok(w) = ratio.mid_point().div(&denom.mid_point()) else { continue };
            let w = w.mid_point();
            z[i] = (&z[i] - &w).mid_point();
            let scale = z[i].mag_up().log2_ceil_bound().max(0);
            if w.mag_up().log2_ceil_bound() - scale > target {
                converged = false;
            }
        }
        if converged {
            break;
        }
    }
    z
}

/// Gerschgorin certification of approximations `z` via Weierstrass
/// corrections. Returns `None` if more precision is needed.
fn certify(p: &IntPoly, z: &[ComplexBall], wp: u32, prec: u32) -> Result<Option<ConjugateSet>> {
    let d = p.degree();
    let lc = ComplexBall::from_int(&p.lc(), wp);
    let mut rects = Vec::with_capacity(d);
    for i in 0..d {
        let mut den = lc.clone();
        for j in 0..d {
            if j != i {
                den = &den * &(&z[i] - &z[j]);
            }
        }
        let Ok(w) = p.eval_complex(&z[i]).div(&den) else { return Ok(None) };
        let center = &z[i] - &w;
        let radius = w.mag_up().mul_u64((d - 1) as u64);
        rects.push(center.inflate(radius));
    }
    for i in 0..d {
        for j in i + 1..d {
            if rects[i].overlaps(&rects[j]) {
                return Ok(None);
            }
        }
    }
    // every enclosure narrow enough relative to its size
    for r in &rects {
        let scale = r.mag_up().log2_ceil_bound().max(0);
        if r.rad().log2_ceil_bound() > scale - prec as i64 {
            return Ok(None);
        }
    }
    let mut is_real = vec![false; d];
    let mut partner = vec![usize::MAX; d];
    for i in 0..d {
        let conj = rects[i].conj();
        let meets: Vec<usize> = (0..d).filter(|&j| j != i && rects[j].overlaps(&conj)).collect();
        if rects[i].im.contains_zero() {
            if meets.is_empty() {
                is_real[i] = true;
                partner[i] = i;
            } else {
                return Ok(None);
            }
        } else if meets.len() == 1 {
            partner[i] = meets[0];
        } else {
            return Ok(None);
        }
    }
    for i in 0..d {
        if is_real[i] {
            rects[i] = ComplexBall::real(rects[i].re.clone());
        }
    }
    // canonical order
    let mut order_ok = true;
    let mut cmp = vec![vec![Ordering::Equal; d]; d];
    for i in 0..d {
        for j in 0..d {
            if i == j {
                continue;
            }
            let c = canonical_cmp(&rects, &partner, i, j, wp);
            match c {
                Some(o) => cmp[i][j] = o,
                None => order_ok = false,
            }
        }
    }
    if !order_ok {
        return Ok(None);
    }
    let mut idx: Vec<usize> = (0..d).collect();
    idx.sort_by(|&a, &b| if a == b { Ordering::Equal } else { cmp[a][b] });
    let mut pos = vec![0; d];
    for (k, &i) in idx.iter().enumerate() {
        pos[i] = k;
    }
    Ok(Some(ConjugateSet {
        minpoly: p.clone(),
        roots: idx.iter().map(|&i| rects[i].clone()).collect(),
        is_real: idx.iter().map(|&i| is_real[i]).collect(),
        partner: idx.iter().map(|&i| pos[partner[i]]).collect(),
        prec,
    }))
}

/// `Less` means root `i` comes first.
fn canonical_cmp(rects: &[ComplexBall], partner: &[usize], i: usize, j: usize, wp: u32) -> Option<Ordering> {
    let by_im = || {
        let (a, b) = (&rects[i].im, &rects[j].im);
        if a.lower() > b.upper() {
            Some(Ordering::Less)
        } else if b.lower() > a.upper() {
            Some(Ordering::Greater)
        } else {
            None
        }
    };
    if partner[i] == j {
        return by_im();
    }
    let (a, b) = (&rects[i].re, &rects[j].re);
    if a.lower() > b.upper() {
        return Some(Ordering::Less);
    }
    if b.lower() > a.upper() {
        return Some(Ordering::Greater);
    }
    // overlapping real parts at high precision: treat as equal real parts
    if wp >= 256 {
        by_im()
    } else {
        None
    }
}

/// Cauchy bound: every root has modulus below `1 + max |c_k / c_d|`.
pub fn cauchy_bound(p: &IntPoly) -> Mag {
    let lc = Dyadic::from_int(p.lc().clone()).mag_down();
    let mut m = Mag::zero();
    for c in &p.coeffs()[..p.degree()] {
        m = m.max(&Dyadic::from_int(c.clone()).mag_up());
    }
    Mag::from_u64(1).add(&m.div(&lc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn sqrt_two_roots() {
        let s = isolate_roots(&p(&[-2, 0, 1]), 100, &Ctx::default()).unwrap();
        assert_eq!(s.is_real, vec![true, true]);
        let r0 = &s.roots[0].re;
        assert!((r0.to_f64() - std::f64::consts::SQRT_2).abs() < 1e-15);
        assert!(r0.sqr().contains_int(&BigInt::from(2)));
        assert!(s.roots[1].re.is_negative());
        assert!(!s.roots[0].overlaps(&s.roots[1]));
    }

    #[test]
    fn i_and_minus_i() {
        let s = isolate_roots(&p(&[1, 0, 1]), 64, &Ctx::default()).unwrap();
        assert_eq!(s.is_real, vec![false, false]);
        assert!(s.roots[0].im.is_positive());
        assert!(s.roots[0].re.contains_zero());
        assert_eq!(s.partner, vec![1, 0]);
    }

    #[test]
    fn lehmer_polynomial() {
        let lehmer = p(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        let s = isolate_roots(&lehmer, 80, &Ctx::default()).unwrap();
        assert_eq!(s.degree(), 10);
        let reals: Vec<f64> = (0..10).filter(|&i| s.is_real[i]).map(|i| s.roots[i].re.to_f64()).collect();
        assert_eq!(reals.len(), 2);
        assert!((reals[0] - 1.176280818).abs() < 1e-8);
        assert!(reals[1] > 0.0 && reals[1] < 1.0);
        assert!(s.is_real[0]);
    }

    #[test]
    fn equal_real_parts_ordered_by_imaginary_part() {
        // x^4 + 5x^2 + 5: four purely imaginary roots
        let s = isolate_roots(&p(&[5, 0, 5, 0, 1]), 64, &Ctx::default()).unwrap();
        let ims: Vec<f64> = s.roots.iter().map(|r| r.im.to_f64()).collect();
        for w in ims.windows(2) {
            assert!(w[0] > w[1]);
        }
    }
}
