use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::poly::IntPoly;
use crate::algebraic::roots::{cauchy_bound, isolate_roots, ConjugateSet};
use crate::error::{Error, Result};
use crate::interval::{ComplexBall, Ctx, RealBall};

/// Largest degree accepted by [`is_irreducible`] and [`factor_squarefree`].
pub const DEGREE_CAP: usize = 16;

/// A conjugation-closed block of roots: a real root or a conjugate pair.
#[derive(Clone, Debug)]
struct Unit {
    roots: Vec<usize>,
}

fn units_of(set: &ConjugateSet, alive: &[usize]) -> Vec<Unit> {
    let mut out = Vec::new();
    for &i in alive {
        if set.is_real[i] {
            out.push(Unit { roots: vec![i] });
        } else if set.partner[i] > i {
            out.push(Unit { roots: vec![i, set.partner[i]] });
        }
    }
    out
}

fn ball_may_be_integer(b: &RealBall) -> bool {
    let (lo, hi) = b.integer_range();
    lo <= hi
}

enum Attempt {
    Factor(IntPoly),
    NotFactor,
    NeedPrecision,
}

/// Tries `L * prod (x - r)` over the chosen roots as an integer factor of `f`.
fn try_candidate(f: &IntPoly, lead: &BigInt, roots: &[&ComplexBall], prec: u32) -> Attempt {
    let mut coeffs = vec![ComplexBall::from_int(lead, prec)];
    for r in roots {
        // multiply by (x - r)
        let mut next = vec![ComplexBall::zero(prec); coeffs.len() + 1];
        for (k, c) in coeffs.iter().enumerate() {
            next[k + 1] = &next[k + 1] + c;
            next[k] = &next[k] - &(c * *r);
        }
        coeffs = next;
    }
    let mut ints = Vec::with_capacity(coeffs.len());
    for c in &coeffs {
        if !ball_may_be_integer(&c.im) || !c.im.contains_zero() || !ball_may_be_integer(&c.re) {
            return Attempt::NotFactor;
        }
        match c.re.unique_integer() {
            Some(v) => ints.push(v),
            None => return Attempt::NeedPrecision,
        }
    }
    let g = IntPoly::new(ints).primitive_part();
    if g.degree() == 0 {
        return Attempt::NotFactor;
    }
    if f.div_exact(&g).is_ok() {
        Attempt::Factor(g)
    } else {
        Attempt::NotFactor
    }
}

/// Bits so that coefficient balls of candidate factors are narrower than 1/4.
fn needed_bits(f: &IntPoly) -> u32 {
    let d = f.degree() as i64;
    let lead_bits = f.lc().bits() as i64;
    let r = cauchy_bound(f).log2_ceil_bound().max(1);
    (lead_bits + d + d * r + 24) as u32
}

/// Depth-first search over subsets of units with total weight `target`,
/// pruning by the integrality of `L * sum` and `L * prod`.
#[allow(clippy::too_many_arguments)]
fn search(
    f: &IntPoly,
    lead: &BigInt,
    set: &ConjugateSet,
    units: &[Unit],
    start: usize,
    target: usize,
    chosen: &mut Vec<usize>,
    sum: &ComplexBall,
    prod: &ComplexBall,
    prec: u32,
    must_contain: Option<usize>,
) -> Result<Option<IntPoly>> {
    let weight: usize = chosen.iter().map(|&u| units[u].roots.len()).sum();
    if weight == target {
        if let Some(m) = must_contain {
            if !chosen.iter().any(|&u| units[u].roots.contains(&m)) {
                return Ok(None);
            }
        }
        let l = ComplexBall::from_int(lead, prec);
        let s = &l * sum;
        let pr = &l * prod;
        if !s.im.contains_zero() || !ball_may_be_integer(&s.re) || !pr.im.contains_zero() || !ball_may_be_integer(&pr.re) {
            return Ok(None);
        }
        let roots: Vec<&ComplexBall> = chosen.iter().flat_map(|&u| units[u].roots.iter().map(|&i| &set.roots[i])).collect();
        return match try_candidate(f, lead, &roots, prec) {
            Attempt::Factor(g) => Ok(Some(g)),
            Attempt::NotFactor => Ok(None),
            Attempt::NeedPrecision => Err(Error::Indeterminate { what: "factor coefficient".into(), bits: prec }),
        };
    }
    for u in start..units.len() {
        let w = units[u].roots.len();
        if weight + w > target {
            continue;
        }
        let mut s = sum.clone();
        let mut pr = prod.clone();
        for &i in &units[u].roots {
            s = &s + &set.roots[i];
            pr = &pr * &set.roots[i];
        }
        chosen.push(u);
        let r = search(f, lead, set, units, u + 1, target, chosen, &s, &pr, prec, must_contain)?;
        chosen.pop();
        if r.is_some() {
            return Ok(r);
        }
    }
    Ok(None)
}

/// Smallest-degree nontrivial factor of squarefree `f` among root subsets of
/// weight at most `max_weight`, optionally required to vanish at root
/// `must_contain` of the canonical root list of `f`.
fn smallest_factor(f: &IntPoly, max_weight: usize, must_contain: Option<usize>, ctx: &Ctx) -> Result<Option<IntPoly>> {
    let mut bits = needed_bits(f).max(ctx.prec);
    loop {
        if bits > ctx.ceiling {
            return Err(Error::exhausted(format!("factoring {f}"), ctx.ceiling));
        }
        let set = isolate_roots(f, bits, ctx)?;
        let alive: Vec<usize> = (0..f.degree()).collect();
        let units = units_of(&set, &alive);
        let lead = f.lc().abs();
        let wp = bits + 16;
        let mut outcome = Ok(None);
        for target in 1..=max_weight {
            let mut chosen = Vec::new();
            let r = search(f, &lead, &set, &units, 0, target, &mut chosen, &ComplexBall::zero(wp), &ComplexBall::one(wp), wp, must_contain);
            match r {
                Ok(Some(g)) => {
                    outcome = Ok(Some(g));
                    break;
                }
                Ok(None) => {}
                Err(e) => {
                    outcome = Err(e);
                    break;
                }
            }
        }
        match outcome {
            Err(e) if e.is_precision() => bits *= 2,
            other => return other,
        }
    }
}

fn check_cap(f: &IntPoly) -> Result<()> {
    if f.degree() > DEGREE_CAP {
        return Err(Error::DegreeCap { degree: f.degree(), cap: DEGREE_CAP });
    }
    Ok(())
}

/// Whether a primitive polynomial of positive degree is irreducible over `Q`.
pub fn is_irreducible(p: &IntPoly, ctx: &Ctx) -> Result<bool> {
    if p.degree() == 0 {
        return Err(Error::invalid("irreducibility of a constant"));
    }
    if super::cyclotomic_index(p).is_some() || super::cyclotomic_index(&p.scale(&(-1).into())).is_some() {
        return Ok(true);
    }
    check_cap(p)?;
    if p.degree() == 1 {
        return Ok(true);
    }
    if !p.is_squarefree() {
        return Ok(false);
    }
    if p.coeff(0).is_zero() {
        return Ok(false);
    }
    Ok(smallest_factor(&p.primitive_part(), p.degree() / 2, None, ctx)?.is_none())
}

/// Irreducible factors (primitive, positive leading coefficient) of a
/// squarefree polynomial, sorted by degree then coefficients.
pub fn factor_squarefree(p: &IntPoly, ctx: &Ctx) -> Result<Vec<IntPoly>> {
    let mut f = p.primitive_part();
    if f.degree() == 0 {
        return Ok(Vec::new());
    }
    check_cap(&f)?;
    let mut out = Vec::new();
    if f.coeff(0).is_zero() {
        out.push(IntPoly::x());
        f = f.div_exact(&IntPoly::x())?.primitive_part();
    }
    while f.degree() > 0 {
        if f.degree() == 1 {
            out.push(f.clone());
            break;
        }
        match smallest_factor(&f, f.degree() / 2, None, ctx)? {
            Some(g) => {
                f = f.div_exact(&g)?.primitive_part();
                out.push(g);
            }
            None => {
                out.push(f.clone());
                break;
            }
        }
    }
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs())));
    Ok(out)
}

/// Irreducible factor of squarefree `f` vanishing at canonical root `root`.
pub fn factor_through_root(f: &IntPoly, root: usize, ctx: &Ctx) -> Result<IntPoly> {
    let f = f.primitive_part();
    check_cap(&f)?;
    if f.degree() <= 1 {
        return Ok(f);
    }
    Ok(smallest_factor(&f, f.degree() - 1, Some(root), ctx)?.unwrap_or(f))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn irreducibility_examples() {
        let ctx = Ctx::default();
        assert!(is_irreducible(&p(&[-1, -1, 1]), &ctx).unwrap());
        assert!(!is_irreducible(&p(&[-1, 0, 1]), &ctx).unwrap());
        assert!(is_irreducible(&p(&[1, 1, 1, 1, 1]), &ctx).unwrap());
        assert!(!is_irreducible(&p(&[1, 0, 0, 0, 4]), &ctx).unwrap());
        assert!(is_irreducible(&p(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]), &ctx).unwrap());
        let big = IntPoly::monomial(1.into(), 17);
        assert!(matches!(is_irreducible(&(&big - &IntPoly::from_i64s(&[2])), &ctx), Err(Error::DegreeCap { .. })));
    }

    #[test]
    fn factors_multiply_back() {
        let ctx = Ctx::default();
        let f = &(&p(&[-2, 0, 1]) * &p(&[1, 1, 1])) * &p(&[-3, 2]);
        let fs = factor_squarefree(&f, &ctx).unwrap();
        assert_eq!(fs, vec![p(&[-3, 2]), p(&[-2, 0, 1]), p(&[1, 1, 1])]);
        // x^4 + 4 = (x^2 + 2x + 2)(x^2 - 2x + 2)
        let fs = factor_squarefree(&p(&[4, 0, 0, 0, 1]), &ctx).unwrap();
        assert_eq!(fs, vec![p(&[2, -2, 1]), p(&[2, 2, 1])]);
    }
}
