//! Root-of-unity quotient equivalence, torsion exponents and the class
//! bookkeeping that goes with them.

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebraic::{quotient_annihilator, quotient_unity_order, AlgebraicNumber};
use crate::error::{Error, Result};
use crate::interval::Ctx;

/// `numerator / denominator` is a root of unity of the given order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub numerator: AlgebraicNumber,
    pub denominator: AlgebraicNumber,
    pub order: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NondegeneracyReport {
    pub nondegenerate: bool,
    /// First pair `(i, j)`, `i < j`, whose quotient is a root of unity.
    pub pair: Option<(usize, usize)>,
    pub witness: Option<Witness>,
}

fn check_nonzero(ts: &[AlgebraicNumber]) -> Result<()> {
    if ts.is_empty() {
        return Err(Error::invalid("empty tuple"));
    }
    match ts.iter().position(|t| t.is_zero()) {
        Some(i) => Err(Error::invalid(format!("tuple entry {i} is zero"))),
        None => Ok(()),
    }
}

pub fn is_nondegenerate(ts: &[AlgebraicNumber], ctx: &Ctx) -> Result<NondegeneracyReport> {
    check_nonzero(ts)?;
    let pairs: Vec<(usize, usize)> = (0..ts.len()).flat_map(|i| (i + 1..ts.len()).map(move |j| (i, j))).collect();
    let orders: Vec<Option<u64>> =
        pairs.par_iter().map(|&(i, j)| quotient_unity_order(&ts[i], &ts[j], None, ctx)).collect::<Result<_>>()?;
    for (&(i, j), o) in pairs.iter().zip(&orders) {
        if let Some(order) = *o {
            let witness = Witness { numerator: ts[i].clone(), denominator: ts[j].clone(), order };
            return Ok(NondegeneracyReport { nondegenerate: false, pair: Some((i, j)), witness: Some(witness) });
        }
    }
    Ok(NondegeneracyReport { nondegenerate: true, pair: None, witness: None })
}

/// One representative per distinct minimal polynomial, and the
/// representative index of each entry.
fn representatives(ts: &[AlgebraicNumber]) -> (Vec<AlgebraicNumber>, Vec<usize>) {
    let mut reps: Vec<AlgebraicNumber> = Vec::new();
    let mut map = Vec::with_capacity(ts.len());
    for t in ts {
        match reps.iter().position(|r| r.minpoly() == t.minpoly()) {
            Some(k) => map.push(k),
            None => {
                map.push(reps.len());
                reps.push(t.clone());
            }
        }
    }
    (reps, map)
}

/// Every unordered pair of distinct conjugates `x`, `y` (drawn from the
/// conjugate sets of `reps`) with `x / y` a root of unity.
fn torsion_pairs(reps: &[AlgebraicNumber], ctx: &Ctx) -> Result<Vec<Witness>> {
    let mut jobs = Vec::new();
    for a in 0..reps.len() {
        for b in a..reps.len() {
            jobs.push((a, b));
        }
    }
    let found: Vec<Vec<Witness>> = jobs
        .par_iter()
        .map(|&(a, b)| -> Result<Vec<Witness>> {
            let ann = quotient_annihilator(&reps[a], &reps[b])?;
            let mut out = Vec::new();
            for x in reps[a].all_conjugates() {
                for y in reps[b].all_conjugates() {
                    if a == b && y.root_index() <= x.root_index() {
                        continue;
                    }
                    if let Some(order) = quotient_unity_order(&x, &y, Some(&ann), ctx)? {
                        out.push(Witness { numerator: x.clone(), denominator: y, order });
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

/// One equivalence class after raising every entry to the `r`-th power.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassInfo {
    /// Input indices in the class.
    pub members: Vec<usize>,
    /// Distinct `r`-th powers among the members.
    pub m: usize,
    /// Number of conjugates of those powers.
    pub d: usize,
    /// The distinct `r`-th powers.
    pub powers: Vec<AlgebraicNumber>,
    /// Whether all the powers share one minimal polynomial.
    pub conjugate: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PartitionReport {
    pub tuple: Vec<AlgebraicNumber>,
    pub classes: Vec<Vec<usize>>,
    pub r: u64,
    pub class_info: Vec<ClassInfo>,
    /// Conjugate quotients that are roots of unity.
    pub witnesses: Vec<Witness>,
    pub nondegenerate: bool,
    /// Entry pairs `(i, j, order)` with `α_i / α_j` a root of unity; they
    /// collapse to one entry after raising to the `r`-th power.
    pub merged: Vec<(usize, usize, u64)>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, i: usize) -> usize {
        let p = self.0[i];
        if p == i {
            return i;
        }
        let root = self.find(p);
        self.0[i] = root;
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

pub fn equivalence_partition(ts: &[AlgebraicNumber], ctx: &Ctx) -> Result<PartitionReport> {
    check_nonzero(ts)?;
    let (reps, rep_of) = representatives(ts);
    let witnesses = torsion_pairs(&reps, ctx)?;
    let r = witnesses.iter().fold(1u64, |l, w| l.lcm(&w.order));

    let rep_index = |x: &AlgebraicNumber| reps.iter().position(|p| p.minpoly() == x.minpoly()).expect("known minpoly");
    let mut linked = vec![vec![false; reps.len()]; reps.len()];
    for w in &witnesses {
        let (a, b) = (rep_index(&w.numerator), rep_index(&w.denominator));
        linked[a][b] = true;
        linked[b][a] = true;
    }
    let mut uf = UnionFind((0..ts.len()).collect());
    let mut merged = Vec::new();
    for i in 0..ts.len() {
        for j in i + 1..ts.len() {
            if rep_of[i] == rep_of[j] || linked[rep_of[i]][rep_of[j]] {
                uf.union(i, j);
            }
            let direct = witnesses.iter().find(|w| {
                (w.numerator == ts[i] && w.denominator == ts[j]) || (w.numerator == ts[j] && w.denominator == ts[i])
            });
            if let Some(w) = direct {
                merged.push((i, j, w.order));
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut root_class: Vec<Option<usize>> = vec![None; ts.len()];
    for i in 0..ts.len() {
        let root = uf.find(i);
        match root_class[root] {
            Some(c) => classes[c].push(i),
            None => {
                root_class[root] = Some(classes.len());
                classes.push(vec![i]);
            }
        }
    }

    let powers: Vec<AlgebraicNumber> = ts.par_iter().map(|t| t.pow(r, ctx)).collect::<Result<_>>()?;
    let class_info = classes
        .iter()
        .map(|members| {
            let mut distinct: Vec<AlgebraicNumber> = Vec::new();
            for &i in members {
                if !distinct.contains(&powers[i]) {
                    distinct.push(powers[i].clone());
                }
            }
            let conjugate = distinct.iter().all(|p| p.minpoly() == distinct[0].minpoly());
            ClassInfo { members: members.clone(), m: distinct.len(), d: distinct[0].degree(), powers: distinct, conjugate }
        })
        .collect();

    Ok(PartitionReport {
        tuple: ts.to_vec(),
        classes,
        r,
        class_info,
        nondegenerate: merged.is_empty(),
        witnesses,
        merged,
    })
}

/// Verdict on the three torsion-freeness properties of `(α_1^r, …, α_k^r)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Lemma3Report {
    pub r: u64,
    pub powers: Vec<AlgebraicNumber>,
    /// No power has a distinct conjugate differing from it by a root of unity.
    pub a: bool,
    /// No power differs from a distinct conjugate of another power by a root of unity.
    pub b: bool,
    /// No two distinct conjugates of any powers differ by a root of unity.
    pub c: bool,
    pub pass: bool,
    pub witnesses: Vec<Witness>,
}

pub fn lemma3_check(ts: &[AlgebraicNumber], r: u64, ctx: &Ctx) -> Result<Lemma3Report> {
    check_nonzero(ts)?;
    if r == 0 {
        return Err(Error::invalid("r must be at least 1"));
    }
    let powers: Vec<AlgebraicNumber> = ts.par_iter().map(|t| t.pow(r, ctx)).collect::<Result<_>>()?;
    let (reps, _) = representatives(&powers);
    let witnesses = torsion_pairs(&reps, ctx)?;
    let involves = |w: &Witness, x: &AlgebraicNumber| &w.numerator == x || &w.denominator == x;
    let a = !witnesses.iter().any(|w| {
        w.numerator.minpoly() == w.denominator.minpoly() && powers.iter().any(|p| involves(w, p))
    });
    let b = !witnesses.iter().any(|w| {
        powers.iter().enumerate().any(|(i, p)| {
            let other = if &w.numerator == p {
                &w.denominator
            } else if &w.denominator == p {
                &w.numerator
            } else {
                return false;
            };
            powers.iter().enumerate().any(|(j, q)| j != i && q.minpoly() == other.minpoly() && q != p)
        })
    });
    let c = witnesses.is_empty();
    Ok(Lemma3Report { r, powers, a, b, c, pass: a && b && c, witnesses })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn num(s: &str) -> AlgebraicNumber {
        AlgebraicNumber::parse(s, &Ctx::default()).unwrap()
    }

    #[test]
    fn nondegeneracy_examples() {
        let ctx = Ctx::default();
        let phi = num("poly=-1,-1,1;root=0");
        let neg = phi.negate(&ctx).unwrap();
        let r = is_nondegenerate(&[phi.clone(), neg], &ctx).unwrap();
        assert!(!r.nondegenerate);
        assert_eq!(r.witness.unwrap().order, 2);
        assert!(is_nondegenerate(&[num("rat=2"), num("rat=3")], &ctx).unwrap().nondegenerate);
        let phi2 = phi.pow(2, &ctx).unwrap();
        assert!(is_nondegenerate(&[phi, phi2], &ctx).unwrap().nondegenerate);
    }

    #[test]
    fn partition_examples() {
        let ctx = Ctx::default();
        let r2 = num("poly=-2,0,1;root=0");
        let p = equivalence_partition(std::slice::from_ref(&r2), &ctx).unwrap();
        assert_eq!(p.r, 2);
        assert_eq!(p.classes, vec![vec![0]]);
        assert_eq!((p.class_info[0].m, p.class_info[0].d), (1, 1));
        assert_eq!(p.class_info[0].powers[0], num("rat=2"));

        let phi = num("poly=-1,-1,1;root=0");
        let phi2 = phi.pow(2, &ctx).unwrap();
        let p = equivalence_partition(&[phi, phi2], &ctx).unwrap();
        assert_eq!(p.r, 1);
        assert_eq!(p.classes, vec![vec![0], vec![1]]);

        let p = equivalence_partition(&[num("rat=2")], &ctx).unwrap();
        assert_eq!(p.r, 1);
        assert_eq!((p.class_info[0].m, p.class_info[0].d), (1, 1));
    }

    #[test]
    fn conjugates_in_one_class() {
        let ctx = Ctx::default();
        let phi = num("poly=-1,-1,1;root=0");
        let p = equivalence_partition(&[phi.clone(), phi.conjugate(1)], &ctx).unwrap();
        assert_eq!(p.classes, vec![vec![0, 1]]);
        assert_eq!((p.class_info[0].m, p.class_info[0].d), (2, 2));
    }

    #[test]
    fn lemma3_examples() {
        let ctx = Ctx::default();
        let r2 = num("poly=-2,0,1;root=0");
        assert!(lemma3_check(std::slice::from_ref(&r2), 2, &ctx).unwrap().pass);
        let f = lemma3_check(std::slice::from_ref(&r2), 1, &ctx).unwrap();
        assert!(!f.pass && !f.a);
        assert_eq!(f.witnesses[0].order, 2);
        assert!(lemma3_check(&[num("poly=-1,-1,1;root=0")], 1, &ctx).unwrap().pass);
    }
}
