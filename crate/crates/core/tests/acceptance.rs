//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p pisotlab-core --test acceptance`.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pisotlab::approx::{decay_rate, exact_combination, nearest_integer_distance, scan, Nearest, SearchOutcome, SearchSpec};
use pisotlab::classify::{classify_number, pisot_power_search};
use pisotlab::exact::{cyclotomic, is_irreducible};
use pisotlab::heights::weil_height;
use pisotlab::interval::{decimal::parse_rational, Dyadic, Mag};
use pisotlab::partition::{equivalence_partition, is_nondegenerate, lemma3_check};
use pisotlab::products::{
    check_hypotheses_62, evaluate_product, partial_product_exact, tail_bound_exact, parameter_inequality_value,
    ProductCertificate, ProductSpec, Sequence, Verdict,
};
use pisotlab::{AlgebraicNumber, Ctx, IntPoly, RealBall, Tri};

type Outcome = std::result::Result<String, String>;

/// Heights must agree to this absolute tolerance.
const HEIGHT_TOL: f64 = 1e-20;
/// Extra slack allowed on the product radius is `10^-PRODUCT_SLACK_DIGITS`.
const PRODUCT_SLACK_DIGITS: usize = 30;
const CLASSIFY_BUDGET: Duration = Duration::from_secs(10);
const HEIGHT_BUDGET: Duration = Duration::from_secs(60);
const RANDOM_POLYS: usize = 500;
const RANDOM_EVALUATIONS: usize = 10_000;

fn num(s: &str) -> AlgebraicNumber {
    AlgebraicNumber::parse(s, &Ctx::default()).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

fn ensure(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let ctx = Ctx::default();
    for (name, lit) in [
        ("golden ratio", "poly=-1,-1,1;root=0"),
        ("plastic number", "poly=-1,-1,0,1;root=0"),
        ("larger root of x^2-3x+1", "poly=1,-3,1;root=0"),
    ] {
        let c = classify_number(&num(lit), &ctx).map_err(err)?;
        ensure(c.is_pisot == Tri::Yes, format!("{name} not classified Pisot"))?;
    }
    let lehmer = num("poly=1,1,0,-1,-1,-1,-1,-1,0,1,1;root=0");
    ensure((lehmer.to_f64(&ctx).map_err(err)?.0 - 1.17628).abs() < 1e-5, "wrong Lehmer root")?;
    let c = classify_number(&lehmer, &ctx).map_err(err)?;
    ensure(c.is_salem == Tri::Yes && c.is_pisot == Tri::No, "Lehmer's number not classified Salem")?;
    let s = pisot_power_search(&lehmer, 8, &ctx).map_err(err)?;
    ensure(s.found.is_none() && s.undecided.is_empty(), "a power of Lehmer's number was reported Pisot")?;

    let pp = num("poly=1,-6,2;root=0");
    let c = classify_number(&pp, &ctx).map_err(err)?;
    ensure(c.is_pseudo_pisot == Tri::Yes, "larger root of 2x^2-6x+1 not pseudo-Pisot")?;
    ensure(!c.is_algebraic_integer, "larger root of 2x^2-6x+1 reported integral")?;

    let a = num("poly=-7,-4,4;root=0");
    ensure((a.to_f64(&ctx).map_err(err)?.0 - (0.5 + 2f64.sqrt())).abs() < 1e-12, "wrong root of 4x^2-4x-7")?;
    let c = classify_number(&a, &ctx).map_err(err)?;
    ensure(c.is_pisot == Tri::No, "1/2+sqrt(2) classified Pisot")?;
    let s = pisot_power_search(&a, 6, &ctx).map_err(err)?;
    ensure(s.found.is_none() && s.undecided.is_empty() && s.steps.len() == 6, "Pisot power search on 1/2+sqrt(2)")?;
    for st in &s.steps {
        let by_lc = !st.power.minpoly().is_monic() && st.reason.contains("not monic");
        let by_modulus = st.reason.contains("conjugate");
        ensure(st.is_pisot == Tri::No && (by_lc || by_modulus), format!("power {} lacks a certificate: {}", st.m, st.reason))?;
    }
    let t = start.elapsed();
    ensure(t < CLASSIFY_BUDGET, format!("took {t:?}"))?;
    Ok(format!("6 numbers, 14 powers certified in {:.2} s", t.as_secs_f64()))
}

fn heights_agree(x: &RealBall, y: &RealBall) -> bool {
    let tol = Mag::from_dyadic_up(&Dyadic::from_f64(HEIGHT_TOL));
    x.rad().cmp_mag(&tol).is_le() && y.rad().cmp_mag(&tol).is_le() && x.add_error(tol).overlaps(y)
}

fn random_irreducible(rng: &mut ChaCha8Rng, ctx: &Ctx) -> AlgebraicNumber {
    loop {
        let deg = rng.gen_range(1..=4usize);
        let cs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-8..=8)).collect();
        if cs[0] == 0 || cs[deg] == 0 {
            continue;
        }
        let p = IntPoly::from_i64s(&cs).primitive_part();
        if !is_irreducible(&p, ctx).unwrap_or(false) {
            continue;
        }
        let k = rng.gen_range(0..deg);
        return AlgebraicNumber::new(p, k, ctx).expect("irreducible polynomial");
    }
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let ctx = Ctx::default();
    let prec = 128;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let mut unity = 0;
    for i in 0..RANDOM_POLYS {
        let a = random_irreducible(&mut rng, &ctx);
        let lit = a.literal();
        let h = weil_height(&a, prec, &ctx).map_err(err)?;
        let h2 = weil_height(&a.pow(2, &ctx).map_err(err)?, prec, &ctx).map_err(err)?;
        ensure(heights_agree(&h2.h, &h.h.mul_2exp(1)), format!("#{i} {lit}: h(a^2) != 2h(a)"))?;
        let hi = weil_height(&a.inverse(&ctx).map_err(err)?, prec, &ctx).map_err(err)?;
        ensure(heights_agree(&hi.H, &h.H), format!("#{i} {lit}: H(a) != H(1/a)"))?;
        let is_unity = a.root_of_unity_order(&ctx).map_err(err)?.is_some();
        let h_zero = h.h.is_exact() && h.h.mid().is_zero();
        ensure(is_unity == h_zero, format!("#{i} {lit}: Kronecker mismatch"))?;
        ensure(is_unity || h.h.is_positive(), format!("#{i} {lit}: h not certified positive"))?;
        unity += is_unity as usize;
    }
    for m in 1..=30u64 {
        let p = cyclotomic(m);
        for k in [0, p.degree() - 1] {
            let z = AlgebraicNumber::new(p.clone(), k, &ctx).map_err(err)?;
            let h = weil_height(&z, prec, &ctx).map_err(err)?;
            ensure(h.h.is_exact() && h.h.mid().is_zero(), format!("h(zeta_{m}) not exactly 0"))?;
            ensure(z.root_of_unity_order(&ctx).map_err(err)? == Some(m), format!("order of zeta_{m}"))?;
        }
    }
    let t = start.elapsed();
    ensure(t < HEIGHT_BUDGET, format!("took {t:?}"))?;
    Ok(format!("{RANDOM_POLYS} random numbers ({unity} roots of unity), Phi_1..Phi_30 exact, {:.2} s", t.as_secs_f64()))
}

#[derive(serde::Deserialize)]
struct Fixture {
    alpha: String,
    theta: String,
    epsilon: String,
    n_max: u64,
    q_max: u64,
    hits: Vec<FixtureHit>,
    exact_zeros: Vec<(u64, u64)>,
}

#[derive(serde::Deserialize)]
struct FixtureHit {
    n: u64,
    q: u64,
    p: String,
}

fn load_fixture() -> Fixture {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/three_halves_grid.json");
    serde_json::from_str(&std::fs::read_to_string(path).expect("fixture")).expect("fixture json")
}

fn grid_spec(f: &Fixture) -> SearchSpec {
    SearchSpec::new(
        vec![AlgebraicNumber::from_rat(&parse_rational(&f.alpha).unwrap())],
        parse_rational(&f.theta).unwrap(),
        parse_rational(&f.epsilon).unwrap(),
        (1, f.n_max),
        (1, f.q_max),
    )
}

fn hit_set(o: &SearchOutcome) -> BTreeSet<(u64, u64, BigInt)> {
    o.hits.iter().map(|h| (h.n, h.q, h.p.clone())).collect()
}

fn criterion_3() -> Outcome {
    let ctx = Ctx::default();
    let phi = num("poly=-1,-1,1;root=0");
    let psi_abs = {
        let s5 = RealBall::from_i64(5, 512).sqrt().map_err(err)?;
        (&s5 - &RealBall::one(512)).mul_2exp(-1)
    };
    let (mut l0, mut l1) = (BigInt::from(2), BigInt::one());
    for n in 1..=60u64 {
        let x = phi.eval_power_ball(n, 128, &ctx).map_err(err)?.re;
        let Nearest::Certain { p, dist } = nearest_integer_distance(&x) else {
            return Err(format!("nearest integer to phi^{n} undecided"));
        };
        // |psi| > 1/2, so the nearest integer to phi is 2 = L_1 + 1 and ‖phi‖ = psi^2
        let (want_p, want_d) = if n == 1 { (BigInt::from(2), psi_abs.pow(2)) } else { (l1.clone(), psi_abs.pow(n)) };
        ensure(p == want_p, format!("nearest integer to phi^{n} is {p}, Lucas gives {want_p}"))?;
        ensure(dist.contains(&want_d), format!("‖phi^{n}‖ enclosure misses |1-phi|^{n}"))?;
        let next = &l0 + &l1;
        l0 = l1;
        l1 = next;
    }
    let d = decay_rate(&phi, 60, &ctx).map_err(err)?;
    let target = psi_abs.log().map_err(err)?;
    ensure(d.slope.contains(&target), "decay_rate(phi, 60) misses log(phi-1)")?;

    let f = load_fixture();
    let out = scan(&grid_spec(&f), &ctx).map_err(err)?;
    ensure(out.undecided.is_empty(), format!("{} undecided cells", out.undecided.len()))?;
    let oracle: BTreeSet<(u64, u64, BigInt)> = f.hits.iter().map(|h| (h.n, h.q, h.p.parse().unwrap())).collect();
    let got = hit_set(&out);
    ensure(got == oracle, format!("hit sets differ: {} vs oracle {}", got.len(), oracle.len()))?;
    let zeros: BTreeSet<(u64, u64)> = out.exact_zeros.iter().map(|z| (z.n, z.q)).collect();
    let oracle_zeros: BTreeSet<(u64, u64)> = f.exact_zeros.iter().copied().collect();
    ensure(zeros == oracle_zeros, "exact-zero cells differ from the oracle")?;
    Ok(format!(
        "Lucas check n<=60, slope {:.12} contains log(phi-1), {} hits and {} zeros match the oracle",
        d.slope.to_f64(),
        got.len(),
        zeros.len()
    ))
}

fn criterion_4() -> Outcome {
    let ctx = Ctx::default();
    let alpha = num("rat=3/2");
    let lambdas = [-3i64, -1, 1, 2, 7];
    for n in 1..=30u64 {
        let q = 1u64 << n;
        for &l in &lambdas {
            let lam = AlgebraicNumber::from_int(l);
            let v = exact_combination(std::slice::from_ref(&alpha), std::slice::from_ref(&lam), n, q, &ctx).map_err(err)?;
            let want = BigInt::from(l) * num_traits::pow(BigInt::from(3), n as usize);
            ensure(v.as_rational() == Some(BigRational::from_integer(want)), format!("lambda q alpha^n at n={n}, lambda={l}"))?;
            let mut spec = SearchSpec::new(vec![alpha.clone()], rat(1, 2), rat(1, 2), (n, n), (q, q));
            spec.lambdas = Some(vec![lam]);
            let out = scan(&spec, &ctx).map_err(err)?;
            ensure(out.hits.is_empty() && out.undecided.is_empty(), format!("cell n={n}, lambda={l} not excluded"))?;
            ensure(out.exact_zeros.len() == 1 && out.exact_zeros[0].n == n, format!("cell n={n}, lambda={l} not flagged zero"))?;
        }
    }
    Ok(format!("{} cells flagged exact-zero and excluded", 30 * lambdas.len()))
}

fn three_halves(m: u64) -> ProductSpec {
    let mut s = ProductSpec::new(num("rat=3/2"), Sequence::geometric(1, 2, 0), Sequence::constant(1), m);
    s.pisot_power_max = 0;
    s
}

fn strictly_inside(inner: &ProductCertificate, outer: &ProductCertificate) -> bool {
    inner.lower > outer.lower && inner.upper < outer.upper
}

fn products_run(ctx: &Ctx) -> std::result::Result<Vec<ProductCertificate>, String> {
    (3..=6).map(|m| evaluate_product(&three_halves(m), ctx).map_err(err)).collect()
}

fn criterion_5() -> Outcome {
    let ctx = Ctx::default();
    let certs = products_run(&ctx)?;
    let c4 = &certs[1];
    let limit = BigRational::from_integer(4.into()) * num_traits::pow(rat(2, 3), 32) 
        + BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(10), PRODUCT_SLACK_DIGITS));
    let rad = c4.enclosure.rad().to_dyadic().to_rat();
    ensure(rad <= limit, format!("radius {} above 4(2/3)^32 + 1e-30", rad.to_f64().unwrap_or(f64::NAN)))?;
    for w in certs.windows(2) {
        ensure(strictly_inside(&w[1], &w[0]), format!("m={} not strictly inside m={}", w[1].m, w[0].m))?;
    }
    let big_m = 15;
    let p_big = partial_product_exact(&three_halves(big_m), big_m).map_err(err)?.ok_or("not rational")?;
    for m in 1..big_m {
        let s = three_halves(m);
        let pm = partial_product_exact(&s, m).map_err(err)?.ok_or("not rational")?;
        let t = tail_bound_exact(&s, m).map_err(err)?.ok_or("not rational")?;
        ensure((&pm - &p_big).abs() <= t, format!("tail inequality fails at m={m}"))?;
        ensure(p_big <= pm, format!("partial products increase at m={m}"))?;
    }
    let h = check_hypotheses_62(&three_halves(4), 1, &ctx).map_err(err)?;
    ensure(h.liminf_ratio.verdict == Verdict::Fails, "a_n = 2^n should fail liminf > 2")?;
    let mut s3 = three_halves(4);
    s3.a = Sequence::geometric(1, 3, 0);
    let h = check_hypotheses_62(&s3, 1, &ctx).map_err(err)?;
    ensure(h.liminf_ratio.verdict == Verdict::Holds, "a_n = 3^n should pass liminf > 2")?;
    let v1 = parameter_inequality_value(&rat(3, 1), &rat(3, 1), 2);
    let v2 = parameter_inequality_value(&rat(1, 1), &rat(1, 1), 2);
    ensure(v1 == rat(3, 2) && v1 > BigRational::one(), "(d,delta,eps)=(2,3,3) should give 3/2 > 1")?;
    ensure(v2 == rat(2, 3) && v2 < BigRational::one(), "(d,delta,eps)=(2,1,1) should give 2/3 < 1")?;
    Ok(format!(
        "radius(m=4) = {:.6e} <= {:.6e}, m=3..6 strictly nested, tail inequality exact for m<15",
        rad.to_f64().unwrap_or(f64::NAN),
        limit.to_f64().unwrap_or(f64::NAN)
    ))
}

fn criterion_6() -> Outcome {
    let ctx = Ctx::default();
    let sqrt2 = num("poly=-2,0,1;root=0");
    let rep = equivalence_partition(std::slice::from_ref(&sqrt2), &ctx).map_err(err)?;
    ensure(rep.r == 2, format!("(sqrt 2) gives r = {}", rep.r))?;
    ensure(lemma3_check(std::slice::from_ref(&sqrt2), 2, &ctx).map_err(err)?.pass, "lemma check at r=2")?;
    ensure(!lemma3_check(std::slice::from_ref(&sqrt2), 1, &ctx).map_err(err)?.pass, "lemma check at r=1 should fail")?;

    let phi = num("poly=-1,-1,1;root=0");
    let nphi = phi.negate(&ctx).map_err(err)?;
    let nd = is_nondegenerate(&[phi.clone(), nphi], &ctx).map_err(err)?;
    ensure(!nd.nondegenerate && nd.witness.map(|w| w.order) == Some(2), "(phi, -phi) should be degenerate with order 2")?;
    let phi2 = phi.pow(2, &ctx).map_err(err)?;
    let nd = is_nondegenerate(&[phi.clone(), phi2.clone()], &ctx).map_err(err)?;
    let rep = equivalence_partition(&[phi.clone(), phi2], &ctx).map_err(err)?;
    ensure(nd.nondegenerate && rep.classes.len() == 2 && rep.r == 1, "(phi, phi^2) should be two classes with r = 1")?;

    let corpus: Vec<AlgebraicNumber> = ["poly=-1,-1,1;root=0", "poly=-1,1,1;root=1", "poly=1,-3,1;root=0", "poly=-2,0,1;root=0", "poly=2,0,1;root=0", "rat=3/2"]
        .iter()
        .map(|s| num(s))
        .collect();
    let k = corpus.len();
    let mut rel = vec![vec![false; k]; k];
    for i in 0..k {
        for j in 0..k {
            let rep = equivalence_partition(&[corpus[i].clone(), corpus[j].clone()], &ctx).map_err(err)?;
            rel[i][j] = rep.classes.len() == 1;
        }
    }
    for i in 0..k {
        ensure(rel[i][i], format!("reflexivity fails at {i}"))?;
        for j in 0..k {
            ensure(rel[i][j] == rel[j][i], format!("symmetry fails at ({i},{j})"))?;
            for l in 0..k {
                ensure(!(rel[i][j] && rel[j][l]) || rel[i][l], format!("transitivity fails at ({i},{j},{l})"))?;
            }
        }
    }
    let mut subsets = 0;
    for mask in 1u32..(1 << k) {
        if mask.count_ones() > 3 {
            continue;
        }
        let idx: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).collect();
        let ts: Vec<AlgebraicNumber> = idx.iter().map(|&i| corpus[i].clone()).collect();
        let rep = equivalence_partition(&ts, &ctx).map_err(err)?;
        let mut seen = vec![0; idx.len()];
        for c in &rep.classes {
            for &x in c {
                seen[x] += 1;
            }
        }
        ensure(seen.iter().all(|&s| s == 1), format!("classes of {idx:?} are not a partition"))?;
        let class_of = |x: usize| rep.classes.iter().position(|c| c.contains(&x)).unwrap();
        for a in 0..idx.len() {
            for b in 0..idx.len() {
                ensure((class_of(a) == class_of(b)) == rel[idx[a]][idx[b]], format!("subset {idx:?} disagrees with the pairwise relation"))?;
            }
        }
        subsets += 1;
    }
    let linked = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).filter(|&(i, j)| rel[i][j]).count();
    Ok(format!("{subsets} subsets of a 6-number corpus consistent, {linked} linked pairs"))
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool").install(f)
}

fn random_rat(rng: &mut ChaCha8Rng) -> BigRational {
    let p: i64 = rng.gen_range(-1_000_000..=1_000_000);
    let q: i64 = rng.gen_range(1..=1_000_000);
    BigRational::new(p.into(), q.into())
}

/// Random arithmetic on exact rationals, each step mirrored in ball arithmetic
/// and checked for containment.
fn containment_sweep(count: usize) -> std::result::Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    for i in 0..count {
        let prec = rng.gen_range(16..=256u32);
        let mut exact = random_rat(&mut rng);
        let mut ball = RealBall::from_rat(&exact, prec);
        for _ in 0..rng.gen_range(1..=6) {
            let y = random_rat(&mut rng);
            let yb = RealBall::from_rat(&y, prec);
            match rng.gen_range(0..7) {
                0 => {
                    exact += &y;
                    ball = &ball + &yb;
                }
                1 => {
                    exact -= &y;
                    ball = &ball - &yb;
                }
                2 => {
                    exact *= &y;
                    ball = &ball * &yb;
                }
                3 if !y.is_zero() => {
                    exact /= &y;
                    ball = ball.div(&yb).map_err(err)?;
                }
                4 => {
                    let e = rng.gen_range(0..5u32);
                    exact = num_traits::pow(exact, e as usize);
                    ball = ball.pow(e as u64);
                }
                5 => {
                    let poly = IntPoly::from_i64s(&[rng.gen_range(-9..=9), rng.gen_range(-9..=9), rng.gen_range(-9..=9)]);
                    exact = poly.eval_rat(&exact);
                    ball = poly.eval_real(&ball);
                }
                _ => {
                    let sq = &y * &y;
                    exact = sq.clone();
                    ball = RealBall::from_rat(&sq, prec).sqrt().map_err(err)?.sqr();
                }
            }
            if !ball.contains_rat(&exact) {
                return Err(format!("evaluation {i}: enclosure misses the exact value"));
            }
        }
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    let ctx = Ctx::default();
    let f = load_fixture();
    let spec = grid_spec(&f);
    let scans: Vec<SearchOutcome> =
        [1, 4, 8].iter().map(|&t| in_pool(t, || scan(&spec, &ctx))).collect::<std::result::Result<_, _>>().map_err(err)?;
    let json: Vec<String> = scans.iter().map(|o| serde_json::to_string(o).unwrap()).collect();
    ensure(json.iter().all(|j| j == &json[0]), "scan output depends on the thread count")?;
    let doubled = ctx.with_prec(2 * ctx.prec);
    let hi = scan(&spec, &doubled).map_err(err)?;
    ensure(hit_set(&hi) == hit_set(&scans[0]), "hit list changes with doubled precision")?;
    for (a, b) in scans[0].hits.iter().zip(&hi.hits) {
        ensure(a.distance.overlaps(&b.distance) && a.bound.overlaps(&b.bound), format!("contradictory enclosures at ({}, {})", a.n, a.q))?;
    }

    let prods: Vec<Vec<ProductCertificate>> =
        [1, 4, 8].iter().map(|&t| in_pool(t, || products_run(&ctx))).collect::<std::result::Result<_, _>>()?;
    let pj: Vec<String> = prods.iter().map(|c| serde_json::to_string(c).unwrap()).collect();
    ensure(pj.iter().all(|j| j == &pj[0]), "product certificates depend on the thread count")?;
    let hi_prods = products_run(&doubled)?;
    for (a, b) in prods[0].iter().zip(&hi_prods) {
        ensure(a.lower <= b.lower && b.upper <= a.upper && b.lower < b.upper, format!("doubled-precision enclosure at m={} not nested", a.m))?;
    }

    containment_sweep(RANDOM_EVALUATIONS)?;
    Ok(format!("identical across 1/4/8 threads, nested at {} bits, {RANDOM_EVALUATIONS} random evaluations contained", doubled.prec))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("classification corpus", criterion_1),
        ("height identities", criterion_2),
        ("decay and grid scan", criterion_3),
        ("degenerate family exclusion", criterion_4),
        ("product certificates", criterion_5),
        ("partition correctness", criterion_6),
        ("determinism and rigor", criterion_7),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(d) => println!("criterion {} ({name}): PASS [{secs:.2} s] {d}", i + 1),
            Err(d) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL [{secs:.2} s] {d}", i + 1)
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
