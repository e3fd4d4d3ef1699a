//! End-to-end acceptance checks. Prints one line per criterion and exits
//! with a failure status if any criterion fails.

mod common;

use std::process::ExitCode;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use zariski_core::{
    evaluate_curve, flag_green, flag_zariski, golden, green_curve, green_from_sigma, pl_family,
    threshold_psef, zariski_decompose, Divisor, DivisorClass, ExactField, GreenFunction,
    RealDivisorialValuation, SigmaSet, SurfaceLattice,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn zariski_oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5a51);
    let mut lattices = 0;
    let mut classes = 0;
    let mut nontrivial = 0;
    while lattices < 120 {
        let toric = random_toric(&mut rng, 6);
        let lattice = &toric.lattice;
        ensure(lattice.validate().is_valid(), || {
            format!("generated lattice invalid: {:?}", toric.rays)
        })?;
        ensure(lattice.rank() <= 4, || "rank above 4".into())?;
        lattices += 1;
        for _ in 0..3 {
            let theta = random_effective(&mut rng, lattice);
            let answers = brute_force_zariski(lattice, &theta);
            ensure(answers.len() == 1, || {
                format!(
                    "oracle found {} valid subsets for {} on fan {:?}",
                    answers.len(),
                    lattice.format_class(&theta),
                    toric.rays
                )
            })?;
            let expected = &answers[0];
            let z = zariski_decompose(lattice, &theta).map_err(|e| e.to_string())?;
            ensure(z.support() == expected.support, || {
                format!("support mismatch on {}", lattice.format_class(&theta))
            })?;
            let coeffs: Vec<BigRational> =
                expected.support.iter().map(|&i| to_rational(z.negative.coeff(i))).collect();
            ensure(coeffs == expected.coeffs, || "negative part mismatch".into())?;
            ensure(rational_vec(&z.positive) == expected.positive, || {
                "positive part mismatch".into()
            })?;
            classes += 1;
            if !expected.support.is_empty() {
                nontrivial += 1;
            }
        }
    }
    Ok(format!(
        "{lattices} lattices, {classes} classes ({nontrivial} with nonzero negative part), one valid subset each"
    ))
}

/// Re-checks a decomposition using only test-side arithmetic.
fn independent_certificate(
    lattice: &SurfaceLattice<Q>,
    theta: &DivisorClass<Q>,
    positive: &DivisorClass<Q>,
    negative: &Divisor<Q>,
) -> Result<(), String> {
    let gram: Mat = lattice
        .gram()
        .iter()
        .map(|r| r.iter().map(to_rational).collect())
        .collect();
    let dot = |x: &[BigRational], y: &[BigRational]| -> BigRational {
        let mut s = BigRational::zero();
        for i in 0..x.len() {
            for k in 0..y.len() {
                s += &x[i] * &gram[i][k] * &y[k];
            }
        }
        s
    };
    let primes: Vec<Vec<BigRational>> =
        lattice.primes().iter().map(|p| rational_vec(&p.class)).collect();
    let support: Vec<usize> = (0..primes.len())
        .filter(|&i| !negative.coeff(i).is_zero())
        .collect();
    let p = rational_vec(positive);
    let sub: Mat = support
        .iter()
        .map(|&i| support.iter().map(|&k| dot(&primes[i], &primes[k])).collect())
        .collect();
    ensure(support.is_empty() || negative_definite(&sub), || {
        "support Gram not negative definite".into()
    })?;
    ensure(support.iter().all(|&i| dot(&p, &primes[i]).is_zero()), || {
        "P.C != 0 on the support".into()
    })?;
    ensure(support.iter().all(|&i| to_rational(negative.coeff(i)).is_positive()), || {
        "N has a negative coefficient".into()
    })?;
    let generators = match lattice.cone() {
        zariski_core::ConeOracle::Curves { generators, .. } => generators.clone(),
        zariski_core::ConeOracle::Quadric { .. } => unreachable!(),
    };
    ensure(
        generators.iter().all(|g| !dot(&p, &rational_vec(g)).is_negative()),
        || "P is not nef".into(),
    )?;
    let mut sum = p.clone();
    for &i in &support {
        let c = to_rational(negative.coeff(i));
        for (s, x) in sum.iter_mut().zip(&primes[i]) {
            *s += &c * x;
        }
    }
    ensure(sum == rational_vec(theta), || "theta != P + N".into())
}

fn certificate_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xce27);
    let mut checked = 0;
    for _ in 0..100 {
        let toric = random_toric(&mut rng, 6);
        let lattice = &toric.lattice;
        for _ in 0..4 {
            let theta = random_effective(&mut rng, lattice);
            let z = zariski_decompose(lattice, &theta).map_err(|e| e.to_string())?;
            ensure(z.certificate.holds(), || "built-in certificate failed".into())?;
            independent_certificate(lattice, &theta, &z.positive, &z.negative)?;
            checked += 1;
        }
    }
    let bl = golden::blowup_plane::<Q>();
    for c in [[1, 1], [1, 0], [2, -1], [3, 1], [1, 5]] {
        let theta = DivisorClass::from_ints(&c);
        let z = zariski_decompose(&bl, &theta).map_err(|e| e.to_string())?;
        independent_certificate(&bl, &theta, &z.positive, &z.negative)?;
        checked += 1;
    }
    Ok(format!("{checked} decompositions re-verified"))
}

fn abelian_irrationality() -> Outcome {
    let lattice = golden::abelian_surface::<Q>();
    let omega = DivisorClass::from_ints(&[1, 0]);
    let sigma = SigmaSet::new(&lattice, vec![RealDivisorialValuation::ord("E")])
        .map_err(|e| e.to_string())?;
    let g = green_from_sigma(&lattice, &omega, &sigma).map_err(|e| e.to_string())?;
    // (L - tE)^2 = 4 - 12 t + 2 t^2 vanishes at t = 3 -+ sqrt(7)
    let root = q(3) - Q::sqrt_of(7u32);
    let value = q(4) - q(12) * &root + q(2) * &root * &root;
    ensure(value.is_zero(), || "oracle root is wrong".into())?;
    ensure(*g.tau() == root, || format!("tau = {}", g.tau()))?;
    ensure(g.is_rational_pl() == Ok(false), || "classified as rational".into())?;
    ensure(g.breakpoints().len() == 2, || {
        format!("{} breakpoints", g.breakpoints().len())
    })?;
    let e = lattice.prime_index("E").map_err(|e| e.to_string())?;
    let mut expected = vec![q(0); lattice.primes().len()];
    expected[e] = -root.clone();
    ensure(g.divisors()[1] == Divisor::new(expected), || "B_tau != -tau E".into())?;
    for k in 0..10 {
        let t = ratio(k, 4);
        let closed = root.clone() * std::cmp::max(q(0), q(1) - &t);
        let got = g.evaluate_at("E", &t).map_err(|e| e.to_string())?;
        ensure(got == closed, || format!("phi({t} ord_E) = {got}, expected {closed}"))?;
    }
    Ok(format!("tau = {}, rational_PL = false", g.tau()))
}

fn chamber_crossing() -> Outcome {
    let lattice = golden::blowup_plane::<Q>();
    let omega = DivisorClass::from_ints(&[2, -1]);
    let sigma = SigmaSet::new(&lattice, vec![RealDivisorialValuation::ord("C")])
        .map_err(|e| e.to_string())?;
    let g = green_from_sigma(&lattice, &omega, &sigma).map_err(|e| e.to_string())?;
    ensure(g.breakpoints() == [q(0), q(1), q(2)], || {
        format!("breakpoints {:?}", g.breakpoints().iter().map(|x| x.to_string()).collect::<Vec<_>>())
    })?;
    let e = lattice.prime_index("E").map_err(|e| e.to_string())?;
    for k in 0..=8 {
        let lambda = q(1) + ratio(k, 8);
        let n = g.family().value_at(&lambda).map_err(|e| e.to_string())?;
        let mut expected = vec![q(0); lattice.primes().len()];
        expected[e] = lambda.clone() - q(1);
        ensure(n == Divisor::new(expected), || format!("N({lambda}) wrong"))?;
        let theta = omega.add_scaled(&-lambda.clone(), &DivisorClass::from_ints(&[1, -1]));
        let fresh = zariski_decompose(&lattice, &theta).map_err(|e| e.to_string())?;
        ensure(fresh.negative == n, || format!("cross-check at {lambda} failed"))?;
    }
    let checks = [("C", q(1), q(0)), ("C", ratio(1, 2), q(1)), ("E", q(1), q(1))];
    for (d, t, want) in checks {
        let got = g.evaluate_at(d, &t).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("phi({t} ord_{d}) = {got}, expected {want}"))?;
    }
    ensure(*g.tau() == q(2), || "tau != 2".into())?;
    Ok("breakpoints {0, 1, 2}, N = (lambda - 1) E on [1, 2], tau = 2".into())
}

fn cutkosky_flag() -> Outcome {
    let cfg = golden::cutkosky_flag::<Q>();
    let lambda = cfg.lambda_nef_on_s().map_err(|e| e.to_string())?;
    let root = q(3) - Q::sqrt_of(7u32);
    ensure(lambda == root, || format!("lambda = {lambda}"))?;
    ensure(lambda < q(1), || "lambda >= 1".into())?;
    let g = flag_green(&cfg).map_err(|e| e.to_string())?;
    ensure(g.tau() == q(1), || "tau != 1".into())?;
    let eval = |z: i64, s: i64| g.evaluate(&q(z), &q(s)).map_err(|e| e.to_string());
    ensure(eval(1, 1)? == q(0), || "phi(1, 1) != 0".into())?;
    ensure(eval(0, 0)? == q(1), || "phi(0, 0) != 1".into())?;
    ensure(eval(0, 1)? == root, || "phi(0, 1) != 3 - sqrt(7)".into())?;
    ensure(!g.is_rational_pl(), || "classified as rational".into())?;
    Ok(format!("lambda = {lambda}, tau = 1"))
}

fn two_plane_formula() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x2d);
    for _ in 0..20 {
        let a = ratio(rng.gen_range(0..=40), rng.gen_range(1..=7));
        let b = ratio(rng.gen_range(0..=40), rng.gen_range(1..=7));
        let d = flag_zariski(&a, &b).map_err(|e| e.to_string())?;
        ensure(d.negative_s == b && d.positive_theta_nef == a, || {
            format!("N({a}, {b}) = {}", d.negative_s)
        })?;
        let nef = flag_zariski(&a, &q(0)).map_err(|e| e.to_string())?;
        ensure(nef.negative_s.is_zero(), || format!("N({a}, 0) != 0"))?;
    }
    Ok("20 random pairs".into())
}

fn curve_case() -> Outcome {
    let one = golden::curve_degree_one::<Q>();
    let three = golden::curve_degree_three::<Q>();
    for cs in [&one, &three] {
        let inv: Q = cs.points().iter().map(|(_, t)| q(1) / t).sum();
        ensure(cs.a().clone() * inv == *cs.degree(), || "A sum 1/t != deg".into())?;
        let g = green_curve(cs);
        ensure(g.evaluate("fresh", &q(1)).map_err(|e| e.to_string())? == *cs.a(), || {
            "fresh point != A".into()
        })?;
        for (label, t) in cs.points() {
            ensure(evaluate_curve(cs, label, t).map_err(|e| e.to_string())?.is_zero(), || {
                format!("phi(t ord_{label}) != 0 on Sigma")
            })?;
            for k in 0..12 {
                let s = ratio(k, 4);
                let closed = cs.a().clone() * std::cmp::max(q(1) - s.clone() / t, q(0));
                let got = evaluate_curve(cs, label, &s).map_err(|e| e.to_string())?;
                ensure(got == closed, || format!("phi({s} ord_{label}) = {got}"))?;
            }
        }
    }
    let eval = |cs, p: &str, t: Q| evaluate_curve(cs, p, &t).map_err(|e| e.to_string());
    ensure(eval(&one, "p", q(1))? == q(0), || "deg 1 at ord_p".into())?;
    ensure(eval(&one, "p", ratio(1, 2))? == ratio(1, 2), || "deg 1 at ord_p / 2".into())?;
    ensure(eval(&three, "q", ratio(1, 2))? == q(0), || "deg 3 at ord_q / 2".into())?;
    ensure(eval(&three, "q", ratio(1, 4))? == ratio(1, 2), || "deg 3 at ord_q / 4".into())?;
    Ok("degree 1 and degree 3 instances".into())
}

fn random_sigma(rng: &mut ChaCha8Rng, lattice: &SurfaceLattice<Q>) -> SigmaSet<Q> {
    let primes = lattice.primes();
    loop {
        let mut vals = Vec::new();
        for p in primes {
            if rng.gen_bool(0.4) {
                let t = ratio(rng.gen_range(1..=4), rng.gen_range(1..=3));
                vals.push(RealDivisorialValuation::new(p.label.clone(), t).unwrap());
            }
        }
        if !vals.is_empty() {
            return SigmaSet::new(lattice, vals).unwrap();
        }
    }
}

fn leq(x: &Divisor<Q>, y: &Divisor<Q>) -> bool {
    x.coeffs().iter().zip(y.coeffs()).all(|(a, b)| a <= b)
}

fn convexity_concavity(greens: &mut Vec<(SurfaceLattice<Q>, GreenFunction<Q>)>) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0c0);
    let mut trials = 0;
    for _ in 0..120 {
        let toric = random_toric(&mut rng, 6);
        let lattice = toric.lattice;
        let t1 = random_effective(&mut rng, &lattice);
        let t2 = random_effective(&mut rng, &lattice);
        let s = ratio(rng.gen_range(1..=5), 6);
        let n = |x: &DivisorClass<Q>| zariski_decompose(&lattice, x).map(|z| z.negative);
        let (n1, n2) = (n(&t1).unwrap(), n(&t2).unwrap());
        let mix = t1.scale(&s).add_scaled(&(q(1) - &s), &t2);
        let bound = n1.scale(&s).add_scaled(&(q(1) - &s), &n2);
        ensure(leq(&n(&mix).unwrap(), &bound), || "N not convex".into())?;
        ensure(leq(&n(&(&t1 + &t2)).unwrap(), &n1.add_scaled(&q(1), &n2)), || {
            "N not subadditive".into()
        })?;
        ensure(n(&t1.scale(&q(3))).unwrap() == n1.scale(&q(3)), || "N not homogeneous".into())?;
        trials += 1;

        let omega = lattice.ample().clone();
        let sigma = random_sigma(&mut rng, &lattice);
        let g = green_from_sigma(&lattice, &omega, &sigma).map_err(|e| e.to_string())?;
        let tau = g.tau().clone();
        let pick = |rng: &mut ChaCha8Rng| tau.clone() * ratio(rng.gen_range(0..=12), 12);
        let (mut l1, mut l2) = (pick(&mut rng), pick(&mut rng));
        if l1 > l2 {
            std::mem::swap(&mut l1, &mut l2);
        }
        let mid = (l1.clone() + &l2) * ratio(1, 2);
        let b = |l: &Q| g.slice(l).unwrap();
        let (b1, b2, bm) = (b(&l1), b(&l2), b(&mid));
        ensure(leq(&b1.scale(&ratio(1, 2)).add_scaled(&ratio(1, 2), &b2), &bm), || {
            "B_lambda not concave".into()
        })?;
        ensure(leq(&b2, &b1), || "B_lambda not decreasing".into())?;
        // the slice agrees with a fresh decomposition
        let d = lattice.class_of(sigma.divisor());
        let fresh = n(&omega.add_scaled(&-mid.clone(), &d)).unwrap();
        let expected = fresh.add_scaled(&mid, sigma.divisor()).scale(&q(-1));
        ensure(bm == expected, || "slice disagrees with direct decomposition".into())?;
        trials += 1;
        greens.push((lattice, g));
    }
    Ok(format!("{trials} random trials"))
}

fn normalization(greens: &[(SurfaceLattice<Q>, GreenFunction<Q>)]) -> Outcome {
    let mut count = 0;
    let grid: Vec<Q> = [0, 1, 2, 3, 4, 6, 8, 12, 20].iter().map(|&k| ratio(k, 4)).collect();
    for (lattice, g) in greens {
        for v in g.sigma().valuations() {
            let value = g.evaluate(v).map_err(|e| e.to_string())?;
            ensure(value.is_zero(), || format!("phi(v) = {value} on Sigma"))?;
        }
        let mut sup = q(0);
        for p in lattice.primes() {
            for t in &grid {
                let value = g.evaluate_at(&p.label, t).map_err(|e| e.to_string())?;
                ensure(!value.is_sign_negative(), || format!("phi < 0 at {t} ord_{}", p.label))?;
                sup = std::cmp::max(sup, value.clone());
                // interior slices never beat the breakpoint maximum
                for seg in &g.family().segments {
                    let mid = (seg.start.clone() + &seg.end) * ratio(1, 2);
                    let b = g.slice(&mid).map_err(|e| e.to_string())?;
                    let p_idx = lattice.prime_index(&p.label).map_err(|e| e.to_string())?;
                    let inner = t.clone() * b.coeff(p_idx) + &mid;
                    ensure(inner <= value, || format!("midpoint {mid} exceeds phi"))?;
                }
            }
        }
        let omega = g.family().omega.clone();
        let d = lattice.class_of(g.sigma().divisor());
        let threshold = threshold_psef(lattice, &omega, &d).map_err(|e| e.to_string())?;
        ensure(sup == *g.tau() && threshold == *g.tau(), || {
            format!("sup {sup}, tau {}, threshold {threshold}", g.tau())
        })?;
        let family = pl_family(lattice, &omega, &d).map_err(|e| e.to_string())?;
        ensure(family.lambda_psef == threshold, || "family range mismatch".into())?;
        count += 1;
    }
    Ok(format!("{count} Green's functions"))
}

fn golden_greens() -> Vec<(SurfaceLattice<Q>, GreenFunction<Q>)> {
    let mut out = Vec::new();
    let bl = golden::blowup_plane::<Q>();
    let sigma = SigmaSet::new(&bl, vec![RealDivisorialValuation::ord("C")]).unwrap();
    let g = green_from_sigma(&bl, &DivisorClass::from_ints(&[2, -1]), &sigma).unwrap();
    out.push((bl, g));
    let ab = golden::abelian_surface::<Q>();
    let sigma = SigmaSet::new(&ab, vec![RealDivisorialValuation::ord("E")]).unwrap();
    let g = green_from_sigma(&ab, &DivisorClass::from_ints(&[1, 0]), &sigma).unwrap();
    out.push((ab, g));
    out
}

fn main() -> ExitCode {
    let mut greens = golden_greens();
    let results: Vec<(&str, Outcome)> = vec![
        ("zariski oracle equivalence", zariski_oracle_equivalence()),
        ("certificate suite", certificate_suite()),
        ("abelian surface irrationality", abelian_irrationality()),
        ("chamber crossing", chamber_crossing()),
        ("cutkosky flag", cutkosky_flag()),
        ("two-plane decomposition", two_plane_formula()),
        ("curve case", curve_case()),
        ("convexity and concavity", convexity_concavity(&mut greens)),
        ("normalization", normalization(&greens)),
    ];
    let mut failed = 0;
    for (i, (name, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("criterion {} [{name}]: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} [{name}]: FAIL ({why})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
