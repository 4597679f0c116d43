//! Acceptance suite: one line per criterion, nonzero exit if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use poisson_forge::cp3::{
    chart_pushforward_cp3, euler_rank, is_poisson_cp3, pointwise_vanishes_cp3_mvec, sample_grid, Method,
};
use poisson_forge::fixtures::{fixture, parse_chart_text, Source, FIXTURES};
use poisson_forge::foliation::{bivector_of_form, contract_to_form, pencil_form};
use poisson_forge::hp1::{hp1_chart_pushforward, is_poisson_hp1, pointwise_vanishes_hp1, realify};
use poisson_forge::multivector::euler_field;
use poisson_forge::{matrix_form_bracket, MVec, Poly, Scalar, Tensor, Tensor2, Tensor3};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn t2(m: &MVec) -> Tensor2 {
    Tensor2::from_mvec(m).expect("quadratic holomorphic bivector")
}

fn bracket_tensor(a: &Tensor2, b: &Tensor2) -> Tensor3 {
    Tensor3::from_mvec(&MVec::schouten(&a.to_mvec(), &b.to_mvec()).unwrap()).unwrap()
}

fn criterion_1() -> Outcome {
    let mut slowest = Duration::ZERO;
    for name in ["ex3.5.1", "ex3.5.2", "ex3.5.3", "ex3.5.4", "ex3.5.5", "ex3.5.6"] {
        let start = Instant::now();
        let t = fixture(name).unwrap().tensor().unwrap();
        let q = is_poisson_cp3(&t, Method::Quotient);
        let c = is_poisson_cp3(&t, Method::Charts);
        ensure(q.poisson && c.poisson && q.nontrivial, || format!("{name}: {q:?} / charts {c:?}"))?;
        slowest = slowest.max(start.elapsed());
    }
    for name in ["ex4.7.2", "ex4.7.3", "ex4.7.4"] {
        let start = Instant::now();
        let v = is_poisson_hp1(&fixture(name).unwrap().tensor().unwrap());
        ensure(v.poisson, || format!("{name}: {v:?}"))?;
        slowest = slowest.max(start.elapsed());
    }
    ensure(slowest < Duration::from_secs(1), || format!("slowest fixture took {slowest:?}"))?;
    Ok(format!("9 fixtures, slowest {} ms", slowest.as_millis()))
}

fn criterion_2() -> Outcome {
    for (name, golden) in [
        ("ex3.5.1", "zeta2*dzeta1/\\dzeta3"),
        (
            "ex3.5.2",
            "-zeta3*(1+zeta1^2)*dzeta1/\\dzeta2 - zeta2*(1+zeta1^2)*dzeta3/\\dzeta1 \
             + zeta1*(zeta2^2+zeta3^2)*dzeta2/\\dzeta3",
        ),
    ] {
        let chart = chart_pushforward_cp3(&fixture(name).unwrap().tensor().unwrap(), 0).unwrap();
        let expected = parse_chart_text(golden).unwrap();
        ensure(chart.field == expected, || format!("{name}: got {}", chart.render()))?;
    }
    Ok("U0 charts of ex3.5.1 and ex3.5.2 match".into())
}

fn criterion_3() -> Outcome {
    let mut r = common::rng(3);
    let scalings = fixture("ex3.5.4").unwrap().members().unwrap();
    for _ in 0..20 {
        let a: Vec<Scalar> = (0..3).map(|_| common::nonzero_rational(&mut r)).collect();
        let w = (0..3).fold(MVec::zero(2), |acc, k| &acc + &scalings[k].scale(&a[k]));
        let t = t2(&w);
        let q = is_poisson_cp3(&t, Method::Quotient);
        let c = is_poisson_cp3(&t, Method::Charts);
        ensure(q.poisson && c.poisson && q.nontrivial, || format!("ex3.5.4 {a:?}: {q:?}"))?;
    }
    let fx = fixture("ex4.7.1").unwrap();
    let members = fx.members().unwrap();
    let lifts = fx.real_members().unwrap();
    let grid = sample_grid();
    for _ in 0..20 {
        let a: Vec<Scalar> = (0..3).map(|_| common::nonzero_rational(&mut r)).collect();
        let w = (0..3).fold(MVec::zero(2), |acc, k| &acc + &members[k].scale(&a[k]));
        let v = is_poisson_hp1(&t2(&w));
        ensure(v.poisson && v.nontrivial, || format!("ex4.7.1 {a:?}: {v:?}"))?;
        let lift = (0..3).fold(MVec::zero(2), |acc, k| &acc + &lifts[k].scale(&a[k]));
        for m in 0..2 {
            let chart = hp1_chart_pushforward(&lift, m).unwrap();
            ensure(chart.schouten(&chart).unwrap().is_zero(), || {
                format!("ex4.7.1 {a:?}: wedge lift not Poisson on V{m}")
            })?;
        }
        let witness = grid.iter().find(|p| !pointwise_vanishes_hp1(&lift, p).unwrap());
        ensure(witness.is_some(), || format!("ex4.7.1 {a:?}: lift vanishes on the grid"))?;
    }
    Ok("20 + 20 random triples Poisson; every ex4.7.1 member nonzero at a grid point".into())
}

fn criterion_4() -> Outcome {
    let z = Poly::z;
    let theta = &MVec::term(z(2).pow(2), &[0, 1]) + &MVec::term(z(0).pow(2), &[2, 3]);
    let t = t2(&theta);
    let q = is_poisson_cp3(&t, Method::Quotient);
    let c = is_poisson_cp3(&t, Method::Charts);
    ensure(!q.poisson && !c.poisson, || format!("accepted: {q:?} / {c:?}"))?;
    let b = MVec::schouten(&theta, &theta).unwrap();
    let p = [Scalar::from(1), Scalar::from(1), Scalar::from(1), Scalar::from(0)];
    let at_p = &MVec::term(Poly::constant(Scalar::from(-4)), &[1, 2, 3])
        + &MVec::term(Poly::constant(Scalar::from(-4)), &[0, 1, 3]);
    ensure(b.evaluate_at(&p) == at_p, || format!("bracket at (1,1,1,0) is {}", b.evaluate_at(&p)))?;
    ensure(!pointwise_vanishes_cp3_mvec(&b, &p).unwrap(), || "bracket vanishes at (1,1,1,0)".into())?;
    Ok("rejected by both methods; bracket at (1,1,1,0) = -4 d1/\\d2/\\d3 - 4 d0/\\d1/\\d3, nonzero mod l".into())
}

fn criterion_5() -> Outcome {
    let mut r = common::rng(5);
    let mut inputs: Vec<(String, Tensor2)> = Vec::new();
    for fx in FIXTURES {
        inputs.push((fx.name.into(), fx.tensor().unwrap()));
        for (k, m) in fx.members().unwrap().iter().enumerate() {
            inputs.push((format!("{} member {k}", fx.name), t2(m)));
        }
    }
    let fixture_count = inputs.len();
    for k in 0..100 {
        let t = match k % 4 {
            0 | 1 => common::tensor::<2>(&mut r, 11),
            2 => {
                // commuting diagonal fields, shifted by a vertical term
                let diag = |r: &mut rand_chacha::ChaCha8Rng| {
                    (0..4).fold(MVec::zero(1), |acc, i| {
                        &acc + &MVec::term(Poly::z(i).scale(&common::scalar(r)), &[i])
                    })
                };
                let (x, y) = (diag(&mut r), diag(&mut r));
                let u = common::linear_vector(&mut r, 2);
                t2(&(&x.wedge(&y) + &u.wedge(&euler_field())))
            }
            _ => {
                let om = pencil_form(&common::real_quadric(&mut r), &common::real_quadric(&mut r)).unwrap();
                t2(&bivector_of_form(&om).unwrap())
            }
        };
        inputs.push((format!("random {k}"), t));
    }
    let mut poisson = 0;
    for (name, t) in &inputs {
        let q = is_poisson_cp3(t, Method::Quotient);
        let c = is_poisson_cp3(t, Method::Charts);
        ensure(q == c, || format!("{name}: quotient {q:?} vs charts {c:?}"))?;
        poisson += q.poisson as usize;
    }

    let mut k_const: Option<Scalar> = None;
    for _ in 0..100 {
        let a: Tensor2 = common::tensor(&mut r, 7);
        let b: Tensor2 = common::tensor(&mut r, 7);
        let axiomatic = bracket_tensor(&a, &b);
        let matrix = matrix_form_bracket(&a, &b);
        if axiomatic.is_zero() {
            ensure(matrix.is_zero(), || "matrix bracket nonzero where Schouten vanishes".into())?;
            continue;
        }
        let k = match &k_const {
            Some(k) => k.clone(),
            None => {
                let (i, x) = axiomatic.as_slice().iter().enumerate().find(|(_, x)| **x != Scalar::from(0)).unwrap();
                let k = &matrix.as_slice()[i] / x;
                k_const = Some(k.clone());
                k
            }
        };
        ensure(matrix == axiomatic.scale(&k), || format!("ratio differs from K = {k}"))?;
    }
    Ok(format!(
        "{} inputs agree ({fixture_count} from fixtures, {poisson} Poisson); K = {}",
        inputs.len(),
        k_const.map(|k| k.to_string()).unwrap_or_else(|| "undetermined".into())
    ))
}

fn criterion_6() -> Outcome {
    let (e2, e3) = (euler_rank::<2>(), euler_rank::<3>());
    let (q2, q3) = (Tensor2::dim() - e2, Tensor3::dim() - e3);
    ensure((e2, e3, q2, q3) == (15, 45, 45, 35), || format!("ranks {e2}, {e3}; quotients {q2}, {q3}"))?;
    Ok("Euler ranks 15, 45; quotient dimensions 45, 35".into())
}

fn phi_squared<const Q: usize>(r: &mut rand_chacha::ChaCha8Rng, n: usize) -> Result<(), String> {
    for _ in 0..n {
        let t: Tensor<Q> = common::tensor(r, 19);
        ensure(t.phi().phi() == t, || format!("phi^2 != id on grade {Q}"))?;
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    let mut r = common::rng(7);
    phi_squared::<1>(&mut r, 1000)?;
    phi_squared::<2>(&mut r, 1000)?;
    phi_squared::<3>(&mut r, 1000)?;
    for _ in 0..100 {
        let a: Tensor2 = common::tensor(&mut r, 7);
        let b: Tensor2 = common::tensor(&mut r, 7);
        ensure(bracket_tensor(&a.phi(), &b.phi()) == bracket_tensor(&a, &b).phi(), || {
            "bracket does not commute with phi".into()
        })?;
    }
    let mut fixed = 0;
    for k in 0..200 {
        let t = if k % 2 == 0 {
            common::phi_fixed_tensor2(&mut r, 9)
        } else {
            common::tensor(&mut r, 9)
        };
        ensure(t.hstar_invariant() == t.is_phi_fixed(), || format!("mismatch on {t:?}"))?;
        fixed += t.is_phi_fixed() as usize;
    }
    Ok(format!("phi^2 = id on 3000 tensors; 100 bracket pairs; 200 hstar checks ({fixed} fixed)"))
}

fn criterion_8() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = Vec::new();
    for fx in FIXTURES {
        let mut targets: Vec<(String, Tensor2)> = vec![(fx.name.into(), fx.tensor().unwrap())];
        if let Source::Family { real_lift: true, .. } = fx.source {
            for (k, m) in fx.members().unwrap().iter().enumerate() {
                targets.push((format!("{} member {k}", fx.name), t2(m)));
            }
        }
        for (name, t) in targets {
            if !is_poisson_hp1(&t).poisson {
                continue;
            }
            let real = realify(&t).unwrap();
            let bad: Vec<String> = (0..2)
                .filter(|&m| {
                    let c = hp1_chart_pushforward(real.field(), m).unwrap();
                    !c.schouten(&c).unwrap().is_zero()
                })
                .map(|m| format!("V{m}"))
                .collect();
            if bad.is_empty() {
                checked.push(name);
            } else {
                failures.push(format!("{name} ({})", bad.join(", ")));
            }
        }
    }
    if failures.is_empty() {
        Ok(format!("realified brackets vanish on V0 and V1 for {}", checked.join(", ")))
    } else {
        Err(format!(
            "realified bracket nonzero for {}; vanishes for {}",
            failures.join(", "),
            checked.join(", ")
        ))
    }
}

fn criterion_9() -> Outcome {
    let mut c: Option<Scalar> = None;
    for name in ["ex3.5.5", "ex3.5.6", "ex4.7.2", "ex4.7.3", "ex4.7.4"] {
        let fx = fixture(name).unwrap();
        let omega = fx.form().unwrap().unwrap();
        let back = contract_to_form(&bivector_of_form(&omega).unwrap()).unwrap();
        let (d, b) = (0..4)
            .flat_map(|i| omega.f[i].terms().map(move |(m, x)| (i, *m, x.clone())))
            .next()
            .map(|(i, m, x)| (x, back.f[i].coeff(&m)))
            .unwrap();
        let k = c.get_or_insert_with(|| &b / &d).clone();
        ensure(back == omega.scale(&k), || format!("{name}: contraction gives {back}"))?;
        let w = fx.bivector().unwrap();
        let again = bivector_of_form(&contract_to_form(&w).unwrap()).unwrap();
        let diff = t2(&(&again - &w));
        ensure(poisson_forge::cp3::mod_euler_reduce(&diff).is_zero, || {
            format!("{name}: round trip differs from the bivector beyond the Euler subspace")
        })?;
    }
    let mut r = common::rng(9);
    let mut nontrivial = 0;
    for _ in 0..50 {
        let (f, g) = (common::real_quadric(&mut r), common::real_quadric(&mut r));
        let w = bivector_of_form(&pencil_form(&f, &g).unwrap()).unwrap();
        let v = is_poisson_hp1(&t2(&w));
        ensure(v.poisson, || format!("pencil {f} / {g}: {v:?}"))?;
        nontrivial += v.nontrivial as usize;
    }
    Ok(format!(
        "c = {} on 5 examples; 50 pencils Poisson on HP1 ({nontrivial} nontrivial)",
        c.unwrap()
    ))
}

fn criterion_10() -> Outcome {
    let mut r = common::rng(10);
    let s = Scalar::sign;
    let br = |a: &MVec, b: &MVec| MVec::schouten(a, b).unwrap();
    for _ in 0..40 {
        let a = common::mvec_low(&mut r, 2);
        let b = common::mvec_low(&mut r, 2);
        let c = common::mvec_low(&mut r, 2);
        let (ga, gb) = (a.grade(), b.grade());
        let lhs = br(&a, &br(&b, &c));
        let rhs = &br(&br(&a, &b), &c) + &br(&b, &br(&a, &c)).scale(&s((ga - 1) * (gb - 1)));
        ensure(lhs == rhs, || "Jacobi".into())?;
        ensure(br(&a, &b) == br(&b, &a).scale(&-s((ga - 1) * (gb - 1))), || "antisymmetry".into())?;
    }
    for _ in 0..40 {
        let x = common::mvec(&mut r, 1, 3);
        let b = common::mvec_low(&mut r, 2);
        let c = common::mvec_low(&mut r, 2);
        let lhs = br(&x, &b.wedge(&c));
        let rhs = &br(&x, &b).wedge(&c) + &b.wedge(&br(&x, &c));
        ensure(lhs == rhs, || "Leibniz".into())?;
    }
    for _ in 0..40 {
        let v: Vec<MVec> = (0..4).map(|_| common::linear_vector(&mut r, 3)).collect();
        let (x, y, xp, yp) = (&v[0], &v[1], &v[2], &v[3]);
        let lie = |a: &MVec, b: &MVec| MVec::lie_bracket(a, b).unwrap();
        let four = &(&lie(x, xp).wedge(y).wedge(yp) - &lie(x, yp).wedge(y).wedge(xp))
            - &(&lie(y, xp).wedge(x).wedge(yp) - &lie(y, yp).wedge(x).wedge(xp));
        ensure(br(&x.wedge(y), &xp.wedge(yp)) == four, || "decomposable identity".into())?;
        let self_br = lie(x, y).wedge(x).wedge(y).scale(&Scalar::from(2));
        ensure(br(&x.wedge(y), &x.wedge(y)) == self_br, || "self-bracket identity".into())?;
    }
    for _ in 0..100 {
        let w = common::tensor::<2>(&mut r, 14).to_mvec();
        let om = contract_to_form(&w).unwrap();
        ensure(om.euler_pairing().is_zero(), || format!("Euler pairing of {om}"))?;
    }
    Ok("40 Jacobi/antisymmetry, 40 Leibniz, 40 decomposable, 100 Euler pairing".into())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("fixture verdicts", criterion_1),
        ("chart goldens", criterion_2),
        ("family claims", criterion_3),
        ("negative control", criterion_4),
        ("oracle equivalence", criterion_5),
        ("quotient ranks", criterion_6),
        ("real structure", criterion_7),
        ("quaternionic chart brackets of realified bivectors", criterion_8),
        ("foliation round trips", criterion_9),
        ("property suites", criterion_10),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (k, (title, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let ms = t.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {:2} PASS {title} [{ms} ms]: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:2} FAIL {title} [{ms} ms]: {detail}", k + 1);
            }
        }
    }
    let total = start.elapsed();
    println!(
        "acceptance: {}/{} criteria pass in {:.1} s",
        criteria.len() - failed,
        criteria.len(),
        total.as_secs_f64()
    );
    if total > Duration::from_secs(60) {
        println!("acceptance: FAIL suite exceeded one minute");
        failed += 1;
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
