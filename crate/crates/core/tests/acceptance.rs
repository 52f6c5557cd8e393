//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on
//! any failure. Runs without the libtest harness.

mod common;

use std::time::{Duration, Instant};

use common::*;
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::SeedableRng;

use wigreg_core::algebra::{rat, MultiPoly};
use wigreg_core::classify::{injectivity_quadratic, verify_certificate, Certificate, Grade, Side, Status};
use wigreg_core::pipeline::{certify, Report};
use wigreg_core::symbol::{build_b_symbol, t_conjugate, verify_degeneracy, weyl_wick, weyl_wick_inverse, LinearChange};
use wigreg_core::wigner::{
    hermite_fn, intertwine_residual, wick_energy_compare, wig_forward, wig_inverse, AnalyticTestFunction, CheckMode,
    Grid2D, GridFunction2D,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn grid() -> Grid2D {
    Grid2D::new(12.0, 256).unwrap()
}

fn h(n: u32) -> AnalyticTestFunction {
    AnalyticTestFunction::Hermite(n)
}

fn wick_inversion() -> Outcome {
    let mut rng = StdRng::seed_from_u64(1);
    for i in 0..200 {
        let a = rand_poly(&mut rng, 8);
        check(weyl_wick_inverse(&weyl_wick(&a)) == a, || format!("W⁻¹W ≠ id on sample {i}: {a}"))?;
        check(weyl_wick(&weyl_wick_inverse(&a)) == a, || format!("WW⁻¹ ≠ id on sample {i}: {a}"))?;
    }
    Ok("200 polynomials of degree ≤ 8".into())
}

fn degeneracy() -> Outcome {
    let mut rng = StdRng::seed_from_u64(2);
    for i in 0..200 {
        let spec = rand_spec(&mut rng, 4);
        let d = verify_degeneracy(&spec);
        check(d.holds, || format!("sample {i}: residual {}", d.residual))?;
        check(d.expected == atilde_oracle_xy(&spec), || format!("sample {i}: ã disagrees with oracle"))?;
    }
    Ok("200 specs of order ≤ 4".into())
}

fn twisted_laplacian() -> Outcome {
    let spec = twisted_spec();
    let t = LinearChange::diag(rat(1, 4), rat(1, 1)).unwrap();
    let got = t_conjugate(&build_b_symbol(&spec), &t);
    let want: MultiPoly = "(eta - 1/2*x)^2 + (xi + 1/2*y)^2".parse().unwrap();
    check(got == want, || format!("conjugated symbol {got}"))?;
    let r = certify(&spec);
    check(r.verdict.status == Status::Regular && r.grade == Grade::Exact, || {
        format!("verdict {:?} ({:?})", r.verdict.status, r.grade)
    })?;
    Ok("conjugated symbol exact, Regular (exact)".into())
}

fn intertwining() -> Outcome {
    let specs = [
        ("twisted", twisted_spec()),
        ("xD", mixed_spec()),
        ("family h=k=2", family_spec(&family(1, 1, 1, 1, 2, 2, 1, 1))),
        ("D + ix", first_order_spec(1)),
    ];
    let pairs = [(0, 0), (0, 1), (2, 1)];
    let mut worst = 0.0f64;
    for (name, spec) in &specs {
        for p in [rat(0, 1), rat(1, 2), rat(1, 1)] {
            let spec = spec.with_p(p.clone());
            for (m, n) in pairs {
                let r = intertwine_residual(&spec, &h(m), &h(n), grid(), CheckMode::Full).map_err(|e| e.to_string())?;
                let res = r.max_residual();
                worst = worst.max(res);
                check(res <= 1e-6, || format!("{name}, p={p}, h{m}⊗h{n}: residual {res:.3e}"))?;
            }
        }
    }
    Ok(format!("36 cases, max residual {worst:.2e}"))
}

fn closed_forms() -> Outcome {
    let g = grid();
    let w = wig_forward(&h(0), &h(0), 0.5, g).map_err(|e| e.to_string())?;
    let want = GridFunction2D::from_fn(g, w.axis_y, |x, y| {
        Complex64::new((2.0 / std::f64::consts::PI).sqrt() * (-x * x - y * y).exp(), 0.0)
    });
    let e1 = w.sup_distance(&want);
    let w = wig_forward(&h(0), &h(0), 1.0, g).map_err(|e| e.to_string())?;
    let want = GridFunction2D::from_fn(g, w.axis_y, |x, y| {
        hermite_fn(0, x) * hermite_fn(0, y) * Complex64::new(0.0, -x * y).exp()
    });
    let e2 = w.sup_distance(&want);
    check(e1 <= 1e-8 && e2 <= 1e-8, || format!("errors {e1:.3e}, {e2:.3e}"))?;
    Ok(format!("sup errors {e1:.2e} (p=1/2), {e2:.2e} (p=1)"))
}

fn round_trip() -> Outcome {
    let g = grid();
    let mut errs = Vec::new();
    for (p, tol) in [(0.5, 1e-6), (1.0, 1e-8)] {
        let w = wig_forward(&h(0), &h(1), p, g).map_err(|e| e.to_string())?;
        let back = wig_inverse(&w, p).map_err(|e| e.to_string())?;
        let want =
            GridFunction2D::from_fn(g, back.axis_y, |s, t| Complex64::new(hermite_fn(0, s) * hermite_fn(1, t), 0.0));
        let err = back.sup_distance(&want);
        check(err <= tol, || format!("p={p}: error {err:.3e} > {tol:.0e}"))?;
        errs.push(err);
    }
    Ok(format!("sup errors {:.2e} (p=1/2), {:.2e} (p=1)", errs[0], errs[1]))
}

fn wick_consistency() -> Outcome {
    let mut worst = 0.0f64;
    for (a, want) in [("1", 1.0), ("x^2", 0.5), ("x^2 + xi^2", 1.0)] {
        let e = wick_energy_compare(&a.parse().unwrap(), &h(0), grid()).map_err(|e| e.to_string())?;
        check((e.direct - want).abs() < 1e-10, || format!("{a}: direct {} ≠ {want}", e.direct))?;
        check((e.wick - want).abs() <= 1e-4, || format!("{a}: anti-Wick {} ≠ {want}", e.wick))?;
        check(e.gap <= 1e-4, || format!("{a}: gap {:.3e}", e.gap))?;
        worst = worst.max(e.gap);
    }
    Ok(format!("max gap {worst:.2e}"))
}

fn verdict_fixtures() -> Outcome {
    let r = certify(&first_order_spec(-1));
    check(r.verdict.status == Status::NotRegular, || format!("α=−i: {:?}", r.verdict.status))?;
    check(r.verdict.witness.as_deref() == Some("exp(-1/2*x^2)"), || format!("α=−i witness {:?}", r.verdict.witness))?;

    let r = certify(&first_order_spec(1));
    check(r.verdict.status == Status::Regular, || format!("α=i: {:?}", r.verdict.status))?;
    let adjoint_kernel = matches!(r.adjoint, Some(Certificate::NotInjectiveWitness { side: Side::Adjoint, .. }));
    check(adjoint_kernel, || format!("α=i adjoint analysis {:?}", r.adjoint))?;

    let r = certify(&family_spec(&family(1, 1, 1, 1, 3, 3, 1, 1)));
    check(r.verdict.status == Status::Unknown, || format!("h=k=3: {:?}", r.verdict.status))?;
    Ok("α=−i NotRegular with Gaussian kernel, α=i adjoint kernel, h=k=3 Unknown".into())
}

fn verify_report(r: &Report, a: &MultiPoly) -> Result<usize, String> {
    let mut n = 0;
    let adjoint = r.adjoint.iter();
    for c in r.hypo_attempts.iter().chain(&r.injectivity_attempts).map(|a| &a.certificate).chain(adjoint) {
        verify_certificate(c, a).map_err(|e| format!("{} rejected: {e}", c.kind()))?;
        n += 1;
    }
    Ok(n)
}

fn soundness() -> Outcome {
    let mut rng = StdRng::seed_from_u64(9);
    let mut specs = vec![
        twisted_spec(),
        mixed_spec(),
        first_order_spec(1),
        first_order_spec(-1),
        family_spec(&family(1, 1, 1, 1, 1, 1, 1, 1)),
        family_spec(&family(1, 1, 1, 1, 2, 2, 1, 1)),
        family_spec(&family(1, 1, 1, 1, 3, 3, 1, 1)),
    ];
    for _ in 0..20 {
        specs.push(rand_spec(&mut rng, 3));
    }
    let mut checked = 0;
    for spec in &specs {
        checked += verify_report(&certify(spec), &spec.symbol_a())?;
    }
    let (mut agree, mut certified) = (0, 0);
    for i in 0..100 {
        let c = rand_quadratic_admissible(&mut rng);
        let cert = injectivity_quadratic(&c);
        let lib = matches!(cert, Certificate::InjQuadraticEstimate { .. });
        if lib {
            certified += 1;
            verify_certificate(&cert, &c.to_symbol()).map_err(|e| format!("tuple {i}: {e}"))?;
            checked += 1;
        }
        let oracle = quadratic_oracle_feasible(&c);
        check(lib == oracle, || format!("tuple {i} {c:?}: library {lib}, oracle {oracle}"))?;
        agree += 1;
    }
    Ok(format!("{checked} certificates verified; oracle agreement {agree}/100 ({certified} certified)"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("exact Weyl-Wick inversion", Duration::from_secs(5), wick_inversion),
        ("exact degeneracy identity", Duration::from_secs(10), degeneracy),
        ("twisted laplacian chain", Duration::from_secs(1), twisted_laplacian),
        ("intertwining residuals", Duration::from_secs(60), intertwining),
        ("closed-form transforms", Duration::from_secs(5), closed_forms),
        ("inverse round trip", Duration::from_secs(5), round_trip),
        ("anti-Wick consistency", Duration::from_secs(10), wick_consistency),
        ("verdict fixtures", Duration::from_secs(1), verdict_fixtures),
        ("certificate soundness", Duration::from_secs(30), soundness),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > *budget => Err(format!("{detail}; took {elapsed:.2?}, budget {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS criterion {} {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {} {name}: {why} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
