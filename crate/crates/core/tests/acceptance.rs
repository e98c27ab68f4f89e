//! Acceptance suite: one pass/fail line per criterion, each with its exact
//! tolerance and wall-clock budget. Run with
//! `cargo test -p ggmorse-core --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use ggmorse_core::annex::{
    lattice_sum_asymptotic_check, remark_identity_check, WeightSpec, DEFAULT_TOLERANCE,
};
use ggmorse_core::arith::{rat, rat_int, Rational};
use ggmorse_core::bounds::{d_epsilon, monomial_bound, specialised_bound, theorem_bounds};
use ggmorse_core::verify::{
    all_passed, annex_suite, coeffs_suite, fujiwara_suite, lemmas_suite, morse_suite,
    whitney_suite, AnnexSchedule, WhitneyGrid,
};
use ggmorse_core::{bounds_report, check_lemma_chain, morse_polynomial, JetParams};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn run(id: u32, title: &str, budget: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let elapsed = start.elapsed();
    let in_time = elapsed < budget;
    let ok = out.passed && in_time;
    println!(
        "[{}] criterion {id}: {title} ({:.2?} / budget {:.0?}) {}",
        if ok { "PASS" } else { "FAIL" },
        elapsed,
        budget,
        if in_time {
            out.detail
        } else {
            format!("{} -- over time budget", out.detail)
        }
    );
    ok
}

fn criterion_1() -> Outcome {
    let params = JetParams::new(2, 2, rat(13, 1)).unwrap();
    let report = bounds_report(&params).unwrap();
    let mp = morse_polynomial(&params).unwrap();
    let expected = rat(2, 1) * d_epsilon(&rat(13, 1)) * rat(16, 1);
    let p1225 = mp.evaluate(1225);
    let ok = report.threshold_2m == rat(1224, 1)
        && expected == rat(1224, 1)
        && p1225 > Rational::from_integer(0.into());
    outcome(
        ok,
        format!("2M = {}, P(2, 1225, 13) = {}", report.threshold_2m, p1225),
    )
}

fn criterion_2() -> Outcome {
    let mut ok = true;
    let mut rows = Vec::new();
    for n in 2..=6usize {
        let b = theorem_bounds(n).unwrap();
        let expect_mono = rat(153, 4) * rat_int((n as i64).pow(5));
        let expect_kob = rat(153, 4) * rat_int((2 * n as i64 - 1).pow(5));
        ok &= b.monomial == expect_mono
            && b.monomial >= specialised_bound(n)
            && b.kobayashi == expect_kob
            && b.kobayashi == monomial_bound(2 * n - 1);
        rows.push(format!("n={n}: {} / {}", b.monomial, b.kobayashi));
    }
    outcome(ok, rows.join(", "))
}

fn criterion_3() -> Outcome {
    let cases: Vec<(usize, usize, Rational)> = (2..=5usize)
        .flat_map(|n| [rat(1, 1), rat_int(5 * n as i64 + 3), rat(40, 1)].map(|e| (n, n, e)))
        .collect();
    let lines = morse_suite(&cases).unwrap();
    let failed: Vec<String> = lines
        .iter()
        .filter(|l| !l.passed)
        .map(|l| l.name.clone())
        .collect();
    outcome(
        failed.is_empty(),
        format!("{} exact identities, failures: {failed:?}", lines.len()),
    )
}

fn criterion_4() -> Outcome {
    let ns: Vec<usize> = (2..=8).collect();
    let lines = lemmas_suite(&ns, None).unwrap();
    let direct = ns.iter().all(|&n| {
        check_lemma_chain(&JetParams::headline(n).unwrap())
            .unwrap()
            .all()
    });
    let failed: Vec<String> = lines
        .iter()
        .filter(|l| !l.passed)
        .map(|l| l.name.clone())
        .collect();
    outcome(
        failed.is_empty() && direct && lines.len() == 7 * ns.len(),
        format!(
            "{} inequalities for n = 2..8, failures: {failed:?}",
            lines.len()
        ),
    )
}

fn criterion_5() -> Outcome {
    let pairs: Vec<(usize, usize)> = (1..=3).flat_map(|n| (1..=3).map(move |k| (n, k))).collect();
    let lines = coeffs_suite(&pairs).unwrap();
    outcome(
        all_passed(&lines),
        format!("{} coefficient comparisons", lines.len()),
    )
}

fn criterion_6() -> Outcome {
    let lines = whitney_suite(&WhitneyGrid::default()).unwrap();
    let detail = lines
        .iter()
        .map(|l| format!("{}: {}", l.name, l.detail))
        .collect::<Vec<_>>()
        .join("; ");
    outcome(all_passed(&lines), detail)
}

fn criterion_7() -> Outcome {
    let schedule = AnnexSchedule::default();
    let lines = annex_suite(&schedule).unwrap();
    // the spec's own convergence examples, on top of the default schedule
    let tol = rat(DEFAULT_TOLERANCE.0, DEFAULT_TOLERANCE.1);
    let two_ones = lattice_sum_asymptotic_check(
        &WeightSpec::new(vec![1, 1]).unwrap(),
        &[0, 0],
        &[16, 64, 256, 1024],
        &tol,
    )
    .unwrap();
    let k1 = remark_identity_check(3, 1, &[8, 64, 512], &tol).unwrap();
    let ok = all_passed(&lines) && two_ones.passed() && k1.passed();
    outcome(
        ok,
        lines
            .iter()
            .map(|l| format!("{} [{}]", l.name, if l.passed { "ok" } else { "FAILED" }))
            .collect::<Vec<_>>()
            .join(", "),
    )
}

fn criterion_8() -> Outcome {
    let lines = fujiwara_suite(500, 0x6767_2024).unwrap();
    outcome(all_passed(&lines), lines[0].detail.clone())
}

fn main() -> ExitCode {
    let s = Duration::from_secs;
    let results = [
        run(
            1,
            "Fujiwara threshold n=2, eps=13 is 1224 and P(1225) > 0",
            s(1),
            criterion_1,
        ),
        run(2, "theorem bound table n=2..6", s(1), criterion_2),
        run(
            3,
            "dual-route Morse identity n=2..5, eps in {1, 5n+3, 40}",
            s(30),
            criterion_3,
        ),
        run(4, "lemma chain n=2..8, eps=5n+3", s(60), criterion_4),
        run(5, "coefficient oracles n,k <= 3", s(10), criterion_5),
        run(
            6,
            "numerical Whitney formula over the full grid",
            s(120),
            criterion_6,
        ),
        run(
            7,
            "annex identities and asymptotic checks (|ratio-1| < 1/20)",
            s(120),
            criterion_7,
        ),
        run(
            8,
            "Fujiwara property suite, 500 polynomials",
            s(10),
            criterion_8,
        ),
    ];
    let passed = results.iter().filter(|&&r| r).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
