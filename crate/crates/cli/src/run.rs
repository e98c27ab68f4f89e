use std::fmt::Write as _;

use ggmorse_core::annex::{
    default_tolerance, lattice_sum_asymptotic_check, lattice_volume_squared,
    simplex_monomial_integral, simplex_volume_ratio, whitney_verify, ConvergenceReport, WeightSpec,
    WeightedSplitBundle, WhitneyOutcome,
};
use ggmorse_core::arith::serde_exact;
use ggmorse_core::arith::to_f64;
use ggmorse_core::verify::{
    all_passed, annex_suite, coeffs_suite, fujiwara_suite, lemmas_suite, morse_suite,
    whitney_suite, AnnexSchedule, CheckLine, WhitneyGrid,
};
use ggmorse_core::{
    bounds_report, morse_polynomial, BoundsReport, CoeffTable, Error, JetParams, MorsePolynomial,
    Rational,
};
use serde::Serialize;

use crate::args::{AnnexArgs, BoundArgs, CoeffsArgs, Format, MorseArgs, Suite, VerifyArgs};

/// Rendered output plus whether every verdict it contains passed.
pub struct Rendered {
    pub body: String,
    pub passed: bool,
}

#[derive(Serialize)]
struct Evaluation {
    d: u64,
    #[serde(with = "serde_exact::rational")]
    value: Rational,
    positive: bool,
    value_approx: f64,
}

fn evaluation(mp: &MorsePolynomial, d: u64) -> Evaluation {
    let value = mp.evaluate(d);
    Evaluation {
        d,
        positive: value > Rational::from_integer(0.into()),
        value_approx: to_f64(&value),
        value,
    }
}

#[derive(Serialize)]
struct BoundOut {
    #[serde(flatten)]
    report: BoundsReport,
    evaluation: Option<Evaluation>,
}

pub fn bound(args: &BoundArgs) -> Result<Rendered, Error> {
    let ns: Vec<usize> = match (&args.n, &args.n_range) {
        (Some(n), _) => vec![*n],
        (None, Some(r)) => r.clone().collect(),
        (None, None) => unreachable!("clap requires n or n-range"),
    };
    let params: Vec<JetParams> = ns
        .iter()
        .map(|&n| {
            JetParams::new(
                n,
                n,
                args.eps
                    .clone()
                    .unwrap_or_else(|| JetParams::default_eps(n)),
            )
        })
        .collect::<Result<_, _>>()?;
    let outs: Vec<BoundOut> = crate::par_map(&params, |p| {
        let report = bounds_report(p)?;
        let evaluation = match args.d {
            Some(d) => Some(evaluation(&report.morse()?, d)),
            None => None,
        };
        Ok(BoundOut { report, evaluation })
    })?;
    let passed = outs.iter().all(|o| o.report.passed());
    let body = match args.out.format {
        Format::Json if args.n.is_some() => json(&outs[0]),
        Format::Json => json(&outs),
        Format::Csv => {
            let mut w = csv_writer(&["n", "alpha", "q", "r"]);
            for o in &outs {
                for (a, (q, r)) in o.report.q.iter().zip(&o.report.majorants.r).enumerate() {
                    w.write_record([
                        o.report.params.n.to_string(),
                        a.to_string(),
                        q.to_string(),
                        r.to_string(),
                    ])
                    .expect("in-memory csv");
                }
            }
            csv_finish(w)
        }
        Format::Text => outs.iter().map(bound_text).collect::<Vec<_>>().join("\n"),
    };
    Ok(Rendered { body, passed })
}

fn approx(x: &Rational) -> String {
    if x.is_integer() {
        x.to_string()
    } else {
        format!("{x} (~{:.6})", to_f64(x))
    }
}

fn bound_text(o: &BoundOut) -> String {
    let r = &o.report;
    let mut s = String::new();
    let p = &r.params;
    let _ = writeln!(s, "n = {}, k = {}, eps = {}", p.n, p.k, p.eps);
    let _ = writeln!(s, "  ggl_bound          {}", approx(&r.ggl_bound));
    let _ = writeln!(s, "  kobayashi_bound    {}", approx(&r.kobayashi_bound));
    let _ = writeln!(s, "  monomial_bound     {}", approx(&r.monomial_bound));
    let _ = writeln!(s, "  D_eps              {}", approx(&r.d_eps));
    let _ = writeln!(s, "  fujiwara M         {}", approx(&r.fujiwara_m));
    let _ = writeln!(s, "  threshold 2M       {}", approx(&r.threshold_2m));
    let _ = writeln!(s, "  scan threshold d0  {}", r.scan_threshold);
    for (a, (q, rr)) in r.q.iter().zip(&r.majorants.r).enumerate() {
        let _ = writeln!(s, "  Q_{a} = {q}    R_{a} = {rr}");
    }
    for (name, ok) in r.verdicts.named() {
        let _ = writeln!(s, "  [{}] {name}", if ok { "PASS" } else { "FAIL" });
    }
    let _ = writeln!(
        s,
        "  [{}] fujiwara hypothesis",
        if r.fujiwara_hypothesis {
            "PASS"
        } else {
            "FAIL"
        }
    );
    if let Some(e) = &o.evaluation {
        let _ = writeln!(
            s,
            "  P(d = {}) = {} {} 0",
            e.d,
            approx(&e.value),
            if e.positive { ">" } else { "<=" }
        );
    }
    s
}

#[derive(Serialize)]
struct MorseOut {
    #[serde(flatten)]
    polynomial: MorsePolynomial,
    evaluation: Option<Evaluation>,
}

pub fn morse(args: &MorseArgs) -> Result<Rendered, Error> {
    let eps = args
        .eps
        .clone()
        .unwrap_or_else(|| JetParams::default_eps(args.n));
    let params = JetParams::new(args.n, args.k.unwrap_or(args.n), eps)?;
    let mp = morse_polynomial(&params)?;
    let evaluation = args.d.map(|d| evaluation(&mp, d));
    let body = match args.out.format {
        Format::Json => json(&MorseOut {
            polynomial: mp,
            evaluation,
        }),
        Format::Csv => {
            let mut w = csv_writer(&["n", "k", "eps", "alpha", "q", "raw"]);
            let zero = Rational::from_integer(0.into());
            for a in 0..=params.n + 1 {
                let q = mp.q.get(a).map(|q| q.to_string()).unwrap_or_default();
                let raw = mp.raw.coeffs().get(a).unwrap_or(&zero).to_string();
                w.write_record([
                    params.n.to_string(),
                    params.k.to_string(),
                    params.eps.to_string(),
                    a.to_string(),
                    q,
                    raw,
                ])
                .expect("in-memory csv");
            }
            csv_finish(w)
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "n = {}, k = {}, eps = {}",
                params.n, params.k, params.eps
            );
            let _ = writeln!(s, "  P(d) = {}", mp.raw);
            for (a, q) in mp.q.iter().enumerate() {
                let _ = writeln!(s, "  Q_{a} = {}", approx(q));
            }
            if let Some(e) = &evaluation {
                let _ = writeln!(s, "  P(d = {}) = {}", e.d, approx(&e.value));
            }
            s
        }
    };
    Ok(Rendered { body, passed: true })
}

pub fn coeffs(args: &CoeffsArgs) -> Result<Rendered, Error> {
    if args.n < 1 || args.k == Some(0) {
        return Err(Error::InvalidParameter("n and k must be >= 1".into()));
    }
    let table = CoeffTable::new(args.n, args.k.unwrap_or(args.n))?;
    let body = match args.out.format {
        Format::Json => json(&table),
        Format::Csv => {
            let mut w = csv_writer(&["n", "k", "index", "b", "c"]);
            for i in 0..=table.n {
                w.write_record([
                    table.n.to_string(),
                    table.k.to_string(),
                    i.to_string(),
                    table.b[i].to_string(),
                    table.c[i].to_string(),
                ])
                .expect("in-memory csv");
            }
            csv_finish(w)
        }
        Format::Text => {
            let mut s = format!(
                "n = {}, k = {}, (k!)^n = {}\n",
                table.n, table.k, table.k_factorial_pow
            );
            for i in 0..=table.n {
                let _ = writeln!(s, "  B_{i} = {}    C_{i} = {}", table.b[i], table.c[i]);
            }
            s
        }
    };
    Ok(Rendered { body, passed: true })
}

pub fn verify(args: &VerifyArgs, suite: Suite) -> Result<Rendered, Error> {
    let mut lines: Vec<CheckLine> = Vec::new();
    let run = |s: Suite| suite == Suite::All || suite == s;
    if run(Suite::Coeffs) {
        let pairs: Vec<(usize, usize)> = match (args.n, &args.n_range) {
            (Some(n), _) => vec![(n, args.k.unwrap_or(n))],
            (None, Some(r)) => r.clone().map(|n| (n, args.k.unwrap_or(n))).collect(),
            (None, None) => (1..=3).flat_map(|n| (1..=3).map(move |k| (n, k))).collect(),
        };
        if pairs.iter().any(|&(n, k)| n == 0 || k == 0) {
            return Err(Error::InvalidParameter("n and k must be >= 1".into()));
        }
        lines.extend(coeffs_suite(&pairs)?);
    }
    let ns: Vec<usize> = match (args.n, &args.n_range) {
        (Some(n), _) => vec![n],
        (None, Some(r)) => r.clone().collect(),
        (None, None) => (2..=6).collect(),
    };
    if (run(Suite::Lemmas) || run(Suite::Morse)) && ns.iter().any(|&n| n < 2) {
        return Err(Error::InvalidParameter("n must be >= 2".into()));
    }
    if run(Suite::Lemmas) {
        lines.extend(lemmas_suite(&ns, args.eps.as_ref())?);
    }
    if run(Suite::Morse) {
        let cases: Vec<(usize, usize, Rational)> = ns
            .iter()
            .filter(|&&n| n <= 5)
            .map(|&n| {
                (
                    n,
                    args.k.unwrap_or(n),
                    args.eps
                        .clone()
                        .unwrap_or_else(|| JetParams::default_eps(n)),
                )
            })
            .collect();
        lines.extend(morse_suite(&cases)?);
    }
    if run(Suite::Whitney) {
        let d = WhitneyGrid::default();
        let grid = WhitneyGrid {
            max_n: args.max_n.unwrap_or(d.max_n),
            max_r: args.max_r.unwrap_or(d.max_r),
            max_weight: args.max_weight.unwrap_or(d.max_weight),
            degree_min: args.degree_min.unwrap_or(d.degree_min),
            degree_max: args.degree_max.unwrap_or(d.degree_max),
        };
        if grid.max_weight == 0
            || grid.degree_min > grid.degree_max
            || grid.max_n == 0
            || grid.max_r == 0
        {
            return Err(Error::InvalidParameter("empty Whitney grid".into()));
        }
        lines.extend(whitney_suite(&grid)?);
    }
    if run(Suite::Annex) {
        lines.extend(annex_suite(&AnnexSchedule::default())?);
    }
    if run(Suite::Fujiwara) {
        lines.extend(fujiwara_suite(args.samples, args.seed)?);
    }
    let passed = all_passed(&lines);
    let body = match args.out.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                passed: bool,
                checks: &'a [CheckLine],
            }
            json(&Out {
                passed,
                checks: &lines,
            })
        }
        Format::Csv => {
            let mut w = csv_writer(&["suite", "name", "passed", "detail"]);
            for l in &lines {
                w.write_record([
                    l.suite.as_str(),
                    &l.name,
                    if l.passed { "true" } else { "false" },
                    &l.detail,
                ])
                .expect("in-memory csv");
            }
            csv_finish(w)
        }
        Format::Text => {
            let mut s = String::new();
            for l in &lines {
                let tag = if l.passed { "PASS" } else { "FAIL" };
                if l.detail.is_empty() {
                    let _ = writeln!(s, "[{tag}] {}: {}", l.suite, l.name);
                } else {
                    let _ = writeln!(s, "[{tag}] {}: {}: {}", l.suite, l.name, l.detail);
                }
            }
            let ok = lines.iter().filter(|l| l.passed).count();
            let _ = writeln!(s, "{ok}/{} checks passed", lines.len());
            s
        }
    };
    Ok(Rendered { body, passed })
}

#[derive(Serialize)]
struct AnnexOut {
    weights: Vec<u64>,
    exponents: Vec<u32>,
    gcd: u64,
    lcm: u64,
    #[serde(with = "serde_exact::rational")]
    volume_squared: Rational,
    #[serde(with = "serde_exact::rational_opt")]
    simplex_ratio: Option<Rational>,
    #[serde(with = "serde_exact::rational_opt")]
    simplex_integral: Option<Rational>,
    convergence: Option<ConvergenceReport>,
    whitney: Option<WhitneyOutcome>,
}

pub fn annex(args: &AnnexArgs) -> Result<Rendered, Error> {
    let w = WeightSpec::new(args.weights.clone())?;
    let p = if args.p.is_empty() {
        vec![0; w.r()]
    } else {
        args.p.clone()
    };
    if p.len() != w.r() {
        return Err(Error::InvalidParameter(format!(
            "{} exponents for {} weights",
            p.len(),
            w.r()
        )));
    }
    let (simplex_ratio, simplex_integral, convergence) = if w.r() >= 2 {
        let m: Vec<u64> = if args.m.is_empty() {
            (0..=8).map(|j| (w.lcm() * 4) << j).collect()
        } else {
            args.m.clone()
        };
        let tol = args.tolerance.clone().unwrap_or_else(default_tolerance);
        (
            Some(simplex_volume_ratio(&w)?),
            Some(simplex_monomial_integral(&w, &p)?),
            Some(lattice_sum_asymptotic_check(&w, &p, &m, &tol)?),
        )
    } else {
        (None, None, None)
    };
    let whitney = match args.n {
        Some(n) if !args.degrees.is_empty() => {
            if args.degrees.len() != w.r() {
                return Err(Error::InvalidParameter(format!(
                    "{} degrees for {} weights",
                    args.degrees.len(),
                    w.r()
                )));
            }
            let pairs: Vec<(i64, u64)> = args
                .degrees
                .iter()
                .copied()
                .zip(w.weights().iter().copied())
                .collect();
            Some(whitney_verify(&WeightedSplitBundle::from_pairs(
                n, &pairs,
            )?)?)
        }
        Some(_) => return Err(Error::InvalidParameter("--n needs --degrees".into())),
        None => None,
    };
    let passed =
        convergence.as_ref().is_none_or(|c| c.passed()) && whitney.as_ref().is_none_or(|o| o.equal);
    let out = AnnexOut {
        weights: w.weights().to_vec(),
        exponents: p,
        gcd: w.gcd(),
        lcm: w.lcm(),
        volume_squared: lattice_volume_squared(&w),
        simplex_ratio,
        simplex_integral,
        convergence,
        whitney,
    };
    let body = match args.out.format {
        Format::Json => json(&out),
        Format::Csv => {
            let mut w = csv_writer(&["m", "exact", "predicted", "ratio"]);
            for s in out.convergence.iter().flat_map(|c| &c.samples) {
                w.write_record([
                    s.m.to_string(),
                    s.exact.to_string(),
                    s.predicted.to_string(),
                    s.ratio.to_string(),
                ])
                .expect("in-memory csv");
            }
            csv_finish(w)
        }
        Format::Text => annex_text(&out),
    };
    Ok(Rendered { body, passed })
}

fn annex_text(o: &AnnexOut) -> String {
    let mut s = format!(
        "weights {:?}, exponents {:?}, gcd {}, lcm {}\n",
        o.weights, o.exponents, o.gcd, o.lcm
    );
    let _ = writeln!(s, "  lattice volume^2   {}", o.volume_squared);
    if let Some(r) = &o.simplex_ratio {
        let _ = writeln!(s, "  simplex ratio      {}", approx(r));
    }
    if let Some(r) = &o.simplex_integral {
        let _ = writeln!(s, "  simplex integral   {}", approx(r));
    }
    if let Some(c) = &o.convergence {
        for smp in &c.samples {
            let _ = writeln!(
                s,
                "  m = {:>8}  exact/predicted ~ {:.6}",
                smp.m,
                to_f64(&smp.ratio)
            );
        }
        let _ = writeln!(
            s,
            "  [{}] convergence: final error ~{:.6}, tolerance {}, monotone {}",
            if c.passed() { "PASS" } else { "FAIL" },
            c.final_error_f64(),
            c.tolerance,
            c.monotone
        );
    }
    if let Some(wo) = &o.whitney {
        let _ = writeln!(
            s,
            "  [{}] whitney: lhs {} rhs {} (period {})",
            if wo.equal { "PASS" } else { "FAIL" },
            wo.lhs,
            wo.rhs,
            wo.fit.period
        );
    }
    s
}

fn json<T: Serialize + ?Sized>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable output");
    s.push('\n');
    s
}

fn csv_writer(header: &[&str]) -> csv::Writer<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    w
}

fn csv_finish(w: csv::Writer<Vec<u8>>) -> String {
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
}
