//! Verification suites shared by the CLI and the acceptance tests. Each
//! suite returns one [`CheckLine`] per check, in a fixed order regardless of
//! how many worker threads ran it.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::annex::{
    lattice_sum_asymptotic_check, remark_identity_check, simplex_monomial_integral, whitney_verify,
    WeightSpec, WeightedSplitBundle,
};
use crate::arith::{binomial, rat, rat_int, Rational};
use crate::bounds::{check_lemma_chain, fujiwara_positive};
use crate::coeffs::{compute_b, compute_b_bruteforce, compute_c, compute_c_by_subsets, CoeffTable};
use crate::error::Result;
use crate::morse::{
    a_power_closed, ab_closed, intersection_a_power, intersection_ab, segre_series_tk, JetParams,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckLine {
    fn new(suite: &str, name: String, passed: bool, detail: String) -> Self {
        CheckLine {
            suite: suite.to_string(),
            name,
            passed,
            detail,
        }
    }
}

pub fn all_passed(lines: &[CheckLine]) -> bool {
    lines.iter().all(|l| l.passed)
}

/// Generating-function `B_γ`, `C_α` against enumeration, for every
/// `1 <= n <= max_n`, `1 <= k <= max_k`.
pub fn coeffs_suite(pairs: &[(usize, usize)]) -> Result<Vec<CheckLine>> {
    let lines: Result<Vec<Vec<CheckLine>>> = pairs
        .par_iter()
        .map(|&(n, k)| {
            let b = compute_b(n, k)?;
            let mut out = Vec::new();
            for (gamma, bg) in b.iter().enumerate() {
                let brute = compute_b_bruteforce(n, k, gamma)?;
                let ok = &brute == bg;
                let detail = if ok {
                    format!("B = {bg}")
                } else {
                    format!("generating function {bg} != enumeration {brute}")
                };
                out.push(CheckLine::new(
                    "coeffs",
                    format!("B n={n} k={k} gamma={gamma}"),
                    ok,
                    detail,
                ));
            }
            let c = compute_c(k)?;
            let subsets = compute_c_by_subsets(k);
            let ok = c == subsets;
            out.push(CheckLine::new(
                "coeffs",
                format!("C k={k} (n={n})"),
                ok,
                if ok {
                    format!("C = [{}]", join(&c))
                } else {
                    format!("product [{}] != subsets [{}]", join(&c), join(&subsets))
                },
            ));
            Ok(out)
        })
        .collect();
    Ok(lines?.into_iter().flatten().collect())
}

fn join(xs: &[Rational]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// The seven bounding inequalities for `k = n`, `ε` given or `5n+3`.
pub fn lemmas_suite(ns: &[usize], eps: Option<&Rational>) -> Result<Vec<CheckLine>> {
    let lines: Result<Vec<Vec<CheckLine>>> = ns
        .par_iter()
        .map(|&n| {
            let e = eps.cloned().unwrap_or_else(|| JetParams::default_eps(n));
            let params = JetParams::new(n, n, e.clone())?;
            let v = check_lemma_chain(&params)?;
            Ok(v.named()
                .iter()
                .map(|(name, ok)| {
                    CheckLine::new(
                        "lemmas",
                        format!("n={n} eps={e} {name}"),
                        *ok,
                        String::new(),
                    )
                })
                .collect())
        })
        .collect();
    Ok(lines?.into_iter().flatten().collect())
}

/// Dual-route identity for `A^{N_k}`, `A^{N_k-1}·B` and the Segre
/// coefficients `Λ_{α,β}`.
pub fn morse_suite(cases: &[(usize, usize, Rational)]) -> Result<Vec<CheckLine>> {
    let lines: Result<Vec<Vec<CheckLine>>> = cases
        .par_iter()
        .map(|(n, k, eps)| {
            let params = JetParams::new(*n, *k, eps.clone())?;
            let table = CoeffTable::new(*n, *k)?;
            let a = intersection_a_power(&params)?;
            let a_closed = a_power_closed(&table, &params);
            let ab = intersection_ab(&params)?;
            let ab_cl = ab_closed(&table, &params);
            let s = segre_series_tk(&params)?;
            let lambda_ok = (0..=*n).all(|beta| {
                (0..=*n).all(|alpha| s.coeff(beta).coeff(alpha) == table.lambda(alpha, beta))
            });
            let tag = format!("n={n} k={k} eps={eps}");
            let mp = crate::morse::morse_polynomial_with(&table, &params);
            Ok(vec![
                CheckLine::new(
                    "morse",
                    format!("{tag} A^N series = closed"),
                    a == a_closed,
                    format!("{a}"),
                ),
                CheckLine::new(
                    "morse",
                    format!("{tag} A^(N-1)B series = closed"),
                    ab == ab_cl,
                    format!("{ab}"),
                ),
                CheckLine::new(
                    "morse",
                    format!("{tag} Lambda = Segre coefficients"),
                    lambda_ok,
                    String::new(),
                ),
                CheckLine::new(
                    "morse",
                    format!("{tag} (k!)^n P = d sum Q_a d^a"),
                    mp.is_ok(),
                    match mp {
                        Ok(m) => format!("q = [{}]", join(&m.q)),
                        Err(e) => e.to_string(),
                    },
                ),
            ])
        })
        .collect();
    Ok(lines?.into_iter().flatten().collect())
}

/// Grid of bundles for the Whitney check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WhitneyGrid {
    pub max_n: usize,
    pub max_r: usize,
    pub max_weight: u64,
    pub degree_min: i64,
    pub degree_max: i64,
}

impl Default for WhitneyGrid {
    fn default() -> Self {
        WhitneyGrid {
            max_n: 3,
            max_r: 3,
            max_weight: 3,
            degree_min: -1,
            degree_max: 2,
        }
    }
}

impl WhitneyGrid {
    /// Every ordered tuple of `(degree, weight)` pairs for each `(n, r)`.
    pub fn bundles(&self, n: usize, r: usize) -> Vec<WeightedSplitBundle> {
        let pairs: Vec<(i64, u64)> = (self.degree_min..=self.degree_max)
            .flat_map(|c| (1..=self.max_weight).map(move |a| (c, a)))
            .collect();
        let mut out = Vec::new();
        let mut idx = vec![0usize; r];
        loop {
            let chosen: Vec<(i64, u64)> = idx.iter().map(|&i| pairs[i]).collect();
            out.push(WeightedSplitBundle::from_pairs(n, &chosen).expect("weights >= 1"));
            let mut pos = r;
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < pairs.len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }
}

/// Numerical Whitney formula over the grid, one line per `(n, r)` block.
pub fn whitney_suite(grid: &WhitneyGrid) -> Result<Vec<CheckLine>> {
    let mut lines = Vec::new();
    for n in 1..=grid.max_n {
        for r in 1..=grid.max_r {
            let bundles = grid.bundles(n, r);
            let outcomes: Vec<Result<bool>> = bundles
                .par_iter()
                .map(|b| whitney_verify(b).map(|o| o.equal))
                .collect();
            let mut failures = Vec::new();
            for (b, o) in bundles.iter().zip(&outcomes) {
                match o {
                    Ok(true) => {}
                    Ok(false) => {
                        let out = whitney_verify(b)?;
                        failures.push(format!(
                            "{:?}: lhs {} rhs {}",
                            b.entries(),
                            out.lhs,
                            out.rhs
                        ));
                    }
                    Err(e) => failures.push(format!("{:?}: {e}", b.entries())),
                }
            }
            let detail = if failures.is_empty() {
                format!("{} bundles exact-equal", bundles.len())
            } else {
                format!(
                    "{} of {} failed; {}",
                    failures.len(),
                    bundles.len(),
                    failures
                        .iter()
                        .take(5)
                        .cloned()
                        .collect::<Vec<_>>()
                        .join("; ")
                )
            };
            lines.push(CheckLine::new(
                "whitney",
                format!("n={n} r={r}"),
                failures.is_empty(),
                detail,
            ));
        }
    }
    Ok(lines)
}

/// Mean of a monomial over the uniform simplex `Δ_1` by peeling off one
/// coordinate at a time with Beta integrals, each Beta integral expanded
/// binomially and integrated term by term.
pub fn iterated_beta_integral(p: &[u32]) -> Rational {
    fn beta_termwise(a: u64, b: u64) -> Rational {
        (0..=b).fold(Rational::zero(), |acc, i| {
            let term = Rational::new(binomial(b, i), BigInt::from(a + i + 1));
            if i % 2 == 1 {
                acc - term
            } else {
                acc + term
            }
        })
    }
    match p {
        [] => Rational::one(),
        [_] => Rational::one(),
        [p1, rest @ ..] => {
            let r = p.len() as u64;
            let rest_sum: u64 = rest.iter().map(|&x| x as u64).sum();
            rat_int(r as i64 - 1)
                * beta_termwise(*p1 as u64, rest_sum + r - 2)
                * iterated_beta_integral(rest)
        }
    }
}

/// All exponent vectors of length `r` with entries summing to at most `max_total`.
pub fn exponent_vectors(r: usize, max_total: u32) -> Vec<Vec<u32>> {
    fn go(r: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur.push(v);
            go(r, left - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(r, max_total, &mut Vec::new(), &mut out);
    out
}

/// Schedule parameters for the asymptotic checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnexSchedule {
    pub lattice_weights: Vec<u64>,
    pub lattice_exponents: Vec<u32>,
    pub lattice_m: Vec<u64>,
    pub remark_n: usize,
    pub remark_k: usize,
    pub remark_m: Vec<u64>,
}

impl Default for AnnexSchedule {
    fn default() -> Self {
        AnnexSchedule {
            lattice_weights: vec![1, 2, 3],
            lattice_exponents: vec![1, 0, 0],
            lattice_m: (0..=10).map(|j| 6u64 << j).collect(),
            remark_n: 2,
            remark_k: 2,
            remark_m: (4..=14).map(|j| 1u64 << j).collect(),
        }
    }
}

/// Simplex integrals against the iterated-Beta reduction (exact, `r <= 4`,
/// `Σp <= 5`, weights `1..=3`), the weight rescaling identity, and both
/// asymptotic convergence checks.
pub fn annex_suite(schedule: &AnnexSchedule) -> Result<Vec<CheckLine>> {
    let mut lines = Vec::new();
    let weight_sets: Vec<Vec<u64>> = (2..=4usize)
        .flat_map(|r| {
            (0..3u64.pow(r as u32))
                .map(move |code| (0..r).map(|i| code / 3u64.pow(i as u32) % 3 + 1).collect())
        })
        .collect();
    for r in 2..=4usize {
        let mut total = 0usize;
        let mut failures = Vec::new();
        for a in weight_sets.iter().filter(|a| a.len() == r) {
            let w = WeightSpec::new(a.clone())?;
            let ones = WeightSpec::new(vec![1; r])?;
            for p in exponent_vectors(r, 5) {
                total += 1;
                let got = simplex_monomial_integral(&w, &p)?;
                let scale: BigInt = a
                    .iter()
                    .zip(&p)
                    .map(|(&ai, &pi)| BigInt::from(ai).pow(pi))
                    .product();
                let oracle = iterated_beta_integral(&p) / Rational::from_integer(scale.clone());
                let rescaled =
                    simplex_monomial_integral(&ones, &p)? / Rational::from_integer(scale);
                if got != oracle || got != rescaled {
                    failures.push(format!(
                        "a={a:?} p={p:?}: {got} vs beta {oracle} vs rescaled {rescaled}"
                    ));
                }
            }
        }
        lines.push(CheckLine::new(
            "annex",
            format!("simplex integral r={r}"),
            failures.is_empty(),
            if failures.is_empty() {
                format!("{total} cases exact-equal")
            } else {
                failures.into_iter().take(5).collect::<Vec<_>>().join("; ")
            },
        ));
    }

    let tol = crate::annex::default_tolerance();
    let w = WeightSpec::new(schedule.lattice_weights.clone())?;
    let rep =
        lattice_sum_asymptotic_check(&w, &schedule.lattice_exponents, &schedule.lattice_m, &tol)?;
    lines.push(CheckLine::new(
        "annex",
        format!(
            "lattice sum a={:?} p={:?}",
            schedule.lattice_weights, schedule.lattice_exponents
        ),
        rep.passed(),
        format!(
            "|ratio-1| = {:.3e} at m = {} (monotone: {})",
            rep.final_error_f64(),
            schedule.lattice_m.last().copied().unwrap_or(0),
            rep.monotone
        ),
    ));

    let rem = remark_identity_check(
        schedule.remark_n,
        schedule.remark_k,
        &schedule.remark_m,
        &tol,
    )?;
    lines.push(CheckLine::new(
        "annex",
        format!(
            "remark identity n={} k={}",
            schedule.remark_n, schedule.remark_k
        ),
        rem.passed(),
        format!(
            "constant {} (routes agree: {}), |ratio-1| = {:.3e} (monotone: {})",
            rem.constant,
            rem.brackets_agree,
            rem.convergence.final_error_f64(),
            rem.convergence.monotone
        ),
    ));
    Ok(lines)
}

/// Randomised polynomials satisfying `|a_{n-j}| <= M^j a_n`, each checked to
/// be positive at a random `t > 2M`.
pub fn fujiwara_suite(count: usize, seed: u64) -> Result<Vec<CheckLine>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for case in 0..count {
        let deg = rng.random_range(1..=8usize);
        let m = rat(rng.random_range(1..=50), rng.random_range(1..=10));
        let lead = rat(rng.random_range(1..=20), rng.random_range(1..=20));
        let extremal = rng.random_range(0..4) == 0;
        let mut coeffs = vec![Rational::zero(); deg + 1];
        coeffs[deg] = lead.clone();
        let mut bound = lead.clone();
        for j in 1..=deg {
            bound *= &m;
            let frac = if extremal {
                rat(-1, 1)
            } else {
                rat(rng.random_range(-1000..=1000), 1000)
            };
            coeffs[deg - j] = &bound * frac;
        }
        let delta = rat(rng.random_range(1..=1000), rng.random_range(1..=1000));
        let t = rat_int(2) * &m + delta;
        let cert = fujiwara_positive(&coeffs, &m, &t)?;
        let sound = cert.positive
            && cert
                .lower_bound
                .as_ref()
                .is_some_and(|lb| lb > &Rational::zero() && &cert.value >= lb);
        if !sound {
            failures.push(format!(
                "case {case}: deg {deg} M {m} t {t} value {}",
                cert.value
            ));
        }
    }
    Ok(vec![CheckLine::new(
        "fujiwara",
        format!("{count} random polynomials, seed {seed}"),
        failures.is_empty(),
        if failures.is_empty() {
            "all positive beyond 2M".into()
        } else {
            failures.into_iter().take(5).collect::<Vec<_>>().join("; ")
        },
    )])
}
