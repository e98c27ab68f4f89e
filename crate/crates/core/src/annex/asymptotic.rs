use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::lattice::{for_each_lattice_point, lattice_sum_monomial, Accumulator};
use super::WeightSpec;
use crate::arith::{factorial, rat, serde_exact, to_f64, Rational};
use crate::error::{Error, Result};

/// `|ratio - 1| < 1/20` at the largest sampled `m`.
pub const DEFAULT_TOLERANCE: (i64, i64) = (1, 20);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergenceSample {
    pub m: u64,
    #[serde(with = "serde_exact::rational")]
    pub exact: Rational,
    #[serde(with = "serde_exact::rational")]
    pub predicted: Rational,
    #[serde(with = "serde_exact::rational")]
    pub ratio: Rational,
}

/// Exact sums against their predicted leading term over an `m` schedule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub samples: Vec<ConvergenceSample>,
    #[serde(with = "serde_exact::rational")]
    pub tolerance: Rational,
    /// `|ratio - 1|` at the largest `m`.
    #[serde(with = "serde_exact::rational")]
    pub final_error: Rational,
    pub within_tolerance: bool,
    /// `|ratio - 1|` non-increasing over the last three samples.
    pub monotone: bool,
}

impl ConvergenceReport {
    fn build(samples: Vec<ConvergenceSample>, tolerance: Rational) -> Self {
        let errors: Vec<Rational> = samples
            .iter()
            .map(|s| (&s.ratio - Rational::one()).abs())
            .collect();
        let final_error = errors.last().cloned().unwrap_or_else(Rational::zero);
        let tail = &errors[errors.len().saturating_sub(3)..];
        let monotone = tail.windows(2).all(|w| w[1] <= w[0]);
        ConvergenceReport {
            within_tolerance: final_error < tolerance,
            samples,
            tolerance,
            final_error,
            monotone,
        }
    }

    pub fn passed(&self) -> bool {
        self.within_tolerance && self.monotone
    }

    pub fn final_error_f64(&self) -> f64 {
        to_f64(&self.final_error)
    }
}

fn ratio(exact: &Rational, predicted: &Rational) -> Rational {
    if predicted.is_zero() {
        // only reachable for m = 0 with a non-constant prediction
        return Rational::zero();
    }
    exact / predicted
}

/// `gcd / Π a_i^{p_i+1} · m^{Σp + r - 1} / (Σp + r - 1)!`.
pub fn lattice_sum_leading_term(w: &WeightSpec, p: &[u32], m: u64) -> Rational {
    let e = p.iter().map(|&x| x as u64).sum::<u64>() + w.r() as u64 - 1;
    let denom: BigInt = w
        .weights()
        .iter()
        .zip(p)
        .map(|(&a, &pi)| BigInt::from(a).pow(pi + 1))
        .product::<BigInt>()
        * factorial(e);
    let num = BigInt::from(w.gcd()) * BigInt::from(m).pow(e as u32);
    Rational::new(num, denom)
}

fn check_schedule(m_list: &[u64], step: u64) -> Result<()> {
    if m_list.is_empty() {
        return Err(Error::InvalidParameter("empty m schedule".into()));
    }
    if m_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter(
            "m schedule must be increasing".into(),
        ));
    }
    if let Some(m) = m_list.iter().find(|&&m| m % step != 0) {
        return Err(Error::InvalidParameter(format!(
            "m = {m} is not a multiple of gcd = {step}"
        )));
    }
    Ok(())
}

/// Exact lattice sums against their asymptotic leading term.
pub fn lattice_sum_asymptotic_check(
    w: &WeightSpec,
    p: &[u32],
    m_list: &[u64],
    tolerance: &Rational,
) -> Result<ConvergenceReport> {
    if p.len() != w.r() {
        return Err(Error::InvalidParameter(format!(
            "{} exponents for {} weights",
            p.len(),
            w.r()
        )));
    }
    check_schedule(m_list, w.gcd())?;
    let samples = m_list
        .par_iter()
        .map(|&m| {
            let exact = lattice_sum_monomial(w, p, m);
            let predicted = lattice_sum_leading_term(w, p, m);
            ConvergenceSample {
                m,
                ratio: ratio(&exact, &predicted),
                exact,
                predicted,
            }
        })
        .collect();
    Ok(ConvergenceReport::build(samples, tolerance.clone()))
}

/// `Σ_{l_1 + 2 l_2 + … + k l_k = m} (l_1 + … + l_k)^n / n!`.
pub fn remark_sum(n: u32, k: usize, m: u64) -> Rational {
    let a: Vec<u64> = (1..=k as u64).collect();
    let mut acc = Accumulator::default();
    for_each_lattice_point(&a, m, |l| {
        let s: u64 = l.iter().sum();
        match (s as i128).checked_pow(n) {
            Some(v) => acc.add_i128(v),
            None => acc.add_big(BigInt::from(s).pow(n)),
        }
    });
    Rational::new(acc.total(), factorial(n as u64))
}

/// `Σ_{1 ≤ i_1 ≤ … ≤ i_n ≤ k} 1/(i_1 ⋯ i_n)` by enumerating the sequences.
pub fn remark_bracket_by_sequences(n: usize, k: usize) -> Rational {
    fn go(start: u64, k: u64, left: usize, prod: &BigInt, total: &mut Rational) {
        if left == 0 {
            *total += Rational::new(BigInt::one(), prod.clone());
            return;
        }
        for i in start..=k {
            go(i, k, left - 1, &(prod * BigInt::from(i)), total);
        }
    }
    let mut total = Rational::zero();
    go(1, k as u64, n, &BigInt::one(), &mut total);
    total
}

/// `Σ_{p_1 + … + p_k = n} Π_i i^{-p_i}` by enumerating the compositions.
pub fn remark_bracket_by_compositions(n: usize, k: usize) -> Rational {
    fn go(i: u64, k: u64, left: usize, prod: &BigInt, total: &mut Rational) {
        if i == k {
            let last = prod * BigInt::from(k).pow(left as u32);
            *total += Rational::new(BigInt::one(), last);
            return;
        }
        let mut p = prod.clone();
        for used in 0..=left {
            go(i + 1, k, left - used, &p, total);
            p *= BigInt::from(i);
        }
    }
    let mut total = Rational::zero();
    go(1, k as u64, n, &BigInt::one(), &mut total);
    total
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemarkReport {
    pub n: usize,
    pub k: usize,
    /// `(1/k!)` times the bracketed sum.
    #[serde(with = "serde_exact::rational")]
    pub constant: Rational,
    pub brackets_agree: bool,
    pub convergence: ConvergenceReport,
}

impl RemarkReport {
    pub fn passed(&self) -> bool {
        self.brackets_agree && self.convergence.passed()
    }
}

/// Lattice sums over `l_1 + 2 l_2 + … + k l_k = m` against
/// `(1/k!) [Σ 1/(i_1⋯i_n)] m^{n+k-1}/(n+k-1)!`. No divisibility condition
/// on `m` since the weights include 1.
pub fn remark_identity_check(
    n: usize,
    k: usize,
    m_list: &[u64],
    tolerance: &Rational,
) -> Result<RemarkReport> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be >= 1".into()));
    }
    check_schedule(m_list, 1)?;
    let by_seq = remark_bracket_by_sequences(n, k);
    let by_comp = remark_bracket_by_compositions(n, k);
    let constant = &by_seq / Rational::from_integer(factorial(k as u64));
    let e = (n + k - 1) as u32;
    let samples = m_list
        .par_iter()
        .map(|&m| {
            let exact = remark_sum(n as u32, k, m);
            let predicted = &constant * Rational::new(BigInt::from(m).pow(e), factorial(e as u64));
            ConvergenceSample {
                m,
                ratio: ratio(&exact, &predicted),
                exact,
                predicted,
            }
        })
        .collect();
    Ok(RemarkReport {
        n,
        k,
        brackets_agree: by_seq == by_comp,
        constant,
        convergence: ConvergenceReport::build(samples, tolerance.clone()),
    })
}

/// [`DEFAULT_TOLERANCE`] as a rational.
pub fn default_tolerance() -> Rational {
    rat(DEFAULT_TOLERANCE.0, DEFAULT_TOLERANCE.1)
}
