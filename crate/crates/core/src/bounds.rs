//! Majorants `R_α`, the bounding lemmas on `B_γ`, `C_α`, `D_l`, `R_α`, the
//! Fujiwara positivity criterion and the resulting degree thresholds.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{binomial, rat, rat_int, serde_exact, to_f64, PolyD, Rational};
use crate::coeffs::CoeffTable;
use crate::error::{Error, Result};
use crate::morse::{morse_polynomial_with, q_closed_form, JetParams, MorsePolynomial};

/// `R_α` and `D_l` for `k = n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MajorantTable {
    pub params: JetParams,
    #[serde(with = "serde_exact::rational_vec")]
    pub r: Vec<Rational>,
    /// `d[0]` is `D_1`.
    #[serde(with = "serde_exact::rational_vec")]
    pub d: Vec<Rational>,
}

impl MajorantTable {
    /// `D_l` for `1 <= l <= n`.
    pub fn d_l(&self, l: usize) -> &Rational {
        &self.d[l - 1]
    }
}

fn require_k_eq_n(params: &JetParams) -> Result<()> {
    if params.k != params.n {
        return Err(Error::JetOrderNotDimension {
            n: params.n,
            k: params.k,
        });
    }
    Ok(())
}

/// `D_l = (2 + (2+ε)l) binom(N_n, l) 2^{l-1}`.
fn d_coefficients(params: &JetParams) -> Vec<Rational> {
    let big_n = params.jet_dim() as u64;
    let two_eps = rat_int(2) + &params.eps;
    (1..=params.n as u64)
        .map(|l| {
            (rat_int(2) + &two_eps * rat_int(l)) * rat_int(binomial(big_n, l) << (l - 1) as usize)
        })
        .collect()
}

pub fn majorants(params: &JetParams) -> Result<MajorantTable> {
    let table = CoeffTable::new(params.n, params.k)?;
    majorants_with(&table, params)
}

fn majorants_with(table: &CoeffTable, params: &JetParams) -> Result<MajorantTable> {
    require_k_eq_n(params)?;
    let n = params.n;
    let d = d_coefficients(params);
    let r = (0..=n)
        .map(|alpha| {
            let mut bracket = table.b[n - alpha].clone();
            for l in 1..=n - alpha {
                bracket += &d[l - 1] * &table.b[n - alpha - l];
            }
            bracket * &table.c[alpha]
        })
        .collect();
    Ok(MajorantTable {
        params: params.clone(),
        r,
        d,
    })
}

/// `D_ε = max(27/2, 9(1 + ε/4))`.
pub fn d_epsilon(eps: &Rational) -> Rational {
    let linear = rat(9, 1) * (rat(1, 1) + eps / rat_int(4));
    linear.max(rat(27, 2))
}

/// The other reading, `max(9(1 + ε/4), 27/4)`; reported but never used.
pub fn d_epsilon_alternative(eps: &Rational) -> Rational {
    let linear = rat(9, 1) * (rat(1, 1) + eps / rat_int(4));
    linear.max(rat(27, 4))
}

/// Outcome of each bounding inequality, all checked in exact arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaVerdicts {
    /// `B_{γ+1} <= 2n² B_γ`
    pub b_ratio: bool,
    /// `C_α <= (3/2)n² C_{α+1}` for `α+1 <= n`
    pub c_ratio: bool,
    /// `D_{l+1} <= 9n² D_l` for `l >= 1`
    pub d_ratio: bool,
    /// `R_{n-1} <= 9n⁴(1 + ε/4) R_n`
    pub r_top: bool,
    /// `R_{α-1} <= (27/2)n⁴ R_α` for `1 <= α <= n-1`
    pub r_chain: bool,
    /// `|Q_α| <= R_α`
    pub q_dominated: bool,
    /// `R_α <= D_ε^{n-α} n^{4(n-α)} R_n`
    pub r_geometric: bool,
}

impl LemmaVerdicts {
    pub fn all(&self) -> bool {
        self.named().iter().all(|(_, v)| *v)
    }

    pub fn named(&self) -> [(&'static str, bool); 7] {
        [
            ("b_ratio", self.b_ratio),
            ("c_ratio", self.c_ratio),
            ("d_ratio", self.d_ratio),
            ("r_top", self.r_top),
            ("r_chain", self.r_chain),
            ("q_dominated", self.q_dominated),
            ("r_geometric", self.r_geometric),
        ]
    }
}

pub fn check_lemma_chain(params: &JetParams) -> Result<LemmaVerdicts> {
    require_k_eq_n(params)?;
    let table = CoeffTable::new(params.n, params.k)?;
    let maj = majorants_with(&table, params)?;
    let q = q_closed_form(&table, params);
    Ok(lemma_verdicts(&table, &maj, &q, params))
}

fn lemma_verdicts(
    table: &CoeffTable,
    maj: &MajorantTable,
    q: &[Rational],
    params: &JetParams,
) -> LemmaVerdicts {
    let n = params.n;
    let n2 = rat_int(n as i64 * n as i64);
    let n4 = &n2 * &n2;
    let (b, c, r) = (&table.b, &table.c, &maj.r);
    let d_eps = d_epsilon(&params.eps);
    let m = &d_eps * &n4;

    LemmaVerdicts {
        b_ratio: (0..n).all(|g| b[g + 1] <= rat_int(2) * &n2 * &b[g]),
        c_ratio: (0..n).all(|a| c[a] <= rat(3, 2) * &n2 * &c[a + 1]),
        d_ratio: (1..n).all(|l| maj.d_l(l + 1) <= &(rat_int(9) * &n2 * maj.d_l(l))),
        r_top: r[n - 1] <= rat_int(9) * &n4 * (rat(1, 1) + &params.eps / rat_int(4)) * &r[n],
        r_chain: (1..n).all(|a| r[a - 1] <= rat(27, 2) * &n4 * &r[a]),
        q_dominated: (0..=n).all(|a| q[a].abs() <= r[a]),
        r_geometric: (0..=n).all(|a| r[a] <= num_traits::pow(m.clone(), n - a) * &r[n]),
    }
}

/// Result of [`fujiwara_positive`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FujiwaraCertificate {
    #[serde(with = "serde_exact::rational")]
    pub value: Rational,
    /// `a_n t^n (1 - Σ_{j≥1} (M/t)^j)`, present when `t > 2M`.
    #[serde(with = "serde_exact::rational_opt")]
    pub lower_bound: Option<Rational>,
    pub positive: bool,
}

/// Checks `|a_{n-j}| <= M^j a_n` for every `j >= 1`; coefficients ascending.
pub fn check_fujiwara_hypothesis(coeffs: &[Rational], m: &Rational) -> Result<()> {
    let lead = coeffs
        .last()
        .ok_or_else(|| Error::NonPositiveLeading("empty polynomial".into()))?;
    if lead <= &Rational::zero() {
        return Err(Error::NonPositiveLeading(lead.to_string()));
    }
    if m <= &Rational::zero() {
        return Err(Error::InvalidParameter(format!("M must be > 0, got {m}")));
    }
    let deg = coeffs.len() - 1;
    let mut bound = lead.clone();
    for j in 1..=deg {
        bound *= m;
        let a = &coeffs[deg - j];
        if a.abs() > bound {
            return Err(Error::FujiwaraHypothesis {
                j,
                coeff: a.abs().to_string(),
                bound: bound.to_string(),
            });
        }
    }
    Ok(())
}

/// Positivity of `Q(t) = Σ a_i t^i` under the Fujiwara coefficient bound.
///
/// For `t > 2M` the geometric-series lower bound is returned and is strictly
/// positive; for smaller `t` only the exact sign of `Q(t)` is reported.
pub fn fujiwara_positive(
    coeffs: &[Rational],
    m: &Rational,
    t: &Rational,
) -> Result<FujiwaraCertificate> {
    check_fujiwara_hypothesis(coeffs, m)?;
    let value = PolyD::new(coeffs.to_vec()).eval(t);
    let deg = coeffs.len() - 1;
    let lower_bound = (t > &(rat_int(2) * m)).then(|| {
        let ratio = m / t;
        let mut power = Rational::one();
        let mut tail = Rational::zero();
        for _ in 0..deg {
            power *= &ratio;
            tail += &power;
        }
        &coeffs[deg] * num_traits::pow(t.clone(), deg) * (Rational::one() - tail)
    });
    let positive = value > Rational::zero();
    debug_assert!(lower_bound
        .as_ref()
        .is_none_or(|lb| lb > &Rational::zero() && &value >= lb));
    Ok(FujiwaraCertificate {
        value,
        lower_bound,
        positive,
    })
}

/// Scan limit for the threshold search: `2 D_ε n⁴` when the Fujiwara
/// hypothesis holds, otherwise the Cauchy bound `1 + max |a_i / a_n|`.
fn guaranteed_limit(mp: &MorsePolynomial) -> Rational {
    let m = d_epsilon(&mp.params.eps) * rat_int((mp.params.n as i64).pow(4));
    if check_fujiwara_hypothesis(&mp.q, &m).is_ok() {
        return rat_int(2) * m;
    }
    let lead = mp.q.last().cloned().unwrap_or_else(Rational::one);
    let max = mp.q[..mp.q.len() - 1]
        .iter()
        .map(|a| (a / &lead).abs())
        .max()
        .unwrap_or_else(Rational::zero);
    Rational::one() + max
}

/// Least integer `d0 >= 1` such that `P(n, d, ε) > 0` for every integer
/// `d >= d0`.
pub fn positivity_threshold(mp: &MorsePolynomial) -> Result<u64> {
    require_k_eq_n(&mp.params)?;
    let limit = guaranteed_limit(mp).ceil().to_integer();
    let limit: u64 = limit
        .try_into()
        .map_err(|_| Error::InvalidParameter("scan limit does not fit in u64".into()))?;

    // Sign of P at d > 0 is the sign of Σ q_α d^α; clear denominators so the
    // scan runs over integers.
    let lcm = mp.q.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> =
        mp.q.iter()
            .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
    let positive_at = |d: u64| {
        let d = BigInt::from(d);
        ints.iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * &d + c)
            .is_positive()
    };
    let mut d = limit;
    while d >= 1 {
        if !positive_at(d) {
            return Ok(d + 1);
        }
        d -= 1;
    }
    Ok(1)
}

/// Degree bounds of the main theorem: `153/4 n⁵` for quasi-hyperbolicity
/// and `153/4 (2n-1)⁵` for hyperbolicity (the `n -> 2n-1` substitution).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremBounds {
    pub n: usize,
    #[serde(with = "serde_exact::rational")]
    pub monomial: Rational,
    #[serde(with = "serde_exact::rational")]
    pub kobayashi: Rational,
    /// `18((5n+3)/4 + 1) n⁴`, the Fujiwara threshold at `ε = 5n+3`.
    #[serde(with = "serde_exact::rational")]
    pub specialised: Rational,
}

pub fn monomial_bound(n: usize) -> Rational {
    rat(153, 4) * rat_int((n as i64).pow(5))
}

pub fn specialised_bound(n: usize) -> Rational {
    let n = n as i64;
    rat(18, 1) * (rat(5 * n + 3, 4) + rat(1, 1)) * rat_int(n.pow(4))
}

pub fn theorem_bounds(n: usize) -> Result<TheoremBounds> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n must be >= 2, got {n}")));
    }
    let monomial = monomial_bound(n);
    let specialised = specialised_bound(n);
    assert!(
        specialised <= monomial,
        "18((5n+3)/4+1)n^4 <= 153/4 n^5 fails at n = {n}"
    );
    Ok(TheoremBounds {
        n,
        kobayashi: monomial_bound(2 * n - 1),
        monomial,
        specialised,
    })
}

/// Full audit record for one `(n, ε)` with `k = n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub params: JetParams,
    #[serde(with = "serde_exact::rational_vec")]
    pub q: Vec<Rational>,
    pub majorants: MajorantTable,
    #[serde(with = "serde_exact::rational")]
    pub d_eps: Rational,
    #[serde(with = "serde_exact::rational")]
    pub d_eps_alternative: Rational,
    #[serde(with = "serde_exact::rational")]
    pub fujiwara_m: Rational,
    #[serde(with = "serde_exact::rational")]
    pub threshold_2m: Rational,
    pub scan_threshold: u64,
    #[serde(with = "serde_exact::rational")]
    pub ggl_bound: Rational,
    #[serde(with = "serde_exact::rational")]
    pub monomial_bound: Rational,
    #[serde(with = "serde_exact::rational")]
    pub kobayashi_bound: Rational,
    pub verdicts: LemmaVerdicts,
    pub fujiwara_hypothesis: bool,
    pub approx: ApproxValues,
    pub notes: Vec<String>,
}

/// Decimal renderings for reading; never used in any check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApproxValues {
    pub d_eps: f64,
    pub threshold_2m: f64,
    pub ggl_bound: f64,
    pub monomial_bound: f64,
    pub kobayashi_bound: f64,
}

pub const D_EPS_NOTE: &str = "D_eps = max(27/2, 9(1+eps/4)) is used; the alternative reading \
max(9(1+eps/4), 27/4) is reported as d_eps_alternative only, since 27/4 does not dominate \
the (27/2) n^4 ratio R_(a-1)/R_a";

impl BoundsReport {
    pub fn passed(&self) -> bool {
        self.verdicts.all() && self.fujiwara_hypothesis
    }

    /// Morse polynomial reconstructed from the report's parameters.
    pub fn morse(&self) -> Result<MorsePolynomial> {
        crate::morse::morse_polynomial(&self.params)
    }
}

pub fn bounds_report(params: &JetParams) -> Result<BoundsReport> {
    require_k_eq_n(params)?;
    let n = params.n;
    let table = CoeffTable::new(n, params.k)?;
    let mp = morse_polynomial_with(&table, params)?;
    let maj = majorants_with(&table, params)?;
    let verdicts = lemma_verdicts(&table, &maj, &mp.q, params);
    let d_eps = d_epsilon(&params.eps);
    let fujiwara_m = &d_eps * rat_int((n as i64).pow(4));
    let threshold_2m = rat_int(2) * &fujiwara_m;
    let fujiwara_hypothesis = check_fujiwara_hypothesis(&mp.q, &fujiwara_m).is_ok();
    let scan_threshold = positivity_threshold(&mp)?;
    let bounds = theorem_bounds(n)?;
    Ok(BoundsReport {
        approx: ApproxValues {
            d_eps: to_f64(&d_eps),
            threshold_2m: to_f64(&threshold_2m),
            ggl_bound: to_f64(&bounds.specialised),
            monomial_bound: to_f64(&bounds.monomial),
            kobayashi_bound: to_f64(&bounds.kobayashi),
        },
        params: params.clone(),
        q: mp.q,
        majorants: maj,
        d_eps_alternative: d_epsilon_alternative(&params.eps),
        d_eps,
        fujiwara_m,
        threshold_2m,
        scan_threshold,
        ggl_bound: bounds.specialised,
        monomial_bound: bounds.monomial,
        kobayashi_bound: bounds.kobayashi,
        verdicts,
        fujiwara_hypothesis,
        notes: vec![D_EPS_NOTE.to_string()],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morse::morse_polynomial;

    #[test]
    fn d_epsilon_values() {
        assert_eq!(d_epsilon(&rat(13, 1)), rat(153, 4));
        assert_eq!(d_epsilon(&rat(1, 1)), rat(27, 2));
        assert_eq!(d_epsilon(&rat(2, 1)), rat(27, 2));
        assert_eq!(d_epsilon_alternative(&rat(1, 1)), rat(45, 4));
    }

    #[test]
    fn majorant_values() {
        let p = JetParams::new(2, 2, rat(13, 1)).unwrap();
        let t = majorants(&p).unwrap();
        assert_eq!(t.d_l(1), &rat(85, 1));
        let c = CoeffTable::new(2, 2).unwrap();
        assert_eq!(t.r[2], c.c[2]);
        // R_{n-1} = C_{n-1}(B_1 + (4+ε)N_n)
        assert_eq!(t.r[1], &c.c[1] * (&c.b[1] + rat(17 * 5, 1)));
    }

    #[test]
    fn k_must_equal_n() {
        let p = JetParams::new(3, 2, rat(1, 1)).unwrap();
        assert_eq!(
            majorants(&p),
            Err(Error::JetOrderNotDimension { n: 3, k: 2 })
        );
        assert!(check_lemma_chain(&p).is_err());
        let mp = morse_polynomial(&p).unwrap();
        assert!(positivity_threshold(&mp).is_err());
    }

    #[test]
    fn lemma_chain_n2() {
        let v = check_lemma_chain(&JetParams::new(2, 2, rat(13, 1)).unwrap()).unwrap();
        assert!(v.all(), "{v:?}");
    }

    #[test]
    fn fujiwara_trivial_and_quadratic() {
        let c =
            fujiwara_positive(&[rat(0, 1), rat(0, 1), rat(1, 1)], &rat(5, 1), &rat(1, 1)).unwrap();
        assert!(c.positive);
        // t^2 - M t - M^2 at t = 2M + 1 equals M^2 + 3M + 1
        let m = rat(7, 3);
        let coeffs = [-(&m * &m), -m.clone(), rat(1, 1)];
        let t = rat(2, 1) * &m + rat(1, 1);
        let c = fujiwara_positive(&coeffs, &m, &t).unwrap();
        assert_eq!(c.value, &m * &m + rat(3, 1) * &m + rat(1, 1));
        assert!(c.positive);
        assert!(c.lower_bound.unwrap() > rat(0, 1));
    }

    #[test]
    fn fujiwara_reports_violating_index() {
        let err = fujiwara_positive(&[rat(100, 1), rat(1, 1), rat(1, 1)], &rat(2, 1), &rat(9, 1))
            .unwrap_err();
        assert!(
            matches!(err, Error::FujiwaraHypothesis { j: 2, .. }),
            "{err:?}"
        );
        assert!(matches!(
            fujiwara_positive(&[rat(1, 1), rat(-1, 1)], &rat(2, 1), &rat(9, 1)),
            Err(Error::NonPositiveLeading(_))
        ));
    }

    #[test]
    fn fujiwara_below_2m_reports_exact_sign() {
        let m = rat(1, 1);
        let c = fujiwara_positive(&[rat(-1, 1), rat(-1, 1), rat(1, 1)], &m, &rat(1, 1)).unwrap();
        assert!(!c.positive);
        assert!(c.lower_bound.is_none());
        assert_eq!(c.value, rat(-1, 1));
    }

    #[test]
    fn headline_polynomial_positive_at_1225() {
        let mp = morse_polynomial(&JetParams::new(2, 2, rat(13, 1)).unwrap()).unwrap();
        let m = d_epsilon(&rat(13, 1)) * rat(16, 1);
        let c = fujiwara_positive(&mp.q, &m, &rat(1225, 1)).unwrap();
        assert!(c.positive && c.lower_bound.is_some());
    }

    #[test]
    fn thresholds_frozen() {
        // least d with P > 0 from there on, from an independent exact scan
        for (n, expect) in [(2, 215), (3, 1264)] {
            let mp = morse_polynomial(&JetParams::headline(n).unwrap()).unwrap();
            let d0 = positivity_threshold(&mp).unwrap();
            assert_eq!(d0, expect);
            assert!(mp.evaluate(d0) > Rational::zero());
            assert!(mp.evaluate(d0 - 1) <= Rational::zero());
        }
    }

    #[test]
    fn theorem_bound_values() {
        let b = theorem_bounds(2).unwrap();
        assert_eq!(b.monomial, rat(1224, 1));
        assert_eq!(b.specialised, rat(1224, 1));
        assert_eq!(b.kobayashi, rat(37179, 4));
        assert_eq!(theorem_bounds(3).unwrap().monomial, rat(37179, 4));
        assert!(theorem_bounds(1).is_err());
    }

    #[test]
    fn report_n2() {
        let r = bounds_report(&JetParams::headline(2).unwrap()).unwrap();
        assert!(r.passed());
        assert_eq!(r.threshold_2m, rat(1224, 1));
        assert_eq!(r.fujiwara_m, &r.d_eps * rat(16, 1));
        assert_eq!(r.scan_threshold, 215);
    }
}
