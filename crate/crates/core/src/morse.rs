//! Intersection numbers `A^{N_k}`, `A^{N_k-1}·B` on the weighted
//! projectivised jet bundle and the Morse polynomial `P(n, d, ε)`.
//!
//! Two routes are kept side by side: the direct truncated-series
//! computation from the Segre series, and the closed form in terms of the
//! coefficients `B_γ`, `C_α`. [`morse_polynomial`] refuses to return unless
//! both agree exactly.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{
    binomial, degree_map, geometric_factor, rat_int, serde_exact, BinomialTable, HSeries, PolyD,
    Rational, Sign,
};
use crate::coeffs::CoeffTable;
use crate::error::{Error, Result};

/// Dimension `n` of the hypersurface, jet order `k` and twist `ε`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "JetParamsRepr")]
pub struct JetParams {
    pub n: usize,
    pub k: usize,
    #[serde(with = "serde_exact::rational")]
    pub eps: Rational,
}

#[derive(Deserialize)]
struct JetParamsRepr {
    n: usize,
    k: usize,
    #[serde(with = "serde_exact::rational")]
    eps: Rational,
}

impl TryFrom<JetParamsRepr> for JetParams {
    type Error = Error;
    fn try_from(r: JetParamsRepr) -> Result<Self> {
        JetParams::new(r.n, r.k, r.eps)
    }
}

impl JetParams {
    pub fn new(n: usize, k: usize, eps: Rational) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("n must be >= 2, got {n}")));
        }
        if k < 1 {
            return Err(Error::InvalidParameter("k must be >= 1".into()));
        }
        if eps <= Rational::zero() {
            return Err(Error::InvalidParameter(format!(
                "eps must be > 0, got {eps}"
            )));
        }
        Ok(JetParams { n, k, eps })
    }

    /// The twist `ε = 5n + 3` required by the slanted-vector-field criterion.
    pub fn default_eps(n: usize) -> Rational {
        rat_int(5 * n as i64 + 3)
    }

    /// `k = n`, `ε = 5n + 3`.
    pub fn headline(n: usize) -> Result<Self> {
        JetParams::new(n, n, Self::default_eps(n))
    }

    /// `N_k = n + nk - 1`, the dimension of the projectivised jet bundle.
    pub fn jet_dim(&self) -> usize {
        self.n + self.n * self.k - 1
    }
}

/// `s_•(T_k) = (k!)^{-n} Π_{l≤k} [Σ_{j≤n} (-h/l)^j]^{n+2} [1 + hd/l]`.
pub fn segre_series_tk(params: &JetParams) -> Result<HSeries> {
    let n = params.n;
    let mut acc = HSeries::one(n);
    for l in 1..=params.k as u64 {
        let geo = geometric_factor(n, l, Sign::Minus)?.pow(n as u32 + 2);
        let normal = HSeries::new(
            n,
            vec![
                PolyD::one(),
                PolyD::monomial(Rational::new(1.into(), l.into()), 1),
            ],
        );
        acc = acc.mul(&geo)?.mul(&normal)?;
    }
    let norm = Rational::new(
        BigInt::one(),
        crate::arith::factorial(params.k as u64).pow(n as u32),
    );
    Ok(acc.scale(&norm))
}

/// `A^{N_k} = Σ_{l=0}^{n} 2^l binom(N_k, l) ∫_X s_{n-l}(T_k) h^l`.
pub fn intersection_a_power(params: &JetParams) -> Result<PolyD> {
    let n = params.n;
    let big_n = params.jet_dim() as u64;
    let weights: Vec<Rational> = (0..=n as u64)
        .map(|l| rat_int(binomial(big_n, l) << l as usize))
        .collect();
    let s = segre_series_tk(params)?;
    Ok(degree_map(&s.mul(&HSeries::from_scalars(n, weights))?))
}

/// `A^{N_k-1}·B = Σ_{l=1}^{n} 2^{l-1} (2+ε) binom(N_k-1, l-1) ∫_X s_{n-l}(T_k) h^l`.
pub fn intersection_ab(params: &JetParams) -> Result<PolyD> {
    let n = params.n;
    let big_n = params.jet_dim() as u64;
    let two_eps = rat_int(2) + &params.eps;
    let weights: Vec<Rational> = (0..=n as u64)
        .map(|l| {
            if l == 0 {
                Rational::zero()
            } else {
                rat_int(binomial(big_n - 1, l - 1) << (l - 1) as usize) * &two_eps
            }
        })
        .collect();
    let s = segre_series_tk(params)?;
    Ok(degree_map(&s.mul(&HSeries::from_scalars(n, weights))?))
}

fn signed(x: Rational, odd: bool) -> Rational {
    if odd {
        -x
    } else {
        x
    }
}

/// `A^{N_k}` from the closed form in `B_γ`, `C_α`:
/// `(k!)^{-n} d Σ_α [Σ_{l≤n-α} binom(N_k,l) 2^l (-1)^{n-α-l} B_{n-α-l}] C_α d^α`.
pub fn a_power_closed(table: &CoeffTable, params: &JetParams) -> PolyD {
    let n = params.n;
    let binoms = BinomialTable::new(params.jet_dim());
    let big_n = params.jet_dim();
    let norm = Rational::from_integer(table.k_factorial_pow.clone());
    let coeffs = (0..=n)
        .map(|alpha| {
            let inner = (0..=n - alpha).fold(Rational::zero(), |acc, l| {
                let term = rat_int(binoms.get(big_n, l) << l) * &table.b[n - alpha - l];
                acc + signed(term, (n - alpha - l) % 2 == 1)
            });
            inner * &table.c[alpha] / &norm
        })
        .collect();
    PolyD::new(coeffs).shift(1)
}

/// `A^{N_k-1}·B` from the closed form in `B_γ`, `C_α`.
pub fn ab_closed(table: &CoeffTable, params: &JetParams) -> PolyD {
    let n = params.n;
    let big_n = params.jet_dim();
    let binoms = BinomialTable::new(big_n);
    let two_eps = rat_int(2) + &params.eps;
    let norm = Rational::from_integer(table.k_factorial_pow.clone());
    let coeffs = (0..=n)
        .map(|alpha| {
            let inner = (1..=n - alpha).fold(Rational::zero(), |acc, l| {
                let term = rat_int(binoms.get(big_n - 1, l - 1) << (l - 1))
                    * &two_eps
                    * &table.b[n - alpha - l];
                acc + signed(term, (n - alpha - l) % 2 == 1)
            });
            inner * &table.c[alpha] / &norm
        })
        .collect();
    PolyD::new(coeffs).shift(1)
}

/// `Q_α = (-1)^{n-α} C_α [B_{n-α} + Σ_{l=1}^{n-α} (2 - (2+ε)l) binom(N_k,l) (-1)^l 2^{l-1} B_{n-α-l}]`.
pub fn q_closed_form(table: &CoeffTable, params: &JetParams) -> Vec<Rational> {
    let n = params.n;
    let big_n = params.jet_dim();
    let binoms = BinomialTable::new(big_n);
    let two_eps = rat_int(2) + &params.eps;
    (0..=n)
        .map(|alpha| {
            let mut bracket = table.b[n - alpha].clone();
            for l in 1..=n - alpha {
                let factor = rat_int(2) - &two_eps * rat_int(l as i64);
                let term =
                    factor * rat_int(binoms.get(big_n, l) << (l - 1)) * &table.b[n - alpha - l];
                bracket += signed(term, l % 2 == 1);
            }
            signed(bracket * &table.c[alpha], (n - alpha) % 2 == 1)
        })
        .collect()
}

/// `a binom(b, a) = b binom(b-1, a-1)` for `1 <= a <= b`.
pub fn merging_identity_holds(a: u64, b: u64) -> bool {
    BigInt::from(a) * binomial(b, a) == BigInt::from(b) * binomial(b - 1, a - 1)
}

/// `P(n, d, ε) = A^{N_k} - N_k A^{N_k-1}·B` as a polynomial in `d`, together
/// with the closed-form coefficients `Q_α`.
///
/// `raw` keeps the `(k!)^{-n}` normalisation of the Segre series while `q`
/// does not: `(k!)^n · raw = d · Σ_α q[α] d^α`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MorseRepr")]
pub struct MorsePolynomial {
    pub params: JetParams,
    pub raw: PolyD,
    #[serde(with = "serde_exact::rational_vec")]
    pub q: Vec<Rational>,
}

#[derive(Deserialize)]
struct MorseRepr {
    params: JetParams,
    raw: PolyD,
    #[serde(with = "serde_exact::rational_vec")]
    q: Vec<Rational>,
}

impl TryFrom<MorseRepr> for MorsePolynomial {
    type Error = Error;
    fn try_from(r: MorseRepr) -> Result<Self> {
        let norm = crate::arith::factorial(r.params.k as u64).pow(r.params.n as u32);
        check_routes(&r.raw, &r.q, &norm)?;
        Ok(MorsePolynomial {
            params: r.params,
            raw: r.raw,
            q: r.q,
        })
    }
}

fn check_routes(raw: &PolyD, q: &[Rational], k_factorial_pow: &BigInt) -> Result<()> {
    let scaled = raw.scale(&Rational::from_integer(k_factorial_pow.clone()));
    let closed = PolyD::new(q.to_vec()).shift(1);
    let len = scaled.coeffs().len().max(closed.coeffs().len());
    for power in 0..len {
        let (a, b) = (scaled.coeff(power), closed.coeff(power));
        if a != b {
            return Err(Error::RouteMismatch {
                power,
                series: a.to_string(),
                closed: b.to_string(),
            });
        }
    }
    Ok(())
}

pub fn morse_polynomial(params: &JetParams) -> Result<MorsePolynomial> {
    let table = CoeffTable::new(params.n, params.k)?;
    morse_polynomial_with(&table, params)
}

/// As [`morse_polynomial`], reusing an existing coefficient table.
pub fn morse_polynomial_with(table: &CoeffTable, params: &JetParams) -> Result<MorsePolynomial> {
    if table.n != params.n || table.k != params.k {
        return Err(Error::InvalidParameter(format!(
            "coefficient table is for (n, k) = ({}, {}), params are ({}, {})",
            table.n, table.k, params.n, params.k
        )));
    }
    let a = intersection_a_power(params)?;
    let ab = intersection_ab(params)?;
    let raw = &a - &ab.scale(&rat_int(params.jet_dim() as i64));
    let q = q_closed_form(table, params);
    check_routes(&raw, &q, &table.k_factorial_pow)?;
    Ok(MorsePolynomial {
        params: params.clone(),
        raw,
        q,
    })
}

impl MorsePolynomial {
    /// Exact `P(n, d, ε)` at an integer `d`.
    pub fn evaluate(&self, d: u64) -> Rational {
        self.raw.eval(&rat_int(d))
    }

    pub fn evaluate_at(&self, d: &Rational) -> Rational {
        self.raw.eval(d)
    }

    /// `Σ_α q[α] t^α`, whose sign agrees with `P` for `t > 0`.
    pub fn reduced(&self) -> PolyD {
        PolyD::new(self.q.clone())
    }
}
