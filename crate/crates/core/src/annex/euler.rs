use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::lattice::{for_each_lattice_point, Accumulator};
use super::WeightedSplitBundle;
use crate::arith::{factorial, serde_exact, HSeries, Rational};
use crate::error::{Error, Result};

/// `binom(x + n, n)` extended polynomially in `x`, i.e. `χ(P^n, O(x))`.
fn chi_line(x: i64, n: usize) -> Option<i128> {
    let mut num: i128 = 1;
    for i in 1..=n as i64 {
        num = num.checked_mul((x + i) as i128)?;
    }
    let fact: i128 = (1..=n as i128).product();
    Some(num / fact)
}

#[cfg(test)]
fn chi_line_big(x: i64, n: usize) -> BigInt {
    let num: BigInt = (1..=n as i64).map(|i| BigInt::from(x + i)).product();
    num / factorial(n as u64)
}

/// `χ(P^n, S^m E) = Σ_{a·l = m} binom(Σ c_i l_i + n, n)` for
/// `E = ⊕ O(c_i)^{(a_i)}`. Negative degrees are allowed.
pub fn euler_char_symmetric(b: &WeightedSplitBundle, m: u64) -> BigInt {
    let weights: Vec<u64> = b.entries().iter().map(|e| e.weight).collect();
    let degrees = b.degrees();
    let mut acc = Accumulator::default();
    for_each_lattice_point(&weights, m, |l| {
        let x = l.iter().zip(&degrees).try_fold(0i64, |s, (&li, &c)| {
            s.checked_add(c.checked_mul(li as i64)?)
        });
        match x.and_then(|x| chi_line(x, b.n)) {
            Some(v) => acc.add_i128(v),
            None => {
                let x: BigInt = l
                    .iter()
                    .zip(&degrees)
                    .map(|(&li, &c)| BigInt::from(c) * BigInt::from(li))
                    .sum();
                let num: BigInt = (1..=b.n as i64).map(|i| &x + BigInt::from(i)).product();
                acc.add_big(num / factorial(b.n as u64));
            }
        }
    });
    acc.total()
}

/// Polynomial interpolation of `m ↦ χ(S^m E)` on multiples of the period.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiPolyFit {
    pub period: u64,
    /// `(m, χ)` pairs used for the fit.
    pub samples: Vec<(u64, String)>,
    /// Coefficients of `m^i`, ascending.
    #[serde(with = "serde_exact::rational_vec")]
    pub coeffs: Vec<Rational>,
    /// Coefficient of `m^{n+r-1}`.
    #[serde(with = "serde_exact::rational")]
    pub leading: Rational,
}

impl QuasiPolyFit {
    pub fn eval(&self, m: u64) -> Rational {
        let x = Rational::from_integer(m.into());
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * &x + c)
    }
}

/// Exact Newton interpolation through `(x_i, y_i)`, returned in the
/// monomial basis.
pub(crate) fn interpolate(xs: &[Rational], ys: &[Rational]) -> Vec<Rational> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    // Horner on the Newton form
    let mut poly = vec![dd[n - 1].clone()];
    for i in (0..n - 1).rev() {
        let mut next = vec![Rational::zero(); poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * &xs[i];
        }
        next[0] += &dd[i];
        poly = next;
    }
    poly
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WhitneyOutcome {
    pub bundle: WeightedSplitBundle,
    /// `(n+r-1)!` times the leading coefficient of the χ fit.
    #[serde(with = "serde_exact::rational")]
    pub lhs: Rational,
    /// `gcd/Π a_i · [Π_i Σ_p (c_i h / a_i)^p]_n`.
    #[serde(with = "serde_exact::rational")]
    pub rhs: Rational,
    pub equal: bool,
    pub fit: QuasiPolyFit,
}

/// Right-hand side of the weighted Whitney formula on `P^n` (degree map
/// `∫ h^n = 1`).
pub fn whitney_rhs(b: &WeightedSplitBundle) -> Rational {
    let n = b.n;
    let mut acc = HSeries::one(n);
    for e in b.entries() {
        let ratio = Rational::new(e.degree.into(), e.weight.into());
        let mut term = Rational::one();
        let mut coeffs = Vec::with_capacity(n + 1);
        for _ in 0..=n {
            coeffs.push(term.clone());
            term *= &ratio;
        }
        acc = acc
            .mul(&HSeries::from_scalars(n, coeffs))
            .expect("same truncation order");
    }
    let w = b.weights();
    let prod: BigInt = w.weights().iter().map(|&a| BigInt::from(a)).product();
    acc.coeff(n).coeff(0) * Rational::new(w.gcd().into(), prod)
}

/// Number of held-out samples checked after the fit.
const HELD_OUT: u64 = 2;

/// Numerical Whitney formula: the top Segre number read off the growth of
/// `χ(S^m E)` against the product of the summands' Segre series.
pub fn whitney_verify(b: &WeightedSplitBundle) -> Result<WhitneyOutcome> {
    let n = b.n;
    let w = b.weights();
    let r = w.r();
    let period = w.lcm();
    let count = (n + r) as u64;

    let chi_at = |j: u64| euler_char_symmetric(b, j * period);
    let xs: Vec<Rational> = (1..=count)
        .map(|j| Rational::from_integer((j * period).into()))
        .collect();
    let values: Vec<BigInt> = (1..=count).map(chi_at).collect();
    let ys: Vec<Rational> = values.iter().cloned().map(Rational::from_integer).collect();
    let coeffs = interpolate(&xs, &ys);
    let top = n + r - 1;
    let leading = coeffs.get(top).cloned().unwrap_or_else(Rational::zero);
    let fit = QuasiPolyFit {
        period,
        samples: (1..=count)
            .zip(&values)
            .map(|(j, v)| (j * period, v.to_string()))
            .collect(),
        coeffs,
        leading: leading.clone(),
    };
    for j in count + 1..=count + HELD_OUT {
        let m = j * period;
        let residual = Rational::from_integer(chi_at(j)) - fit.eval(m);
        if !residual.is_zero() {
            return Err(Error::InterpolationResidual {
                m,
                residual: residual.to_string(),
            });
        }
    }
    let lhs = leading * Rational::from_integer(factorial(top as u64));
    let rhs = whitney_rhs(b);
    Ok(WhitneyOutcome {
        bundle: b.clone(),
        equal: lhs == rhs,
        lhs,
        rhs,
        fit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    fn bundle(n: usize, pairs: &[(i64, u64)]) -> WeightedSplitBundle {
        WeightedSplitBundle::from_pairs(n, pairs).unwrap()
    }

    #[test]
    fn chi_line_matches_bigint_and_negative_degrees() {
        for n in 0..5 {
            for x in -8..8 {
                assert_eq!(BigInt::from(chi_line(x, n).unwrap()), chi_line_big(x, n));
            }
        }
        // χ(P^1, O(-2)) = -1, χ(P^2, O(-1)) = 0, χ(P^2, O(-4)) = 3
        assert_eq!(chi_line(-2, 1), Some(-1));
        assert_eq!(chi_line(-1, 2), Some(0));
        assert_eq!(chi_line(-4, 2), Some(3));
    }

    #[test]
    fn euler_characteristics() {
        for m in 0..15u64 {
            let b = bundle(1, &[(1, 1)]);
            assert_eq!(euler_char_symmetric(&b, m), BigInt::from(m + 1));
            let b = bundle(1, &[(1, 1), (0, 1)]);
            assert_eq!(
                euler_char_symmetric(&b, m),
                BigInt::from((m + 1) * (m + 2) / 2)
            );
            if m % 2 == 1 {
                assert!(euler_char_symmetric(&bundle(1, &[(1, 2)]), m).is_zero());
            }
        }
    }

    #[test]
    fn interpolation_is_exact() {
        let xs: Vec<Rational> = (1..=4).map(|x| rat_int(3 * x)).collect();
        let f = |x: &Rational| x * x * x * rat(1, 2) - x + rat(7, 1);
        let ys: Vec<Rational> = xs.iter().map(f).collect();
        assert_eq!(
            interpolate(&xs, &ys),
            vec![rat(7, 1), rat(-1, 1), rat(0, 1), rat(1, 2)]
        );
    }

    #[test]
    fn whitney_hand_examples() {
        let out = whitney_verify(&bundle(1, &[(1, 1), (0, 1)])).unwrap();
        assert_eq!((out.lhs.clone(), out.rhs.clone()), (rat(1, 1), rat(1, 1)));
        assert_eq!(out.fit.leading, rat(1, 2));
        for (c, a) in [(1, 1), (2, 3), (-1, 2), (5, 4)] {
            let out = whitney_verify(&bundle(1, &[(c, a)])).unwrap();
            assert!(out.equal);
            assert_eq!(out.lhs, rat(c, a as i64));
        }
        for n in 1..=3 {
            let out = whitney_verify(&bundle(n, &[(0, 2), (0, 3)])).unwrap();
            assert_eq!(out.lhs, rat(0, 1));
            assert_eq!(out.rhs, rat(0, 1));
        }
    }
}
