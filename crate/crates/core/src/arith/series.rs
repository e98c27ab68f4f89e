use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::poly::PolyD;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Truncated power series in the hyperplane class `h`, with coefficients
/// polynomial in `d`.
///
/// This is the numerical Chow ring `Q[d][h]/(h^(n+1))` of a degree-`d`
/// hypersurface of dimension `n = trunc`; [`degree_map`] is its degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HSeries {
    trunc: usize,
    coeffs: Vec<PolyD>,
}

/// Sign of `h` in a geometric factor `Σ (±h/l)^j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl HSeries {
    /// Builds a series from the given coefficients; missing ones are zero,
    /// and coefficients beyond `trunc` are dropped.
    pub fn new(trunc: usize, mut coeffs: Vec<PolyD>) -> Self {
        coeffs.resize(trunc + 1, PolyD::zero());
        HSeries { trunc, coeffs }
    }

    pub fn zero(trunc: usize) -> Self {
        HSeries::new(trunc, Vec::new())
    }

    pub fn one(trunc: usize) -> Self {
        HSeries::new(trunc, vec![PolyD::one()])
    }

    /// Series with constant (d-free) coefficients.
    pub fn from_scalars(trunc: usize, coeffs: Vec<Rational>) -> Self {
        HSeries::new(trunc, coeffs.into_iter().map(PolyD::constant).collect())
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn coeffs(&self) -> &[PolyD] {
        &self.coeffs
    }

    /// Coefficient of `h^j`; zero past the truncation order.
    pub fn coeff(&self, j: usize) -> PolyD {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    /// Constant terms of every coefficient, i.e. the series at `d = 0`.
    pub fn scalar_coeffs(&self) -> Vec<Rational> {
        self.coeffs.iter().map(|p| p.coeff(0)).collect()
    }

    pub fn scale(&self, c: &Rational) -> HSeries {
        HSeries {
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn add(&self, other: &HSeries) -> Result<HSeries> {
        self.check(other)?;
        Ok(HSeries {
            trunc: self.trunc,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Product truncated at `h^trunc`.
    pub fn mul(&self, other: &HSeries) -> Result<HSeries> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &HSeries) -> HSeries {
        let n = self.trunc;
        let mut out = vec![PolyD::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        HSeries {
            trunc: n,
            coeffs: out,
        }
    }

    /// Binary exponentiation; `a^0` is the unit series.
    pub fn pow(&self, mut e: u32) -> HSeries {
        let mut acc = HSeries::one(self.trunc);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    fn check(&self, other: &HSeries) -> Result<()> {
        if self.trunc != other.trunc {
            return Err(Error::TruncationMismatch {
                left: self.trunc,
                right: other.trunc,
            });
        }
        Ok(())
    }
}

/// `Σ_{j=0}^{n} (±h/l)^j`, truncated at `h^n`.
pub fn geometric_factor(n: usize, l: u64, sign: Sign) -> Result<HSeries> {
    if l == 0 {
        return Err(Error::ZeroDenominator);
    }
    let ratio = match sign {
        Sign::Plus => Rational::new(1.into(), l.into()),
        Sign::Minus => Rational::new((-1).into(), l.into()),
    };
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut term = Rational::from_integer(1.into());
    for _ in 0..=n {
        coeffs.push(term.clone());
        term *= &ratio;
    }
    Ok(HSeries::from_scalars(n, coeffs))
}

/// Degree map of the hypersurface: `d` times the coefficient of `h^trunc`,
/// since `∫_X h^n = d`.
pub fn degree_map(s: &HSeries) -> PolyD {
    let top = s.coeff(s.trunc);
    if top.coeffs().iter().all(Zero::is_zero) {
        return PolyD::zero();
    }
    top.shift(1)
}
