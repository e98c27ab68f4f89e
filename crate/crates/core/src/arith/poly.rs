use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::rational::Rational;

/// Dense univariate polynomial in the hypersurface degree `d`.
///
/// `coeffs[i]` is the coefficient of `d^i`. Trailing zeros are never stored,
/// so the zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PolyD {
    #[serde(with = "super::rational::serde_rational_vec")]
    coeffs: Vec<Rational>,
}

impl PolyD {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyD { coeffs }
    }

    pub fn zero() -> Self {
        PolyD { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        PolyD::new(vec![c])
    }

    pub fn one() -> Self {
        PolyD::constant(Rational::from_integer(1.into()))
    }

    /// `c * d^power`
    pub fn monomial(c: Rational, power: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); power + 1];
        coeffs[power] = c;
        PolyD::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `d^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: &Rational) -> PolyD {
        if c.is_zero() {
            return PolyD::zero();
        }
        PolyD {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplies by `d^k`.
    pub fn shift(&self, k: usize) -> PolyD {
        if self.is_zero() {
            return PolyD::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        PolyD { coeffs }
    }

    /// Horner evaluation.
    pub fn eval(&self, d: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * d + c)
    }
}

impl fmt::Display for PolyD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*d")?,
                _ => write!(f, "({c})*d^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &PolyD {
    type Output = PolyD;
    fn add(self, rhs: &PolyD) -> PolyD {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        PolyD::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &PolyD {
    type Output = PolyD;
    fn sub(self, rhs: &PolyD) -> PolyD {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        PolyD::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &PolyD {
    type Output = PolyD;
    fn neg(self) -> PolyD {
        PolyD {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &PolyD {
    type Output = PolyD;
    fn mul(self, rhs: &PolyD) -> PolyD {
        if self.is_zero() || rhs.is_zero() {
            return PolyD::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyD::new(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for PolyD {
            type Output = PolyD;
            fn $m(self, rhs: PolyD) -> PolyD {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn p(c: &[(i64, i64)]) -> PolyD {
        PolyD::new(c.iter().map(|&(a, b)| rat(a, b)).collect())
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let x = p(&[(1, 1), (0, 1), (0, 1)]);
        assert_eq!(x.degree(), Some(0));
        assert!(p(&[(0, 1)]).is_zero());
        assert_eq!(PolyD::zero().degree(), None);
    }

    #[test]
    fn arithmetic() {
        let a = p(&[(1, 1), (1, 1)]); // 1 + d
        let b = p(&[(-1, 1), (1, 1)]); // -1 + d
        assert_eq!(&a * &b, p(&[(-1, 1), (0, 1), (1, 1)]));
        assert!((&a - &a).is_zero());
        assert_eq!(&a + &b, p(&[(0, 1), (2, 1)]));
        assert_eq!(a.shift(2), p(&[(0, 1), (0, 1), (1, 1), (1, 1)]));
    }

    #[test]
    fn horner() {
        let a = p(&[(1, 2), (0, 1), (3, 1)]);
        assert_eq!(a.eval(&rat(2, 1)), rat(25, 2));
        assert_eq!(PolyD::zero().eval(&rat(7, 1)), rat(0, 1));
    }
}
