use num_bigint::BigInt;

use super::WeightSpec;
use crate::arith::{factorial, Rational};
use crate::error::{Error, Result};

/// `vol(Δ_a) / vol(C_H) = gcd / ((r-1)! Π a_i)`, where
/// `Δ_a = {t ≥ 0 : Σ a_i t_i = 1}`.
pub fn simplex_volume_ratio(w: &WeightSpec) -> Result<Rational> {
    if w.r() < 2 {
        return Err(Error::InvalidParameter(
            "simplex volume needs r >= 2 weights".into(),
        ));
    }
    let prod: BigInt = w.weights().iter().map(|&a| BigInt::from(a)).product();
    Ok(Rational::new(
        w.gcd().into(),
        factorial(w.r() as u64 - 1) * prod,
    ))
}

/// Mean of `t_1^{p_1} ⋯ t_r^{p_r}` under the uniform probability measure on
/// `Δ_a`: `(r-1)! Π p_i! / (Σ p_i + r - 1)! · Π a_i^{-p_i}`.
pub fn simplex_monomial_integral(w: &WeightSpec, p: &[u32]) -> Result<Rational> {
    if w.r() < 2 {
        return Err(Error::InvalidParameter(
            "simplex integral needs r >= 2 weights".into(),
        ));
    }
    if p.len() != w.r() {
        return Err(Error::InvalidParameter(format!(
            "{} exponents for {} weights",
            p.len(),
            w.r()
        )));
    }
    let r = w.r() as u64;
    let total: u64 = p.iter().map(|&x| x as u64).sum();
    let num: BigInt = factorial(r - 1) * p.iter().map(|&x| factorial(x as u64)).product::<BigInt>();
    let scale: BigInt = w
        .weights()
        .iter()
        .zip(p)
        .map(|(&a, &pi)| BigInt::from(a).pow(pi))
        .product();
    Ok(Rational::new(num, factorial(total + r - 1) * scale))
}

/// `∫_0^1 t^a (1-t)^b dt = a! b! / (a+b+1)!`.
pub fn beta_integral(a: u64, b: u64) -> Rational {
    Rational::new(factorial(a) * factorial(b), factorial(a + b + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn w(a: &[u64]) -> WeightSpec {
        WeightSpec::new(a.to_vec()).unwrap()
    }

    #[test]
    fn volume_ratios() {
        assert_eq!(simplex_volume_ratio(&w(&[1, 1])).unwrap(), rat(1, 1));
        assert_eq!(simplex_volume_ratio(&w(&[1, 1, 1])).unwrap(), rat(1, 2));
        assert_eq!(simplex_volume_ratio(&w(&[2, 3])).unwrap(), rat(1, 6));
        assert!(simplex_volume_ratio(&w(&[3])).is_err());
    }

    #[test]
    fn integrals() {
        assert_eq!(
            simplex_monomial_integral(&w(&[2, 3]), &[0, 0]).unwrap(),
            rat(1, 1)
        );
        assert_eq!(
            simplex_monomial_integral(&w(&[1, 1]), &[1, 0]).unwrap(),
            rat(1, 2)
        );
        assert_eq!(
            simplex_monomial_integral(&w(&[1, 1]), &[1, 1]).unwrap(),
            rat(1, 6)
        );
        assert!(simplex_monomial_integral(&w(&[1, 1]), &[1]).is_err());
        assert!(simplex_monomial_integral(&w(&[1]), &[1]).is_err());
    }

    #[test]
    fn beta_values() {
        assert_eq!(beta_integral(0, 0), rat(1, 1));
        assert_eq!(beta_integral(1, 1), rat(1, 6));
        for a in 0..10 {
            assert_eq!(beta_integral(a, 0), rat(1, a as i64 + 1));
        }
    }
}
