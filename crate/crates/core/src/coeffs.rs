//! Combinatorial coefficients `B_γ`, `C_α` and `Λ_{α,β}` of the Segre
//! series of the weighted jet bundle, each computed by a generating-function
//! route and by direct enumeration.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{factorial, geometric_factor, serde_exact, HSeries, Rational, Sign};
use crate::error::{Error, Result};

/// `B_γ`, `C_α` for fixed `(n, k)`, plus the normalisation `(k!)^n`, which is
/// kept apart from `B` and `C`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffTable {
    pub n: usize,
    pub k: usize,
    #[serde(with = "serde_exact::rational_vec")]
    pub b: Vec<Rational>,
    /// Indexed `0..=n`, zero above `k`.
    #[serde(with = "serde_exact::rational_vec")]
    pub c: Vec<Rational>,
    #[serde(with = "serde_exact::bigint")]
    pub k_factorial_pow: BigInt,
}

impl CoeffTable {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        let b = compute_b(n, k)?;
        let mut c = compute_c(k)?;
        c.resize(n + 1, Rational::zero());
        let k_factorial_pow = factorial(k as u64).pow(n as u32);
        Ok(CoeffTable {
            n,
            k,
            b,
            c,
            k_factorial_pow,
        })
    }

    /// Coefficient of `d^α h^β` in the Segre series of the weighted jet
    /// bundle: `(-1)^(β-α) B_(β-α) C_α / (k!)^n`, zero when `β < α`.
    pub fn lambda(&self, alpha: usize, beta: usize) -> Rational {
        if beta < alpha || beta > self.n {
            return Rational::zero();
        }
        let gamma = beta - alpha;
        let v =
            &self.b[gamma] * &self.c[alpha] / Rational::from_integer(self.k_factorial_pow.clone());
        if gamma % 2 == 1 {
            -v
        } else {
            v
        }
    }
}

/// `B_γ` for `γ = 0..=n`: coefficients of `Π_{l≤k} (Σ_{j≤n} (h/l)^j)^(n+2)`.
pub fn compute_b(n: usize, k: usize) -> Result<Vec<Rational>> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidParameter(format!(
            "B_gamma needs n >= 1 and k >= 1 (got n = {n}, k = {k})"
        )));
    }
    let mut acc = HSeries::one(n);
    for l in 1..=k as u64 {
        let f = geometric_factor(n, l, Sign::Plus)?.pow(n as u32 + 2);
        acc = acc.mul(&f)?;
    }
    Ok(acc.scalar_coeffs())
}

/// `B_γ` as the sum of `1/(u_1⋯u_γ)` over non-decreasing length-`γ`
/// sequences in the ordered set `S_{k,n+2}` (each `l ≤ k` repeated `n+2`
/// times with distinct indices).
pub fn compute_b_bruteforce(n: usize, k: usize, gamma: usize) -> Result<Rational> {
    if gamma > n {
        return Err(Error::GammaAboveDimension { gamma, n });
    }
    if k == 0 {
        return Err(Error::InvalidParameter("k must be >= 1".into()));
    }
    // S_{k,n+2} in order; only the value l is kept, the index is implicit
    // in the position.
    let set: Vec<u64> = (1..=k as u64)
        .flat_map(|l| std::iter::repeat_n(l, n + 2))
        .collect();
    let mut total = Rational::zero();
    sum_nondecreasing(&set, 0, gamma, &BigInt::one(), &mut total);
    Ok(total)
}

fn sum_nondecreasing(set: &[u64], start: usize, left: usize, prod: &BigInt, total: &mut Rational) {
    if left == 0 {
        *total += Rational::new(BigInt::one(), prod.clone());
        return;
    }
    for i in start..set.len() {
        let p = prod * BigInt::from(set[i]);
        sum_nondecreasing(set, i, left - 1, &p, total);
    }
}

/// `C_α` for `α = 0..=k`: coefficients of `Π_{l≤k} (1 + h/l)`.
pub fn compute_c(k: usize) -> Result<Vec<Rational>> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be >= 1".into()));
    }
    let mut c = vec![Rational::one()];
    for l in 1..=k as i64 {
        let inv = Rational::new(1.into(), l.into());
        let mut next = c.clone();
        next.push(Rational::zero());
        for (i, x) in c.iter().enumerate() {
            next[i + 1] += x * &inv;
        }
        c = next;
    }
    Ok(c)
}

/// `C_α` by summing `1/(l_1⋯l_α)` over all `α`-subsets of `{1..k}`.
pub fn compute_c_by_subsets(k: usize) -> Vec<Rational> {
    assert!(k < 32, "subset enumeration limited to k < 32");
    let mut c = vec![Rational::zero(); k + 1];
    for mask in 0u32..(1u32 << k) {
        let prod: BigInt = (0..k)
            .filter(|i| mask >> i & 1 == 1)
            .fold(BigInt::one(), |acc, i| acc * BigInt::from(i + 1));
        c[mask.count_ones() as usize] += Rational::new(BigInt::one(), prod);
    }
    c
}
