//! Numerical Whitney formula for weighted split bundles on projective
//! space, and the lattice, simplex and Euler-characteristic identities
//! behind it.

mod asymptotic;
mod euler;
mod lattice;
mod simplex;

pub use asymptotic::{
    default_tolerance, lattice_sum_asymptotic_check, lattice_sum_leading_term,
    remark_bracket_by_compositions, remark_bracket_by_sequences, remark_identity_check, remark_sum,
    ConvergenceReport, ConvergenceSample, RemarkReport, DEFAULT_TOLERANCE,
};
pub use euler::{euler_char_symmetric, whitney_rhs, whitney_verify, QuasiPolyFit, WhitneyOutcome};
pub use lattice::{
    for_each_lattice_point, lattice_point_count, lattice_sum_monomial, lattice_volume_squared,
};
pub use simplex::{beta_integral, simplex_monomial_integral, simplex_volume_ratio};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Positive integer weights `a_1..a_r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightSpec {
    a: Vec<u64>,
}

impl WeightSpec {
    pub fn new(a: Vec<u64>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::InvalidParameter(
                "weight list must be non-empty".into(),
            ));
        }
        if a.contains(&0) {
            return Err(Error::InvalidParameter(format!(
                "weights must be >= 1: {a:?}"
            )));
        }
        Ok(WeightSpec { a })
    }

    pub fn weights(&self) -> &[u64] {
        &self.a
    }

    pub fn r(&self) -> usize {
        self.a.len()
    }

    pub fn gcd(&self) -> u64 {
        self.a.iter().fold(0, |g, &x| g.gcd(&x))
    }

    pub fn lcm(&self) -> u64 {
        self.a.iter().fold(1, |l, &x| l.lcm(&x))
    }
}

/// One line-bundle summand `O(degree)` on `P^n` carrying a weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightedLine {
    pub degree: i64,
    pub weight: u64,
}

/// `O(c_1)^{(a_1)} ⊕ … ⊕ O(c_r)^{(a_r)}` over `P^n`. A higher-rank summand
/// is written as several entries with the same weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightedSplitBundle {
    pub n: usize,
    entries: Vec<WeightedLine>,
}

impl WeightedSplitBundle {
    pub fn new(n: usize, entries: Vec<WeightedLine>) -> Result<Self> {
        WeightSpec::new(entries.iter().map(|e| e.weight).collect())?;
        Ok(WeightedSplitBundle { n, entries })
    }

    /// Pairs `(degree, weight)`.
    pub fn from_pairs(n: usize, pairs: &[(i64, u64)]) -> Result<Self> {
        Self::new(
            n,
            pairs
                .iter()
                .map(|&(degree, weight)| WeightedLine { degree, weight })
                .collect(),
        )
    }

    pub fn entries(&self) -> &[WeightedLine] {
        &self.entries
    }

    pub fn weights(&self) -> WeightSpec {
        WeightSpec {
            a: self.entries.iter().map(|e| e.weight).collect(),
        }
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.entries.iter().map(|e| e.degree).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_spec_validation() {
        assert!(WeightSpec::new(vec![]).is_err());
        assert!(WeightSpec::new(vec![1, 0]).is_err());
        let w = WeightSpec::new(vec![4, 6, 10]).unwrap();
        assert_eq!((w.gcd(), w.lcm(), w.r()), (2, 60, 3));
    }

    #[test]
    fn bundle_validation() {
        assert!(WeightedSplitBundle::from_pairs(1, &[]).is_err());
        assert!(WeightedSplitBundle::from_pairs(1, &[(1, 0)]).is_err());
        let b = WeightedSplitBundle::from_pairs(2, &[(1, 2), (-1, 3)]).unwrap();
        assert_eq!(b.degrees(), vec![1, -1]);
        assert_eq!(b.weights().lcm(), 6);
    }
}
