//! Exact rational, polynomial and truncated-series arithmetic.
//!
//! Everything in this layer is exact. Coefficients of [`HSeries`] are
//! polynomials in the formal hypersurface degree `d`, so a single series
//! computation serves every value of `d`.

mod binom;
mod poly;
mod rational;
mod series;

pub use binom::{binomial, BinomialTable};
pub use poly::PolyD;
pub use rational::{
    abs, factorial, parse_rational, rat, rat_int, render_rational, to_f64, Rational,
};
pub use series::{degree_map, geometric_factor, HSeries, Sign};

/// Serde helpers writing rationals as exact `"p/q"` strings.
pub mod serde_exact {
    pub use super::rational::serde_bigint as bigint;
    pub use super::rational::serde_rational as rational;
    pub use super::rational::serde_rational_opt as rational_opt;
    pub use super::rational::serde_rational_vec as rational_vec;
}
