use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("truncation orders differ: {left} vs {right}")]
    TruncationMismatch { left: usize, right: usize },

    #[error("geometric factor needs l >= 1")]
    ZeroDenominator,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("enumeration refused for gamma = {gamma} > n = {n}: per-factor truncation would bind")]
    GammaAboveDimension { gamma: usize, n: usize },

    #[error("operation requires k = n (got n = {n}, k = {k})")]
    JetOrderNotDimension { n: usize, k: usize },

    #[error("series route and closed form disagree at d^{power}: {series} != {closed}")]
    RouteMismatch {
        power: usize,
        series: String,
        closed: String,
    },

    #[error("Fujiwara hypothesis violated at j = {j}: |a_(n-j)| = {coeff} > M^j a_n = {bound}")]
    FujiwaraHypothesis {
        j: usize,
        coeff: String,
        bound: String,
    },

    #[error("leading coefficient must be positive, got {0}")]
    NonPositiveLeading(String),

    #[error("interpolation residual {residual} at held-out sample m = {m}")]
    InterpolationResidual { m: u64, residual: String },

    #[error("cannot parse rational {0:?}")]
    ParseRational(String),
}

pub type Result<T> = std::result::Result<T, Error>;
