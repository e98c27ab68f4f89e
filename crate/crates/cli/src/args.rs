use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ggmorse_core::{parse_rational, Rational};

#[derive(Parser, Debug)]
#[command(
    name = "ggmorse",
    version,
    about = "Exact Morse-inequality bounds for Green-Griffiths jet spaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Degree bounds, positivity thresholds and lemma verdicts for k = n.
    Bound(BoundArgs),
    /// The intersection polynomial P(n, d, eps) and its coefficients Q_a.
    Morse(MorseArgs),
    /// The combinatorial coefficients B_g and C_a.
    Coeffs(CoeffsArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Shorthand for `verify --suite lemmas`.
    VerifyLemmas(VerifyArgs),
    /// Shorthand for `verify --suite whitney`.
    VerifyWhitney(VerifyArgs),
    /// Lattice-sum, simplex and weighted Whitney computations for one weight vector.
    Annex(AnnexArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    #[arg(long, conflicts_with = "n_range", required_unless_present = "n_range")]
    pub n: Option<usize>,
    /// Inclusive range such as `2..6`.
    #[arg(long, value_parser = parse_range)]
    pub n_range: Option<RangeInclusive<usize>>,
    /// Rational `p/q`; defaults to 5n+3 for each n.
    #[arg(long, value_parser = parse_eps)]
    pub eps: Option<Rational>,
    /// Evaluate P at this degree.
    #[arg(long)]
    pub d: Option<u64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct MorseArgs {
    #[arg(long)]
    pub n: usize,
    /// Jet order; defaults to n.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, value_parser = parse_eps)]
    pub eps: Option<Rational>,
    #[arg(long)]
    pub d: Option<u64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct CoeffsArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: Option<usize>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Coeffs,
    Lemmas,
    Morse,
    Whitney,
    Annex,
    Fujiwara,
    All,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Option<Suite>,
    /// Single n for the coeffs, lemmas and morse suites.
    #[arg(long, conflicts_with = "n_range")]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, value_parser = parse_range)]
    pub n_range: Option<RangeInclusive<usize>>,
    #[arg(long, value_parser = parse_eps)]
    pub eps: Option<Rational>,
    #[arg(long)]
    pub max_n: Option<usize>,
    #[arg(long)]
    pub max_r: Option<usize>,
    #[arg(long)]
    pub max_weight: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    pub degree_min: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub degree_max: Option<i64>,
    /// Random polynomials for the fujiwara suite.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct AnnexArgs {
    /// Comma-separated positive weights.
    #[arg(long, value_delimiter = ',', required = true)]
    pub weights: Vec<u64>,
    /// Comma-separated monomial exponents, one per weight (default all zero).
    #[arg(long, value_delimiter = ',')]
    pub p: Vec<u32>,
    /// Comma-separated m values for the lattice-sum convergence check.
    #[arg(long, value_delimiter = ',')]
    pub m: Vec<u64>,
    #[arg(long, value_parser = parse_eps)]
    pub tolerance: Option<Rational>,
    /// Comma-separated line-bundle degrees, one per weight; enables the Whitney check.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        requires = "n"
    )]
    pub degrees: Vec<i64>,
    /// Projective dimension for the Whitney check.
    #[arg(long)]
    pub n: Option<usize>,
    #[command(flatten)]
    pub out: OutputArgs,
}

pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected a range like 2..6, got {s:?}"))?;
    let lo: usize = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let hi: usize = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok(lo..=hi)
}

fn parse_eps(s: &str) -> Result<Rational, String> {
    let r = parse_rational(s).map_err(|e| e.to_string())?;
    if r <= Rational::from_integer(0.into()) {
        return Err(format!("{s} must be positive"));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2..6").unwrap(), 2..=6);
        assert_eq!(parse_range("3..=3").unwrap(), 3..=3);
        assert!(parse_range("6..2").is_err());
        assert!(parse_range("7").is_err());
    }

    #[test]
    fn eps_must_be_positive() {
        assert!(parse_eps("13").is_ok());
        assert!(parse_eps("-1/2").is_err());
        assert!(parse_eps("0").is_err());
        assert!(parse_eps("1/0").is_err());
    }
}
