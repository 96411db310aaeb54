use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact Wiener indices of minuscule lattices.
#[derive(Debug, Parser)]
#[command(name = "wiener", version, about)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write output to this file instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// Lift the default size caps.
    #[arg(long, global = true)]
    pub unsafe_caps: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Counts, Wiener indices, second moments and exact mean distances.
    Table(TableArgs),
    /// Run self-check suites; exits 3 if any check fails.
    Verify(VerifyArgs),
    /// Dump the coefficients of a generating function.
    Series(SeriesArgs),
    /// Monte Carlo estimates of scaled distance moments.
    Sample(SampleArgs),
    /// Build a minuscule lattice from a Cartan type.
    Weyl(WeylArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableFamily {
    Rect,
    Stair,
    Diamond,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, value_enum)]
    pub family: TableFamily,
    /// Row count range, `a..b` (inclusive) or a single value.
    #[arg(long, value_parser = parse_range)]
    pub m: Option<RangeInclusive<u64>>,
    /// Column count range.
    #[arg(long, value_parser = parse_range)]
    pub k: Option<RangeInclusive<u64>>,
    /// Staircase size range.
    #[arg(long, value_parser = parse_range)]
    pub n: Option<RangeInclusive<u64>>,
    /// Diamond tail length range.
    #[arg(long, value_parser = parse_range)]
    pub t: Option<RangeInclusive<u64>>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// all, bijection, series, formulas, weyl or moments.
    #[arg(long)]
    pub suite: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Fixed,
    Closed,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    /// M, Mbold, W, Wbold, N, Nbold, V, Vbold, M2 or W2.
    #[arg(long)]
    pub name: String,
    /// Truncation order.
    #[arg(long, default_value_t = 20)]
    pub order: usize,
    /// Construction route.
    #[arg(long, value_enum, default_value_t = RouteArg::Fixed)]
    pub route: RouteArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SampleFamilyArg {
    Rect,
    Stair,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long, value_enum)]
    pub family: SampleFamilyArg,
    #[arg(long, default_value_t = 400)]
    pub n: u64,
    /// Aspect ratio m/k for rectangles, e.g. `1` or `3/2`.
    #[arg(long, default_value = "1")]
    pub alpha: String,
    #[arg(long, default_value_t = 3)]
    pub r_max: u32,
    #[arg(long = "samples", default_value_t = 100_000)]
    pub num_samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct WeylArgs {
    /// A, B, C, D, E6 or E7.
    #[arg(long = "type")]
    pub kind: String,
    /// Rank; implied for E6 and E7.
    #[arg(long)]
    pub rank: Option<usize>,
    /// 1-based fundamental weight node.
    #[arg(long)]
    pub node: Option<usize>,
}

pub fn parse_range(s: &str) -> Result<RangeInclusive<u64>, String> {
    let parse = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("{t:?}: {e}"));
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?);
            if a > b {
                return Err(format!("empty range {s}"));
            }
            Ok(a..=b)
        }
        None => parse(s).map(|v| v..=v),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..3"), Ok(1..=3));
        assert_eq!(parse_range("1..=3"), Ok(1..=3));
        assert_eq!(parse_range("4"), Ok(4..=4));
        assert!(parse_range("3..1").is_err());
        assert!(parse_range("a..2").is_err());
    }
}
