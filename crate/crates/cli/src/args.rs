use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "padic-bm", version, about = "Brownian motion on Q_p^d: closed forms and Monte-Carlo checks")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Serialize)]
pub struct Common {
    /// Prime p.
    #[arg(long = "p", global = true, default_value_t = 2)]
    pub p: u32,
    /// Dimension d.
    #[arg(long = "d", global = true, default_value_t = 2)]
    pub d: u32,
    /// Diffusion exponent b > 0.
    #[arg(long = "b", global = true, default_value_t = 1.0)]
    pub b: f64,
    /// Diffusion constant sigma > 0.
    #[arg(long, global = true, default_value_t = 1.0)]
    pub sigma: f64,
    /// Random seed (decimal or 0x-prefixed hex).
    #[arg(long, global = true, default_value = "0x5EED_CAFE", value_parser = parse_seed)]
    pub seed: u64,
    /// Number of independent random streams the samples are split over.
    #[arg(long, global = true, env = "PADIC_WORKERS", default_value_t = 8)]
    pub workers: usize,
    /// Relative truncation tolerance of the series.
    #[arg(long, global = true, default_value_t = 1e-15)]
    pub eps: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let clean = s.replace('_', "");
    let parsed = match clean.strip_prefix("0x").or_else(|| clean.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => clean.parse(),
    };
    parsed.map_err(|e| format!("bad seed {s:?}: {e}"))
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Radial law of X_t over a level range, or the density at one point.
    Density(DensityArgs),
    /// Survival P(sup_{s<=T} ||X_s|| <= p^R) by simulation against the closed form.
    Exit(ExitArgs),
    /// P(X^(1)_t in B(r) | ||(X^(2),...,X^(d))|| = p^R) by rejection sampling.
    Conditional(ConditionalArgs),
    /// Law of one coordinate's norm against the one-dimensional law.
    Marginals(MarginalArgs),
    /// alpha_d, Gamma and both survival functions over a range of d.
    Limits(LimitArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct DensityArgs {
    #[arg(long = "t")]
    pub t: f64,
    #[arg(long, default_value_t = -10, allow_hyphen_values = true)]
    pub kmin: i32,
    #[arg(long, default_value_t = 10, allow_hyphen_values = true)]
    pub kmax: i32,
    /// Evaluate the density at this point, e.g. `2^-1:101,0`.
    #[arg(long = "x")]
    pub x: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KindArg {
    Maxnorm,
    Product,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodArg {
    IncrementMax,
    FullPath,
}

#[derive(Args, Debug, Serialize)]
pub struct ExitArgs {
    #[arg(long, value_enum, default_value_t = KindArg::Maxnorm)]
    pub kind: KindArg,
    #[arg(long = "T", default_value_t = 1.0)]
    pub horizon: f64,
    #[arg(long = "R", default_value_t = 0, allow_hyphen_values = true)]
    pub r_level: i32,
    #[arg(long = "n", default_value_t = 100_000)]
    pub n_samples: u64,
    #[arg(long, default_value_t = 64)]
    pub n_grid: usize,
    #[arg(long, value_enum, default_value_t = MethodArg::IncrementMax)]
    pub method: MethodArg,
}

#[derive(Args, Debug, Serialize)]
pub struct ConditionalArgs {
    /// One or more times.
    #[arg(long = "t", default_value = "1", num_args = 1.., value_delimiter = ',')]
    pub t: Vec<f64>,
    #[arg(long = "r", default_value_t = 0, allow_hyphen_values = true)]
    pub r: i32,
    #[arg(long = "R", default_value_t = 0, allow_hyphen_values = true)]
    pub r_level: i32,
    #[arg(long = "n", default_value_t = 100_000)]
    pub n_samples: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct MarginalArgs {
    #[arg(long = "t", default_value_t = 1.0)]
    pub t: f64,
    /// Coordinate index, 1-based.
    #[arg(long, default_value_t = 1)]
    pub component: usize,
    #[arg(long = "n", default_value_t = 100_000)]
    pub n_samples: u64,
    /// Minimum expected count per chi-square cell.
    #[arg(long, default_value_t = 5)]
    pub pooling_min: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct LimitArgs {
    #[arg(long, default_value_t = 1)]
    pub dmin: u32,
    #[arg(long, default_value_t = 20)]
    pub dmax: u32,
    #[arg(long = "T", default_value_t = 1.0)]
    pub horizon: f64,
    #[arg(long = "R", default_value_t = 0, allow_hyphen_values = true)]
    pub r_level: i32,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds() {
        assert_eq!(parse_seed("0x5EED_CAFE").unwrap(), padic_brownian::sim::DEFAULT_SEED);
        assert_eq!(parse_seed("17").unwrap(), 17);
        assert!(parse_seed("0xZZ").is_err());
    }
}
