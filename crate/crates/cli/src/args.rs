//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "teugels",
    version,
    about = "Kendall polynomials, additive-process simulation and martingale checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write Γ_0..Γ_N as canonical JSON and text, checked against the
    /// set-partition oracle.
    Gamma(GammaArgs),
    /// Validate a spec, simulate, and run the full verification suite.
    Verify(VerifyArgs),
    /// Simulate a batch of paths and summarize the endpoint law.
    Simulate(SimulateArgs),
    /// λ tables and Charlier expansion checks for the Cox example.
    Charlier(CharlierArgs),
    /// Convert between moments and cumulants.
    Convert(ConvertArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output directory; without it the text report goes to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Comma-separated output formats.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "json,text")]
    pub format: Vec<Format>,
}

#[derive(Debug, Args)]
pub struct GammaArgs {
    #[arg(long, default_value_t = 12)]
    pub max_order: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CharlierArgs {
    #[arg(long, default_value_t = 6)]
    pub max_order: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    #[arg(long, value_enum)]
    pub to: Target,
    /// JSON list of numbers or rational strings such as "1/3".
    #[arg(long, conflicts_with = "input")]
    pub values: Option<String>,
    /// File holding the JSON list.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Write the result here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Cumulants,
    Moments,
}

/// Options shared by `simulate` and `verify`.
#[derive(Debug, Args)]
pub struct SimulationArgs {
    /// Process spec in JSON.
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Grid cells per unit time.
    #[arg(long, default_value_t = 1024)]
    pub grid_cells: usize,
    #[arg(long, default_value_t = 1.0)]
    pub horizon: f64,
    /// Worker threads; results do not depend on it.
    #[arg(long)]
    pub workers: Option<usize>,
    /// Write the first N simulated paths.
    #[arg(long, default_value_t = 0)]
    pub dump_paths: usize,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub sim: SimulationArgs,
    #[arg(long, default_value_t = 10_000)]
    pub paths: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub sim: SimulationArgs,
    /// Orders of M^(n) to test, as a list or range ("1-5", "1,2,4").
    #[arg(long, default_value = "1-5")]
    pub orders: String,
    /// Orders n for the (Y^(n))² - F_{2n} test.
    #[arg(long, default_value = "1,2")]
    pub compensator_orders: String,
    /// Orders of the Charlier cross-check; run only on unit-jump Cox specs.
    #[arg(long, default_value = "1-4")]
    pub charlier_orders: String,
    /// Orders of the decomposition residual study (pure-jump specs only).
    #[arg(long, default_value = "1-4")]
    pub residual_orders: String,
    /// Paths for the statistical tests.
    #[arg(long, default_value_t = 100_000)]
    pub paths: u64,
    /// Paths for the pathwise covariation check.
    #[arg(long, default_value_t = 1000)]
    pub covariation_paths: u64,
    /// Paths for the decomposition residual study.
    #[arg(long, default_value_t = 100)]
    pub residual_paths: u64,
    /// Subdivision level 2^L of the grid for the finer residual run; the
    /// coarser run uses L - 1.
    #[arg(long, default_value_t = 4)]
    pub refine: u32,
    /// Time pairs "s:t" separated by commas; default (H/4, H/2), (H/2, H).
    #[arg(long)]
    pub pairs: Option<String>,
    /// Pass threshold in standard errors.
    #[arg(long, default_value_t = 4.0)]
    pub threshold: f64,
    /// Add the uncompensated X^(2), which the suite must reject.
    #[arg(long)]
    pub negative_control: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Parses "1-5", "1,3,4" or a mix such as "1-3,6".
pub fn parse_orders(text: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let bad = || format!("bad order list {text:?}");
        match part.split_once('-') {
            Some((a, b)) => {
                let (a, b): (usize, usize) = (
                    a.trim().parse().map_err(|_| bad())?,
                    b.trim().parse().map_err(|_| bad())?,
                );
                if a > b {
                    return Err(bad());
                }
                out.extend(a..=b);
            }
            None => out.push(part.parse().map_err(|_| bad())?),
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Parses "0.25:0.5,0.5:1".
pub fn parse_pairs(text: &str) -> Result<Vec<(f64, f64)>, String> {
    text.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            let (s, t) = p
                .split_once(':')
                .ok_or_else(|| format!("pair {p:?} must look like s:t"))?;
            let s: f64 = s.trim().parse().map_err(|_| format!("bad time in {p:?}"))?;
            let t: f64 = t.trim().parse().map_err(|_| format!("bad time in {p:?}"))?;
            Ok((s, t))
        })
        .collect()
}
