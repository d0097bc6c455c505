use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cubic_beta::dist::{Family, ModelParams};

#[derive(Debug, Parser)]
#[command(
    name = "cbeta",
    version,
    about = "Fit, sample and tabulate cubic-transformed beta distributions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit one or more families to a column of a CSV file.
    Fit(FitArgs),
    /// Draw random variates, one per line.
    Sample(SampleArgs),
    /// Tabulate x, pdf and cdf on an equally spaced grid.
    PdfGrid(GridArgs),
    /// Tabulate x and cdf on an equally spaced grid.
    CdfGrid(GridArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Text,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[arg(long, short)]
    pub input: PathBuf,
    /// Column name (requires a header row) or 0-based index.
    #[arg(long, default_value = "0")]
    pub column: String,
    /// Range of the raw data, rescaled onto (0, 1).
    #[arg(long, value_parser = parse_interval, default_value = "0,1")]
    pub interval: (f64, f64),
    #[arg(long, value_delimiter = ',', value_parser = parse_family,
          default_value = "beta,qbeta,sqbeta,cbeta,scbeta")]
    pub families: Vec<Family>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Move values on the interval ends inside by 1/(2n) instead of failing.
    #[arg(long)]
    pub nudge_boundary: bool,
    /// Objective evaluations allowed per optimiser run.
    #[arg(long, default_value_t = 40_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_evals: u64,
}

#[derive(Debug, Args)]
pub struct DistArgs {
    #[arg(long, value_parser = parse_family)]
    pub family: Family,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub delta: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub dist: DistArgs,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[command(flatten)]
    pub dist: DistArgs,
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..), default_value_t = 101)]
    pub grid_points: u64,
    /// `text` is the same as `tsv` here.
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse::<Family>().map_err(|e| e.to_string())
}

fn parse_interval(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s
        .split_once(',')
        .ok_or_else(|| format!("expected 'lo,hi', got '{s}'"))?;
    let lo: f64 = lo.trim().parse().map_err(|e| format!("lo: {e}"))?;
    let hi: f64 = hi.trim().parse().map_err(|e| format!("hi: {e}"))?;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(format!("interval needs finite lo < hi, got ({lo}, {hi})"));
    }
    Ok((lo, hi))
}

impl DistArgs {
    /// Parameters for `family`, requiring exactly the flags it uses.
    pub fn params(&self) -> Result<ModelParams, String> {
        let f = self.family;
        let need = |v: Option<f64>, flag: &str, used: bool| -> Result<f64, String> {
            match (v, used) {
                (Some(x), true) => Ok(x),
                (None, true) => Err(format!("--{flag} is required for family '{f}'")),
                (Some(_), false) => Err(format!("--{flag} is not a parameter of family '{f}'")),
                (None, false) => Ok(f64::NAN),
            }
        };
        let mut p = ModelParams::new(
            need(self.alpha, "alpha", f.uses_beta_core())?,
            need(self.beta, "beta", f.uses_beta_core())?,
            need(self.gamma, "gamma", f.uses_gamma())?,
            need(self.delta, "delta", f.uses_delta())?,
        );
        if !f.uses_beta_core() {
            p.alpha = 1.0;
            p.beta = 1.0;
        }
        if !f.uses_gamma() {
            p.gamma = 0.5;
        }
        if !f.uses_delta() {
            p.delta = 1.0 / 3.0;
        }
        Ok(p)
    }
}
