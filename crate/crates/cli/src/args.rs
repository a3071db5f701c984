use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use greycast::fixtures::CaseId;
use greycast::{ModelVariant, Objective};

#[derive(Debug, Parser)]
#[command(
    name = "greycast",
    version,
    about = "Fractional-order grey forecasting"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit a model to a `period,value` CSV and save it as JSON.
    Fit(FitArgs),
    /// Restore the fitted span of a saved model and extend it.
    Forecast(ForecastArgs),
    /// Fit, restore the full file span and report accuracy criteria.
    Evaluate(EvaluateArgs),
    /// Run the synthetic parameter-recovery sweep.
    Sweep(SweepArgs),
    /// Recompute the bundled reference tables.
    Reproduce(ReproduceArgs),
}

/// `auto` or a positive fractional order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OrderArg {
    Auto,
    Fixed(f64),
}

impl FromStr for OrderArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(OrderArg::Auto);
        }
        s.parse::<f64>()
            .map(OrderArg::Fixed)
            .map_err(|_| format!("expected `auto` or a number, got `{s}`"))
    }
}

#[derive(Debug, Args)]
pub struct ModelOpts {
    /// Input CSV with a `period,value` header.
    pub input: PathBuf,
    /// Model variant: fagmo, fagm, fagm11, ongm, gm11kc, gm11k, gm11.
    #[arg(long, default_value = "fagmo")]
    pub model: ModelVariant,
    /// Accumulation order, or `auto` to search for it.
    #[arg(long, default_value = "1")]
    pub order: OrderArg,
    /// Number of leading rows used for fitting; defaults to all rows.
    #[arg(long)]
    pub train: Option<usize>,
    /// Criterion minimized by `--order auto`.
    #[arg(long, default_value = "rmspepr")]
    pub objective: Objective,
    /// Grid step for `--order auto`.
    #[arg(long, default_value_t = greycast::order_select::REPRODUCTION_STEP)]
    pub step: f64,
    /// Write the order-search profile to this CSV.
    #[arg(long)]
    pub profile: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[command(flatten)]
    pub opts: ModelOpts,
    /// Destination of the model JSON.
    #[arg(long, default_value = "model.json")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ForecastArgs {
    /// Model JSON written by `fit`.
    #[arg(long)]
    pub model: PathBuf,
    /// Periods to forecast past the fitted span.
    #[arg(long, default_value_t = 0)]
    pub horizon: usize,
    /// Destination CSV; printed to stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[command(flatten)]
    pub opts: ModelOpts,
    /// Write the metrics document as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Write the criteria as `metric,value` CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Base seed; the GREYCAST_SEED environment variable takes precedence.
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub r_steps: usize,
    #[arg(long, default_value_t = 100)]
    pub alpha_steps: usize,
    /// Length of each synthetic series.
    #[arg(long, default_value_t = greycast::validation_harness::DEFAULT_POINTS)]
    pub points: usize,
    #[arg(long, default_value_t = greycast::validation_harness::R_RANGE.0)]
    pub r_min: f64,
    #[arg(long, default_value_t = greycast::validation_harness::R_RANGE.1)]
    pub r_max: f64,
    #[arg(long, default_value_t = greycast::validation_harness::ALPHA_RANGE.0, allow_hyphen_values = true)]
    pub alpha_min: f64,
    #[arg(long, default_value_t = greycast::validation_harness::ALPHA_RANGE.1, allow_hyphen_values = true)]
    pub alpha_max: f64,
    /// Draw beta, gamma and x0 once for the whole sweep instead of per cell.
    #[arg(long)]
    pub once_per_sweep: bool,
    /// Destination of the surface CSV.
    #[arg(long, default_value = "surface.csv")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    /// table1, oilfield, settlement, nuclear or all.
    #[arg(long, default_value = "all")]
    pub case: CaseArg,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CaseArg {
    All,
    One(CaseId),
}

impl FromStr for CaseArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(CaseArg::All);
        }
        s.parse()
            .map(CaseArg::One)
            .map_err(|e: greycast::GreyError| e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn command_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn order_arg_parses() {
        assert_eq!("auto".parse::<OrderArg>(), Ok(OrderArg::Auto));
        assert_eq!("0.4052".parse::<OrderArg>(), Ok(OrderArg::Fixed(0.4052)));
        assert!("x".parse::<OrderArg>().is_err());
    }

    #[test]
    fn negative_alpha_bound_is_accepted() {
        let cli = Cli::try_parse_from([
            "greycast",
            "sweep",
            "--alpha-min",
            "-0.1",
            "--alpha-max",
            "0.1",
        ])
        .unwrap();
        match cli.command {
            Command::Sweep(a) => assert_eq!((a.alpha_min, a.alpha_max), (-0.1, 0.1)),
            other => panic!("unexpected {other:?}"),
        }
    }
}
