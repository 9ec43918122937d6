use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use seneca_core::{EstimatorKind, SupportMethod};

#[derive(Debug, Parser)]
#[command(name = "seneca-lab", version, about = "Small-sample entropy estimation and benchmarking")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate entropy from a count table.
    Estimate(EstimateArgs),
    /// Run the synthetic simulation grid.
    Simulate(SimulateArgs),
    /// Subsample populations and rank estimators by Borda count.
    Biodiv(BiodivArgs),
}

fn parse_estimator(s: &str) -> Result<EstimatorKind, String> {
    s.parse().map_err(|e: seneca_core::Error| e.to_string())
}

fn parse_support(s: &str) -> Result<SupportMethod, String> {
    s.parse().map_err(|e: seneca_core::Error| e.to_string())
}

/// Logarithm base for reported values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Base(pub f64);

impl Base {
    pub fn convert(&self, nats: f64) -> f64 {
        if self.0 == std::f64::consts::E {
            nats
        } else {
            nats / self.0.ln()
        }
    }
}

fn parse_base(s: &str) -> Result<Base, String> {
    match s {
        "e" | "nats" => Ok(Base(std::f64::consts::E)),
        "bits" => Ok(Base(2.0)),
        "bans" => Ok(Base(10.0)),
        _ => match s.parse::<f64>() {
            Ok(b) if b > 0.0 && b != 1.0 && b.is_finite() => Ok(Base(b)),
            _ => Err(format!("`{s}` is not a valid base (use e, 2, 10 or a positive number other than 1)")),
        },
    }
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    /// Count table: `label,count` with header, or one count per line.
    pub input: PathBuf,
    /// Estimator tag; repeat for several. Defaults to all estimators.
    #[arg(short, long = "estimator", value_parser = parse_estimator)]
    pub estimators: Vec<EstimatorKind>,
    /// Support estimator used by SENECA.
    #[arg(long, default_value = "chao1-bc", value_parser = parse_support)]
    pub support: SupportMethod,
    /// Logarithm base for the reported values.
    #[arg(long, default_value = "e", value_parser = parse_base)]
    pub base: Base,
    /// Write CSV here instead of stdout.
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Preset {
    Table1,
    Table2,
}

#[derive(Debug, Args)]
pub struct ThreadArgs {
    /// Worker threads for the simulation engine.
    #[arg(long, env = "SENECA_LAB_THREADS")]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// JSON grid configuration.
    #[arg(long, conflicts_with = "preset", required_unless_present = "preset")]
    pub config: Option<PathBuf>,
    /// Built-in grid.
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub bootstrap_reps: Option<usize>,
    #[arg(long, value_parser = parse_support)]
    pub support: Option<SupportMethod>,
    /// Also emit missing-mass residuals (residuals.csv).
    #[arg(long)]
    pub residuals: bool,
    /// Also emit every per-trial estimate (trials.csv).
    #[arg(long)]
    pub trial_records: bool,
    #[command(flatten)]
    pub threads: ThreadArgs,
}

#[derive(Debug, Args)]
pub struct BiodivArgs {
    /// Population count tables; the file stem names the population.
    #[arg(required = true)]
    pub populations: Vec<PathBuf>,
    #[arg(long, value_delimiter = ',', default_value = "10,20,30,40,50")]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(short, long = "estimator", value_parser = parse_estimator)]
    pub estimators: Vec<EstimatorKind>,
    #[arg(long, default_value = "chao1-bc", value_parser = parse_support)]
    pub support: SupportMethod,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Bootstrap replicates over populations for Borda intervals; 0 skips them.
    #[arg(long, default_value_t = 0)]
    pub borda_reps: usize,
    #[arg(long, default_value_t = 0.95)]
    pub confidence: f64,
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub threads: ThreadArgs,
}
