//! Simulation engine: the synthetic grid, error metrics, bootstrap
//! intervals, subsampling from populations and Borda aggregation.
//!
//! All randomness flows through [`seed::StreamKey`] streams, so results are
//! identical for any thread count.

pub mod bootstrap;
pub mod borda;
pub mod grid;
pub mod metrics;
pub mod residuals;
pub mod seed;
pub mod subsample;

pub use bootstrap::{bootstrap_bca, bootstrap_pivot, Interval};
pub use borda::{borda, Ballot};
pub use grid::{run_grid, GridConfig, GridResult, RegimeSummary, SettingSummary, TrialRecord};
pub use metrics::{error_stats, regime_average, ErrorStats, Regime, RegimeAverages};
pub use residuals::{oracle_residual_scenario, ResidualConfig, ResidualRecord};
pub use subsample::{borda_pivot, subsample_bench, Population, SubsampleConfig, SubsampleResult, SubsampleSummary};

use crate::error::{Error, Result};

/// Runs `op` on a pool of `threads` workers, or on the global pool.
pub fn with_threads<T: Send>(threads: Option<usize>, op: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(op()),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
            Ok(pool.install(op))
        }
    }
}
