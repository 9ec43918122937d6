//! Subsampling benchmark: a fully observed population is treated as the
//! truth and estimators are scored on small samples drawn from it.

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::bootstrap::{pivot_from_replicates, Interval};
use super::borda::{borda, Ballot};
use super::metrics::error_stats_from_errors;
use super::seed::StreamKey;
use crate::distributions::{sample, TrueDistribution};
use crate::entropy::{entropy_plugin, estimate, EstimatorKind};
use crate::error::{Error, Result};
use crate::sample::SampleCounts;
use crate::support::SupportMethod;

/// A complete species-count table.
#[derive(Debug, Clone, PartialEq)]
pub struct Population {
    pub id: String,
    pub counts: SampleCounts,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubsampleConfig {
    pub sample_sizes: Vec<usize>,
    pub trials: usize,
    pub estimators: Vec<EstimatorKind>,
    pub support_method: SupportMethod,
    pub master_seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubsampleSummary {
    pub population: String,
    pub sample_size: usize,
    pub estimator: EstimatorKind,
    pub truth: f64,
    pub trials: usize,
    pub rmse: f64,
    pub bias: f64,
    pub variance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubsampleResult {
    pub summaries: Vec<SubsampleSummary>,
    /// One ballot per sample size, in configured order.
    pub ballots: Vec<Ballot>,
}

impl SubsampleConfig {
    fn validate(&self) -> Result<()> {
        if self.sample_sizes.is_empty() || self.estimators.is_empty() || self.trials == 0 {
            return Err(Error::InvalidConfig("sample sizes, estimators and trials must be non-empty".into()));
        }
        let need = self.estimators.iter().map(|k| k.min_sample_size()).max().unwrap_or(1);
        if let Some(&n) = self.sample_sizes.iter().find(|&&n| n < need) {
            return Err(Error::InvalidConfig(format!("sample size {n} is below the minimum {need}")));
        }
        Ok(())
    }
}

/// Draws i.i.d. samples with replacement from the population's empirical
/// prevalences and scores each estimator against the population's plugin
/// entropy.
///
/// Streams are keyed by sample size and trial only, so identical
/// populations see identical draws.
pub fn subsample_bench(population: &Population, config: &SubsampleConfig) -> Result<SubsampleResult> {
    config.validate()?;
    let dist = TrueDistribution::from_population(&population.counts);
    let truth = entropy_plugin::<f64>(&population.counts).value;

    let mut summaries = Vec::new();
    let mut ballots = Vec::new();
    for &n in &config.sample_sizes {
        let per_trial: Vec<Vec<f64>> = (0..config.trials)
            .into_par_iter()
            .map(|t| {
                let key = StreamKey {
                    master_seed: config.master_seed,
                    scope: "population",
                    index: n as u64,
                    trial: t as u64,
                    purpose: "sample",
                };
                let counts = sample(&dist, n, &mut key.stream())?;
                config
                    .estimators
                    .iter()
                    .map(|&k| estimate::<f64, _>(k, &counts, &config.support_method).map(|e| e.value))
                    .collect()
            })
            .collect::<Result<_>>()?;

        let mut scores = Vec::with_capacity(config.estimators.len());
        for (e_idx, &estimator) in config.estimators.iter().enumerate() {
            let errors: Vec<f64> = per_trial.iter().map(|row| row[e_idx] - truth).collect();
            let stats = error_stats_from_errors(&errors)?;
            scores.push((estimator, stats.rmse));
            summaries.push(SubsampleSummary {
                population: population.id.clone(),
                sample_size: n,
                estimator,
                truth,
                trials: config.trials,
                rmse: stats.rmse,
                bias: stats.bias,
                variance: stats.variance,
            });
        }
        ballots.push(Ballot::from_scores(population.id.clone(), n, &scores));
    }
    Ok(SubsampleResult { summaries, ballots })
}

/// Pivot intervals for Borda totals, resampling populations with
/// replacement. `ballots_by_population[i]` holds population `i`'s ballots.
pub fn borda_pivot<R: Rng + ?Sized>(
    ballots_by_population: &[Vec<Ballot>],
    reps: usize,
    level: f64,
    rng: &mut R,
) -> Result<BTreeMap<EstimatorKind, Interval>> {
    let flat: Vec<Ballot> = ballots_by_population.iter().flatten().cloned().collect();
    let totals = borda(&flat)?;
    let per_population: Vec<BTreeMap<EstimatorKind, f64>> =
        ballots_by_population.iter().map(|b| borda(b)).collect::<Result<_>>()?;

    let p = per_population.len() as u64;
    let mut replicates: BTreeMap<EstimatorKind, Vec<f64>> =
        totals.keys().map(|&k| (k, Vec::with_capacity(reps))).collect();
    if p > 0 {
        for _ in 0..reps {
            let mut acc: BTreeMap<EstimatorKind, f64> = totals.keys().map(|&k| (k, 0.0)).collect();
            for _ in 0..p {
                let pick = &per_population[rng.random_range(0..p) as usize];
                for (k, v) in pick {
                    *acc.get_mut(k).ok_or(Error::InconsistentBallots)? += v;
                }
            }
            for (k, v) in acc {
                replicates.get_mut(&k).expect("same keys").push(v);
            }
        }
    }
    totals
        .into_iter()
        .map(|(k, point)| {
            let reps = replicates.remove(&k).unwrap_or_default();
            pivot_from_replicates(point, reps, level).map(|iv| (k, iv))
        })
        .collect()
}
