//! The synthetic (family × support size) simulation grid.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bootstrap::{bca_from_replicates, bootstrap_replicates, pivot_from_replicates};
use super::metrics::{error_stats_from_errors, is_support_risky, regime_average, rmse, Regime, RegimeAverages};
use super::seed::StreamKey;
use crate::distributions::{make_distribution, sample, true_entropy, Family, TrueDistribution};
use crate::entropy::{estimate, EstimatorKind};
use crate::error::{Error, Result};
use crate::missing_mass::SelfConsistentSolve;
use crate::support::SupportMethod;

fn default_reps() -> usize {
    1000
}

fn default_confidence() -> f64 {
    0.95
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub families: Vec<Family>,
    pub support_sizes: Vec<usize>,
    pub n: usize,
    pub trials: usize,
    pub estimators: Vec<EstimatorKind>,
    pub master_seed: u64,
    #[serde(default = "default_reps")]
    pub bootstrap_reps: usize,
    #[serde(default = "default_confidence")]
    pub confidence: f64,
    /// Support estimator plugged into SENECA.
    #[serde(default)]
    pub support_method: SupportMethod,
    /// Keep per-trial estimates in the result.
    #[serde(default)]
    pub keep_trials: bool,
}

impl GridConfig {
    /// Eight families, supports 2..50, n = 10, 1000 trials.
    pub fn table1(master_seed: u64) -> Self {
        Self::preset(vec![2, 4, 6, 8, 10, 20, 30, 40, 50], 10, master_seed)
    }

    /// Eight families, supports 4..100, n = 20, 1000 trials.
    pub fn table2(master_seed: u64) -> Self {
        Self::preset(vec![4, 8, 12, 16, 20, 40, 60, 80, 100], 20, master_seed)
    }

    fn preset(support_sizes: Vec<usize>, n: usize, master_seed: u64) -> Self {
        Self {
            families: Family::benchmark_set(),
            support_sizes,
            n,
            trials: 1000,
            estimators: EstimatorKind::ALL.to_vec(),
            master_seed,
            bootstrap_reps: default_reps(),
            confidence: default_confidence(),
            support_method: SupportMethod::default(),
            keep_trials: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.to_string()));
        if self.families.is_empty() {
            return bad("families must not be empty");
        }
        if self.support_sizes.is_empty() {
            return bad("support_sizes must not be empty");
        }
        if self.estimators.is_empty() {
            return bad("estimators must not be empty");
        }
        if self.trials == 0 {
            return bad("trials must be at least 1");
        }
        if !(self.confidence > 0.0 && self.confidence < 1.0) {
            return bad("confidence must lie strictly between 0 and 1");
        }
        if self.support_method == SupportMethod::Known {
            return bad("support_method `known` is only available for oracle scenarios");
        }
        if let Some(k) = self.estimators.iter().find(|k| self.n < k.min_sample_size()) {
            return Err(Error::InvalidConfig(format!("{k} needs n >= {}", k.min_sample_size())));
        }
        Ok(())
    }
}

/// One simulated trial.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub trial: usize,
    pub truth: f64,
    /// Aligned with `GridConfig::estimators`.
    pub estimates: Vec<f64>,
    pub seneca: Option<SelfConsistentSolve<f64>>,
}

/// Error statistics for one (family, support size, estimator).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SettingSummary {
    pub family: Family,
    pub support_size: usize,
    pub n: usize,
    pub estimator: EstimatorKind,
    pub regime: Regime,
    pub support_risky: bool,
    pub trials: usize,
    pub rmse: f64,
    pub bias: f64,
    pub variance: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SettingData {
    pub summaries: Vec<SettingSummary>,
    /// Per-estimator trial errors (estimate - truth), in trial order.
    pub errors: Vec<Vec<f64>>,
    pub trials: Option<Vec<TrialRecord>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SettingResult {
    pub family: Family,
    pub support_size: usize,
    /// `Err` carries the reason an invalid setting was skipped.
    pub outcome: std::result::Result<SettingData, String>,
}

/// Regime-level mean RMSE with a pivot interval.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegimeSummary {
    pub family: Family,
    pub n: usize,
    pub estimator: EstimatorKind,
    pub regime: Regime,
    pub settings: usize,
    pub mean_rmse: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    /// `max(point - low, high - point)`.
    pub radius: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridResult {
    pub config: GridConfig,
    /// Canonical order: families, then support sizes, as configured.
    pub settings: Vec<SettingResult>,
}

impl GridResult {
    /// All summaries in canonical (family, support, estimator) order.
    pub fn summaries(&self) -> impl Iterator<Item = &SettingSummary> {
        self.settings.iter().filter_map(|s| s.outcome.as_ref().ok()).flat_map(|d| d.summaries.iter())
    }

    pub fn failures(&self) -> impl Iterator<Item = (&Family, usize, &str)> {
        self.settings.iter().filter_map(|s| s.outcome.as_ref().err().map(|e| (&s.family, s.support_size, e.as_str())))
    }

    /// Unweighted regime means (no intervals) for one family and estimator.
    pub fn regime_average(&self, family: &Family, estimator: EstimatorKind) -> RegimeAverages {
        let pairs: Vec<(usize, f64)> = self
            .summaries()
            .filter(|s| s.family == *family && s.estimator == estimator)
            .map(|s| (s.support_size, s.rmse))
            .collect();
        regime_average(&pairs, self.config.n)
    }

    /// Regime means with pivot intervals from resampling trial errors
    /// within each setting.
    pub fn regime_summaries(&self) -> Result<Vec<RegimeSummary>> {
        let cfg = &self.config;
        let mut jobs = Vec::new();
        for family in &cfg.families {
            for (e_idx, &estimator) in cfg.estimators.iter().enumerate() {
                for regime in [Regime::Well, Regime::Under] {
                    jobs.push((family, e_idx, estimator, regime));
                }
            }
        }
        let out: Vec<Option<RegimeSummary>> = jobs
            .par_iter()
            .map(|&(family, e_idx, estimator, regime)| {
                let errors: Vec<&[f64]> = self
                    .settings
                    .iter()
                    .filter(|s| s.family == *family && Regime::of(s.support_size, cfg.n) == regime)
                    .filter_map(|s| s.outcome.as_ref().ok())
                    .map(|d| d.errors[e_idx].as_slice())
                    .collect();
                if errors.is_empty() {
                    return Ok(None);
                }
                let point = errors.iter().map(|e| rmse(e)).sum::<f64>() / errors.len() as f64;
                let scope = family.to_string();
                let purpose = format!("pivot:{}:{}", estimator.tag(), regime.tag());
                let mut rng = StreamKey {
                    master_seed: cfg.master_seed,
                    scope: &scope,
                    index: cfg.n as u64,
                    trial: 0,
                    purpose: &purpose,
                }
                .stream();
                let mut replicate_sum = vec![0.0; cfg.bootstrap_reps];
                for e in &errors {
                    let reps = bootstrap_replicates(e, rmse, cfg.bootstrap_reps, &mut rng);
                    for (acc, r) in replicate_sum.iter_mut().zip(reps) {
                        *acc += r;
                    }
                }
                let replicates = replicate_sum.into_iter().map(|s| s / errors.len() as f64).collect();
                let iv = pivot_from_replicates(point, replicates, cfg.confidence)?;
                Ok(Some(RegimeSummary {
                    family: *family,
                    n: cfg.n,
                    estimator,
                    regime,
                    settings: errors.len(),
                    mean_rmse: point,
                    ci_low: iv.low,
                    ci_high: iv.high,
                    radius: iv.radius(),
                }))
            })
            .collect::<Result<_>>()?;
        Ok(out.into_iter().flatten().collect())
    }
}

/// Distribution for one trial: fixed families are built once per setting,
/// Dirichlet families are redrawn from the trial's `dist` stream.
pub(crate) fn trial_distribution(
    family: Family,
    support_size: usize,
    fixed: Option<&TrueDistribution>,
    key: StreamKey<'_>,
) -> Result<TrueDistribution> {
    match fixed {
        Some(d) => Ok(d.clone()),
        None => {
            let mut rng = StreamKey { purpose: "dist", ..key }.stream();
            make_distribution(family, support_size, Some(&mut rng))
        }
    }
}

/// Simulates every configured setting.
///
/// Each trial draws from its own stream keyed by (seed, family, support,
/// trial), and results are merged in canonical order, so the output does
/// not depend on the degree of parallelism.
pub fn run_grid(config: &GridConfig) -> Result<GridResult> {
    config.validate()?;
    let settings: Vec<(Family, usize)> =
        config.families.iter().flat_map(|&f| config.support_sizes.iter().map(move |&k| (f, k))).collect();
    let results = settings
        .par_iter()
        .map(|&(family, k)| {
            let outcome = run_setting(config, family, k);
            match outcome {
                Ok(data) => Ok(SettingResult { family, support_size: k, outcome: Ok(data) }),
                Err(
                    e @ (Error::OddStepSupport(_) | Error::SupportTooSmall { .. } | Error::NonPositiveShape { .. }),
                ) => Ok(SettingResult { family, support_size: k, outcome: Err(e.to_string()) }),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GridResult { config: config.clone(), settings: results })
}

fn run_setting(cfg: &GridConfig, family: Family, k: usize) -> Result<SettingData> {
    let fixed =
        if family.is_random() { None } else { Some(make_distribution::<crate::bench::seed::Stream>(family, k, None)?) };
    let scope = family.to_string();

    let records = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let key = StreamKey {
                master_seed: cfg.master_seed,
                scope: &scope,
                index: k as u64,
                trial: t as u64,
                purpose: "sample",
            };
            let dist = trial_distribution(family, k, fixed.as_ref(), key)?;
            let counts = sample(&dist, cfg.n, &mut key.stream())?;
            let mut seneca = None;
            let estimates = cfg
                .estimators
                .iter()
                .map(|&kind| {
                    let est = estimate::<f64, _>(kind, &counts, &cfg.support_method)?;
                    if let Some(s) = est.solve() {
                        seneca = Some(*s);
                    }
                    Ok(est.value)
                })
                .collect::<Result<Vec<f64>>>()?;
            Ok(TrialRecord { trial: t, truth: true_entropy(&dist), estimates, seneca })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut summaries = Vec::with_capacity(cfg.estimators.len());
    let mut errors = Vec::with_capacity(cfg.estimators.len());
    for (e_idx, &estimator) in cfg.estimators.iter().enumerate() {
        let errs: Vec<f64> = records.iter().map(|r| r.estimates[e_idx] - r.truth).collect();
        let stats = error_stats_from_errors(&errs)?;
        let (ci_low, ci_high) = if errs.len() >= 2 {
            let purpose = format!("bca:{}", estimator.tag());
            let mut rng =
                StreamKey { master_seed: cfg.master_seed, scope: &scope, index: k as u64, trial: 0, purpose: &purpose }
                    .stream();
            let reps = bootstrap_replicates(&errs, rmse, cfg.bootstrap_reps, &mut rng);
            let iv = bca_from_replicates(&errs, rmse, reps, cfg.confidence)?;
            (iv.low, iv.high)
        } else {
            (stats.rmse, stats.rmse)
        };
        summaries.push(SettingSummary {
            family,
            support_size: k,
            n: cfg.n,
            estimator,
            regime: Regime::of(k, cfg.n),
            support_risky: is_support_risky(k, cfg.n),
            trials: cfg.trials,
            rmse: stats.rmse,
            bias: stats.bias,
            variance: stats.variance,
            ci_low: ci_low.min(ci_high),
            ci_high: ci_high.max(ci_low),
            seed: cfg.master_seed,
        });
        errors.push(errs);
    }
    Ok(SettingData { summaries, errors, trials: cfg.keep_trials.then_some(records) })
}
