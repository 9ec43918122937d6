//! Residuals of three missing-mass routes against the exact expectation
//! `Σ p (1 - p)^n`:
//!
//! * `oracle`: `μ(M(X), |U|, X)` with the realized missing mass and the true
//!   number of unseen labels;
//! * `known_support`: the fixed point solved with the true support size;
//! * `estimated_support`: the fixed point with an estimated support size.

use rayon::prelude::*;
use serde::Serialize;

use super::grid::trial_distribution;
use super::seed::StreamKey;
use crate::distributions::{
    expected_missing_mass, make_distribution, realized_missing_mass, sample_labeled, Family, TrueDistribution,
};
use crate::error::{Error, Result};
use crate::missing_mass::{mu, solve_self_consistent};
use crate::support::{SupportEstimate, SupportMethod};

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualConfig {
    pub families: Vec<Family>,
    pub support_sizes: Vec<usize>,
    pub n: usize,
    pub trials: usize,
    pub master_seed: u64,
    pub support_method: SupportMethod,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualRecord {
    pub scope: String,
    pub support_size: usize,
    pub trial: usize,
    /// Expected missing mass `Σ p (1 - p)^n`.
    pub expected: f64,
    /// Residuals against `expected`: μ at the realized mass and true unseen
    /// count, the fixed point with known support, and the full solve.
    pub oracle: f64,
    pub known_support: f64,
    pub estimated_support: f64,
    pub known_fallback: bool,
    pub estimated_fallback: bool,
}

/// Residual records for every (family, support, trial), in canonical order.
/// Invalid family/support combinations are skipped.
pub fn oracle_residual_scenario(config: &ResidualConfig) -> Result<Vec<ResidualRecord>> {
    if config.trials == 0 || config.n == 0 {
        return Err(Error::InvalidConfig("trials and n must be positive".into()));
    }
    let mut out = Vec::new();
    for &family in &config.families {
        for &k in &config.support_sizes {
            let fixed = if family.is_random() {
                None
            } else {
                match make_distribution::<super::seed::Stream>(family, k, None) {
                    Ok(d) => Some(d),
                    Err(Error::OddStepSupport(_) | Error::SupportTooSmall { .. }) => continue,
                    Err(e) => return Err(e),
                }
            };
            let scope = family.to_string();
            let records = (0..config.trials)
                .into_par_iter()
                .map(|t| {
                    let key = StreamKey {
                        master_seed: config.master_seed,
                        scope: &scope,
                        index: k as u64,
                        trial: t as u64,
                        purpose: "sample",
                    };
                    let dist = trial_distribution(family, k, fixed.as_ref(), key)?;
                    residual_trial(&dist, config.n, config.support_method, &scope, t, key)
                })
                .collect::<Result<Vec<_>>>()?;
            out.extend(records);
        }
    }
    Ok(out)
}

/// Residuals for an explicit distribution (e.g. a point mass).
pub fn residuals_for(
    dist: &TrueDistribution,
    n: usize,
    trials: usize,
    master_seed: u64,
    support_method: SupportMethod,
) -> Result<Vec<ResidualRecord>> {
    (0..trials)
        .map(|t| {
            let key = StreamKey {
                master_seed,
                scope: "custom",
                index: dist.support_size() as u64,
                trial: t as u64,
                purpose: "sample",
            };
            residual_trial(dist, n, support_method, "custom", t, key)
        })
        .collect()
}

fn residual_trial(
    dist: &TrueDistribution,
    n: usize,
    support_method: SupportMethod,
    scope: &str,
    trial: usize,
    key: StreamKey<'_>,
) -> Result<ResidualRecord> {
    let drawn = sample_labeled(dist, n, &mut key.stream())?;
    let expected = expected_missing_mass(dist, n);
    let realized = realized_missing_mass(dist, &drawn.counts, &drawn.labels)?;
    let k = dist.support_size();
    let unseen = k - drawn.counts.observed_support();

    let oracle = mu(realized, unseen, &drawn.counts);
    let known = solve_self_consistent::<f64, _>(&drawn.counts, &SupportEstimate::known(k as f64));
    let estimated = solve_self_consistent::<f64, _>(&drawn.counts, &support_method);
    Ok(ResidualRecord {
        scope: scope.to_string(),
        support_size: k,
        trial,
        expected,
        oracle: oracle - expected,
        known_support: known.m_star - expected,
        estimated_support: estimated.m_star - expected,
        known_fallback: known.fallback,
        estimated_fallback: estimated.fallback,
    })
}
