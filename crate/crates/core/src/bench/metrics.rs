//! Error statistics and regime aggregation.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::support::support_risky_threshold;

/// RMSE with its bias-variance split.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorStats {
    pub rmse: f64,
    pub bias: f64,
    pub variance: f64,
}

/// Statistics of `estimate - truth`; `variance = mean(e²) - bias²`, so
/// `rmse² = bias² + variance` holds by construction.
pub fn error_stats(estimates: &[f64], truths: &[f64]) -> Result<ErrorStats> {
    if estimates.len() != truths.len() {
        return Err(Error::LengthMismatch { left: estimates.len(), right: truths.len() });
    }
    let errors: Vec<f64> = estimates.iter().zip(truths).map(|(e, t)| e - t).collect();
    error_stats_from_errors(&errors)
}

pub fn error_stats_from_errors(errors: &[f64]) -> Result<ErrorStats> {
    if errors.is_empty() {
        return Err(Error::EmptyInput);
    }
    let len = errors.len() as f64;
    let bias = errors.iter().sum::<f64>() / len;
    let mse = errors.iter().map(|e| e * e).sum::<f64>() / len;
    let variance = (mse - bias * bias).max(0.0);
    Ok(ErrorStats { rmse: mse.sqrt(), bias, variance })
}

/// `sqrt(mean(e²))`.
pub fn rmse(errors: &[f64]) -> f64 {
    (errors.iter().map(|e| e * e).sum::<f64>() / errors.len() as f64).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// `|X| ≤ n`
    Well,
    /// `|X| > n`
    Under,
}

impl Regime {
    pub fn of(support_size: usize, n: usize) -> Self {
        if support_size <= n {
            Regime::Well
        } else {
            Regime::Under
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Regime::Well => "well",
            Regime::Under => "under",
        }
    }
}

/// Beyond the largest support that can be estimated consistently from `n` draws.
pub fn is_support_risky(support_size: usize, n: usize) -> bool {
    support_risky_threshold(n).is_none_or(|gamma| support_size > gamma)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegimeEntry {
    pub mean_rmse: f64,
    pub settings: usize,
}

/// Unweighted regime means of per-setting RMSE.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct RegimeAverages {
    pub well: Option<RegimeEntry>,
    pub under: Option<RegimeEntry>,
    /// `(support size, support-risky)` for each input setting, in input order.
    pub risky: Vec<(usize, bool)>,
}

impl RegimeAverages {
    pub fn get(&self, regime: Regime) -> Option<&RegimeEntry> {
        match regime {
            Regime::Well => self.well.as_ref(),
            Regime::Under => self.under.as_ref(),
        }
    }
}

/// Averages `(support size, rmse)` pairs within each regime.
pub fn regime_average(settings: &[(usize, f64)], n: usize) -> RegimeAverages {
    let mean = |regime: Regime| {
        let picked: Vec<f64> = settings.iter().filter(|(k, _)| Regime::of(*k, n) == regime).map(|(_, r)| *r).collect();
        (!picked.is_empty()).then(|| RegimeEntry {
            mean_rmse: picked.iter().sum::<f64>() / picked.len() as f64,
            settings: picked.len(),
        })
    };
    RegimeAverages {
        well: mean(Regime::Well),
        under: mean(Regime::Under),
        risky: settings.iter().map(|&(k, _)| (k, is_support_risky(k, n))).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_stats_examples() {
        let s = error_stats(&[1.0, 1.0], &[1.0, 1.0]).unwrap();
        assert_eq!((s.rmse, s.bias, s.variance), (0.0, 0.0, 0.0));
        let s = error_stats(&[0.0, 2.0], &[1.0, 1.0]).unwrap();
        assert_eq!((s.rmse, s.bias, s.variance), (1.0, 0.0, 1.0));
        let s = error_stats(&[2.0, 2.0], &[1.0, 1.0]).unwrap();
        assert_eq!((s.rmse, s.bias, s.variance), (1.0, 1.0, 0.0));
    }

    #[test]
    fn error_stats_errors() {
        assert_eq!(error_stats(&[1.0], &[1.0, 2.0]), Err(Error::LengthMismatch { left: 1, right: 2 }));
        assert_eq!(error_stats(&[], &[]), Err(Error::EmptyInput));
    }

    #[test]
    fn regime_grid_n10() {
        let grid: Vec<(usize, f64)> = [2, 4, 6, 8, 10, 20, 30, 40, 50].iter().map(|&k| (k, k as f64)).collect();
        let avg = regime_average(&grid, 10);
        assert_eq!(avg.well.unwrap().settings, 5);
        assert_eq!(avg.under.unwrap().settings, 4);
        assert_eq!(avg.well.unwrap().mean_rmse, 6.0);
        assert_eq!(avg.under.unwrap().mean_rmse, 35.0);
        let risky: Vec<usize> = avg.risky.iter().filter(|r| r.1).map(|r| r.0).collect();
        assert_eq!(risky, vec![40, 50]);
    }

    #[test]
    fn single_under_setting_is_risky() {
        let avg = regime_average(&[(50, 1.0)], 10);
        assert!(avg.well.is_none());
        assert_eq!(avg.under.unwrap().settings, 1);
        assert_eq!(avg.risky, vec![(50, true)]);
    }

    #[test]
    fn all_well_has_no_under_entry() {
        let avg = regime_average(&[(2, 0.1), (4, 0.2)], 10);
        assert!(avg.under.is_none());
    }
}
