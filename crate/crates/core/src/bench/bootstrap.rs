//! Bootstrap confidence intervals: bias-corrected and accelerated (BCa) and
//! basic pivot intervals.

use rand::Rng;
use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};

/// A two-sided interval around a point estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub point: f64,
    pub low: f64,
    pub high: f64,
}

impl Interval {
    fn degenerate(point: f64) -> Self {
        Self { point, low: point, high: point }
    }

    /// Larger of the two one-sided distances from the point estimate.
    pub fn radius(&self) -> f64 {
        (self.point - self.low).abs().max((self.high - self.point).abs())
    }
}

fn check(values: &[f64], level: f64) -> Result<()> {
    if values.len() < 2 {
        return Err(Error::TooFewValues(values.len()));
    }
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::InvalidLevel(level));
    }
    Ok(())
}

/// `reps` resample-with-replacement evaluations of `statistic`.
pub fn bootstrap_replicates<F, R>(values: &[f64], statistic: F, reps: usize, rng: &mut R) -> Vec<f64>
where
    F: Fn(&[f64]) -> f64,
    R: Rng + ?Sized,
{
    let len = values.len() as u64;
    let mut buf = vec![0.0; values.len()];
    (0..reps)
        .map(|_| {
            for slot in buf.iter_mut() {
                *slot = values[rng.random_range(0..len) as usize];
            }
            statistic(&buf)
        })
        .collect()
}

/// Linear-interpolation quantile of sorted data.
pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * q.clamp(0.0, 1.0);
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

fn standard_normal() -> Normal {
    Normal::new(0.0, 1.0).expect("standard normal")
}

/// BCa interval from precomputed replicates.
pub fn bca_from_replicates<F>(values: &[f64], statistic: F, replicates: Vec<f64>, level: f64) -> Result<Interval>
where
    F: Fn(&[f64]) -> f64,
{
    check(values, level)?;
    let point = statistic(values);
    if replicates.is_empty() || replicates.iter().all(|&r| r == point) {
        return Ok(Interval::degenerate(point));
    }
    let reps = sorted(replicates);
    let b = reps.len() as f64;
    let normal = standard_normal();

    // bias correction from the share of replicates below the point estimate
    let below = reps.iter().filter(|&&r| r < point).count() as f64;
    let share = (below / b).clamp(0.5 / b, 1.0 - 0.5 / b);
    let z0 = normal.inverse_cdf(share);

    // acceleration from jackknife skewness
    let mut left_out = Vec::with_capacity(values.len() - 1);
    let jack: Vec<f64> = (0..values.len())
        .map(|i| {
            left_out.clear();
            left_out.extend(values.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, v)| *v));
            statistic(&left_out)
        })
        .collect();
    let jack_mean = jack.iter().sum::<f64>() / jack.len() as f64;
    let num: f64 = jack.iter().map(|t| (jack_mean - t).powi(3)).sum();
    let den: f64 = jack.iter().map(|t| (jack_mean - t).powi(2)).sum();
    let accel = if den > 0.0 { num / (6.0 * den.powf(1.5)) } else { 0.0 };

    let alpha = (1.0 - level) / 2.0;
    let adjust = |z: f64| {
        let shifted = z0 + z;
        normal.cdf(z0 + shifted / (1.0 - accel * shifted))
    };
    let lo_q = adjust(normal.inverse_cdf(alpha));
    let hi_q = adjust(normal.inverse_cdf(1.0 - alpha));
    Ok(Interval { point, low: quantile_sorted(&reps, lo_q), high: quantile_sorted(&reps, hi_q) })
}

/// BCa bootstrap interval for `statistic(values)`.
pub fn bootstrap_bca<F, R>(values: &[f64], statistic: F, reps: usize, level: f64, rng: &mut R) -> Result<Interval>
where
    F: Fn(&[f64]) -> f64,
    R: Rng + ?Sized,
{
    check(values, level)?;
    let replicates = bootstrap_replicates(values, &statistic, reps, rng);
    bca_from_replicates(values, statistic, replicates, level)
}

/// Pivot interval `(2θ̂ - q_hi, 2θ̂ - q_lo)` from precomputed replicates.
pub fn pivot_from_replicates(point: f64, replicates: Vec<f64>, level: f64) -> Result<Interval> {
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::InvalidLevel(level));
    }
    if replicates.is_empty() {
        return Ok(Interval::degenerate(point));
    }
    let reps = sorted(replicates);
    let alpha = (1.0 - level) / 2.0;
    Ok(Interval {
        point,
        low: 2.0 * point - quantile_sorted(&reps, 1.0 - alpha),
        high: 2.0 * point - quantile_sorted(&reps, alpha),
    })
}

/// Pivot bootstrap interval for `statistic(values)`.
pub fn bootstrap_pivot<F, R>(values: &[f64], statistic: F, reps: usize, level: f64, rng: &mut R) -> Result<Interval>
where
    F: Fn(&[f64]) -> f64,
    R: Rng + ?Sized,
{
    check(values, level)?;
    let point = statistic(values);
    let replicates = bootstrap_replicates(values, &statistic, reps, rng);
    pivot_from_replicates(point, replicates, level)
}

pub fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, StandardNormal};

    #[test]
    fn constant_values_are_degenerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let v = [3.5; 12];
        let bca = bootstrap_bca(&v, mean, 200, 0.95, &mut rng).unwrap();
        assert_eq!((bca.low, bca.high), (3.5, 3.5));
        let piv = bootstrap_pivot(&v, mean, 200, 0.95, &mut rng).unwrap();
        assert_eq!((piv.low, piv.high, piv.radius()), (3.5, 3.5, 0.0));
    }

    #[test]
    fn input_errors() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(bootstrap_bca(&[1.0], mean, 10, 0.95, &mut rng), Err(Error::TooFewValues(1)));
        assert_eq!(bootstrap_pivot(&[], mean, 10, 0.95, &mut rng), Err(Error::TooFewValues(0)));
        assert_eq!(bootstrap_bca(&[1.0, 2.0], mean, 10, 1.0, &mut rng), Err(Error::InvalidLevel(1.0)));
    }

    #[test]
    fn pivot_exhaustive_two_points() {
        // all 4 resamples of [0, 2]: means 0, 1, 1, 2
        let reps = vec![0.0, 1.0, 1.0, 2.0];
        let iv = pivot_from_replicates(mean(&[0.0, 2.0]), reps, 0.95).unwrap();
        // type-7 quantiles: q(0.025) = 0.075, q(0.975) = 1.925
        assert!((iv.low - 0.075).abs() < 1e-12);
        assert!((iv.high - 1.925).abs() < 1e-12);
        assert!(((iv.low + iv.high) / 2.0 - 1.0).abs() < 1e-12);
        assert_eq!(iv.radius(), (iv.point - iv.low).abs().max(iv.high - iv.point));
    }

    #[test]
    fn bca_close_to_percentile_for_symmetric_data() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let data: Vec<f64> = (0..10_000).map(|_| StandardNormal.sample(&mut rng)).collect();
        let reps = bootstrap_replicates(&data, mean, 1000, &mut rng);
        let sorted_reps = sorted(reps.clone());
        let (p_lo, p_hi) = (quantile_sorted(&sorted_reps, 0.025), quantile_sorted(&sorted_reps, 0.975));
        let bca = bca_from_replicates(&data, mean, reps, 0.95).unwrap();
        let width = p_hi - p_lo;
        assert!(((bca.high - bca.low) - width).abs() / width < 0.10);
        assert!((bca.low - p_lo).abs() < 0.1 * width);
    }
}
