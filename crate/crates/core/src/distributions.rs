//! Ground-truth label-prevalence distributions and their exact oracles.
//!
//! All simulation quantities are `f64`; entropies are in nats.

use std::fmt;

use rand::Rng;
use rand_distr::{Distribution, Gamma};
use serde::{Deserialize, Serialize};
use statrs::function::beta::ln_beta;

use crate::error::{Error, Result};
use crate::sample::{tally_labels, SampleCounts};

/// Distribution families of the simulation study.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    Uniform,
    /// Half the labels at `1/(2k)`, half at `3/(2k)`.
    Step,
    /// `p_u ∝ u^(-alpha)` for `u = 1..=k`.
    Zipf {
        alpha: f64,
    },
    /// A fresh draw from `Dir(alpha, ..., alpha)`.
    Dirichlet {
        alpha: f64,
    },
    /// Beta-binomial pmf over `t = k - 1` trials.
    BetaBinomial {
        alpha: f64,
        beta: f64,
    },
}

impl Family {
    /// Short tag without parameters.
    pub fn tag(&self) -> &'static str {
        match self {
            Family::Uniform => "uniform",
            Family::Step => "step",
            Family::Zipf { .. } => "zipf",
            Family::Dirichlet { .. } => "dirichlet",
            Family::BetaBinomial { .. } => "beta-binomial",
        }
    }

    /// Parameter string, e.g. `alpha=0.5`; empty for parameter-free families.
    pub fn params(&self) -> String {
        match self {
            Family::Uniform | Family::Step => String::new(),
            Family::Zipf { alpha } | Family::Dirichlet { alpha } => format!("alpha={alpha}"),
            Family::BetaBinomial { alpha, beta } => format!("alpha={alpha};beta={beta}"),
        }
    }

    pub fn is_random(&self) -> bool {
        matches!(self, Family::Dirichlet { .. })
    }

    /// The eight families of the main simulation grid.
    pub fn benchmark_set() -> Vec<Family> {
        vec![
            Family::Uniform,
            Family::Step,
            Family::Zipf { alpha: 0.5 },
            Family::Zipf { alpha: 1.0 },
            Family::Zipf { alpha: 1.5 },
            Family::Dirichlet { alpha: 0.5 },
            Family::Dirichlet { alpha: 1.0 },
            Family::BetaBinomial { alpha: 2.0, beta: 2.0 },
        ]
    }

    fn validate(&self, support_size: usize) -> Result<()> {
        if support_size < 2 {
            return Err(Error::SupportTooSmall { min: 2, got: support_size });
        }
        let positive = |name, value: f64| {
            if value > 0.0 && value.is_finite() {
                Ok(())
            } else {
                Err(Error::NonPositiveShape { name, value })
            }
        };
        match *self {
            Family::Uniform => Ok(()),
            Family::Step if support_size % 2 == 1 => Err(Error::OddStepSupport(support_size)),
            Family::Step => Ok(()),
            Family::Zipf { alpha } | Family::Dirichlet { alpha } => positive("alpha", alpha),
            Family::BetaBinomial { alpha, beta } => {
                positive("alpha", alpha)?;
                positive("beta", beta)
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params = self.params();
        if params.is_empty() {
            f.write_str(self.tag())
        } else {
            write!(f, "{}({})", self.tag(), params)
        }
    }
}

/// Where a distribution came from.
#[derive(Debug, Clone, PartialEq)]
pub enum Origin {
    Family(Family),
    /// Explicit probabilities (e.g. an empirical population).
    Custom,
}

/// A known label-prevalence vector.
#[derive(Debug, Clone, PartialEq)]
pub struct TrueDistribution {
    probs: Vec<f64>,
    cumulative: Vec<f64>,
    origin: Origin,
}

const SUM_TOLERANCE: f64 = 1e-12;

impl TrueDistribution {
    /// Wraps explicit probabilities; they must be positive and sum to 1.
    pub fn from_probs(probs: Vec<f64>) -> Result<Self> {
        Self::checked(probs, Origin::Custom)
    }

    /// Empirical prevalences of a fully observed population.
    pub fn from_population(population: &SampleCounts) -> Self {
        let total = population.n() as f64;
        let probs = population.counts().iter().map(|&c| c as f64 / total).collect();
        Self::checked(probs, Origin::Custom).expect("population prevalences are valid")
    }

    fn checked(probs: Vec<f64>, origin: Origin) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidProbabilities("empty".into()));
        }
        if let Some(p) = probs.iter().find(|p| !(p.is_finite() && **p > 0.0)) {
            return Err(Error::InvalidProbabilities(format!("non-positive entry {p}")));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::InvalidProbabilities(format!("sum is {sum}")));
        }
        let mut acc = 0.0;
        let cumulative = probs
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect();
        Ok(Self { probs, cumulative, origin })
    }

    fn normalized(weights: Vec<f64>, family: Family) -> Result<Self> {
        let total: f64 = weights.iter().sum();
        Self::checked(weights.into_iter().map(|w| w / total).collect(), Origin::Family(family))
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn support_size(&self) -> usize {
        self.probs.len()
    }

    pub fn origin(&self) -> &Origin {
        &self.origin
    }

    /// Index of the label hit by a uniform draw in `[0, 1)`.
    fn locate(&self, u: f64) -> usize {
        self.cumulative.partition_point(|&c| c <= u).min(self.probs.len() - 1)
    }
}

/// Builds a member of `family` over `support_size` labels.
///
/// Only the Dirichlet family consumes `rng`.
pub fn make_distribution<R: Rng + ?Sized>(
    family: Family,
    support_size: usize,
    rng: Option<&mut R>,
) -> Result<TrueDistribution> {
    family.validate(support_size)?;
    let k = support_size;
    match family {
        Family::Uniform => TrueDistribution::normalized(vec![1.0; k], family),
        Family::Step => {
            let low = 1.0 / (2.0 * k as f64);
            let high = 3.0 / (2.0 * k as f64);
            let probs = (0..k).map(|u| if u < k / 2 { low } else { high }).collect();
            TrueDistribution::checked(probs, Origin::Family(family))
        }
        Family::Zipf { alpha } => {
            let weights = (1..=k).map(|u| (u as f64).powf(-alpha)).collect();
            TrueDistribution::normalized(weights, family)
        }
        Family::Dirichlet { alpha } => {
            let rng = rng.ok_or(Error::MissingRng)?;
            let gamma = Gamma::new(alpha, 1.0).map_err(|_| Error::NonPositiveShape { name: "alpha", value: alpha })?;
            loop {
                let weights: Vec<f64> = (0..k).map(|_| gamma.sample(rng)).collect();
                // a zero draw would leave a label with no mass; redraw
                if weights.iter().all(|&w| w > 0.0) {
                    break TrueDistribution::normalized(weights, family);
                }
            }
        }
        Family::BetaBinomial { alpha, beta } => {
            let t = k - 1;
            let base = ln_beta(alpha, beta);
            let weights = (0..=t)
                .map(|u| {
                    let (u, t) = (u as f64, t as f64);
                    (ln_choose(t, u) + ln_beta(u + alpha, t - u + beta) - base).exp()
                })
                .collect();
            TrueDistribution::normalized(weights, family)
        }
    }
}

fn ln_choose(t: f64, u: f64) -> f64 {
    use statrs::function::gamma::ln_gamma;
    ln_gamma(t + 1.0) - ln_gamma(u + 1.0) - ln_gamma(t - u + 1.0)
}

/// `-Σ p ln p`, in nats.
pub fn true_entropy(dist: &TrueDistribution) -> f64 {
    -dist.probs.iter().map(|&p| p * p.ln()).sum::<f64>()
}

/// `E[M] = Σ p (1 - p)^n`.
pub fn expected_missing_mass(dist: &TrueDistribution, n: usize) -> f64 {
    dist.probs.iter().map(|&p| p * crate::scalar::powu(1.0 - p, n)).sum()
}

/// Missing mass of a particular sample: the total probability of the labels
/// not listed in `observed`.
pub fn realized_missing_mass(dist: &TrueDistribution, counts: &SampleCounts, observed: &[usize]) -> Result<f64> {
    if observed.len() != counts.observed_support() {
        return Err(Error::LabelMapMismatch { expected: counts.observed_support(), found: observed.len() });
    }
    let mut seen = vec![false; dist.support_size()];
    for &idx in observed {
        match seen.get_mut(idx) {
            None => return Err(Error::LabelOutOfRange(idx)),
            Some(true) => return Err(Error::DuplicateLabel(idx)),
            Some(flag) => *flag = true,
        }
    }
    Ok(dist.probs.iter().zip(&seen).filter(|(_, &s)| !s).map(|(p, _)| p).sum())
}

/// A sample together with the distribution indices of its observed labels,
/// aligned with the canonical count order.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledSample {
    pub counts: SampleCounts,
    pub labels: Vec<usize>,
}

/// Draws `n` labels i.i.d. with replacement.
pub fn sample_labeled<R: Rng + ?Sized>(dist: &TrueDistribution, n: usize, rng: &mut R) -> Result<LabeledSample> {
    let draws = (0..n).map(|_| dist.locate(rng.random::<f64>()));
    let (counts, labels) = tally_labels(draws)?;
    Ok(LabeledSample { counts, labels })
}

pub fn sample<R: Rng + ?Sized>(dist: &TrueDistribution, n: usize, rng: &mut R) -> Result<SampleCounts> {
    sample_labeled(dist, n, rng).map(|s| s.counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fixed(family: Family, k: usize) -> TrueDistribution {
        make_distribution::<ChaCha8Rng>(family, k, None).unwrap()
    }

    #[test]
    fn family_examples() {
        assert_eq!(fixed(Family::Uniform, 4).probs(), &[0.25; 4]);
        assert_eq!(fixed(Family::Step, 4).probs(), &[0.125, 0.125, 0.375, 0.375]);
        let z = fixed(Family::Zipf { alpha: 1.0 }, 2);
        assert!((z.probs()[0] - 2.0 / 3.0).abs() < 1e-15);
        assert!((z.probs()[1] - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn beta_binomial_matches_closed_form() {
        // t = 2, alpha = beta = 2: pmf is (3, 4, 3)/10
        let d = fixed(Family::BetaBinomial { alpha: 2.0, beta: 2.0 }, 3);
        for (got, want) in d.probs().iter().zip([0.3, 0.4, 0.3]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn family_errors() {
        let none = None::<&mut ChaCha8Rng>;
        assert_eq!(make_distribution(Family::Step, 5, none), Err(Error::OddStepSupport(5)));
        assert_eq!(make_distribution::<ChaCha8Rng>(Family::Dirichlet { alpha: 1.0 }, 4, None), Err(Error::MissingRng));
        assert!(matches!(
            make_distribution::<ChaCha8Rng>(Family::Zipf { alpha: 0.0 }, 4, None),
            Err(Error::NonPositiveShape { .. })
        ));
        assert!(matches!(
            make_distribution::<ChaCha8Rng>(Family::BetaBinomial { alpha: 2.0, beta: -1.0 }, 4, None),
            Err(Error::NonPositiveShape { name: "beta", .. })
        ));
    }

    #[test]
    fn dirichlet_redraws_each_call() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = make_distribution(Family::Dirichlet { alpha: 0.5 }, 6, Some(&mut rng)).unwrap();
        let b = make_distribution(Family::Dirichlet { alpha: 0.5 }, 6, Some(&mut rng)).unwrap();
        assert_ne!(a.probs(), b.probs());
    }

    #[test]
    fn entropy_examples() {
        assert!((true_entropy(&fixed(Family::Uniform, 10)) - 10f64.ln()).abs() < 1e-12);
        let point = TrueDistribution::from_probs(vec![1.0]).unwrap();
        assert_eq!(true_entropy(&point), 0.0);
        // -Σ p ln p over [.125, .125, .375, .375]
        assert!((true_entropy(&fixed(Family::Step, 4)) - 1.255_482_325_178_753_5).abs() < 1e-12);
    }

    #[test]
    fn expected_missing_mass_examples() {
        assert!((expected_missing_mass(&fixed(Family::Uniform, 2), 2) - 0.25).abs() < 1e-15);
        let point = TrueDistribution::from_probs(vec![1.0]).unwrap();
        assert_eq!(expected_missing_mass(&point, 5), 0.0);
        let e = expected_missing_mass(&fixed(Family::Uniform, 10), 10);
        assert!((e - 0.9f64.powi(10)).abs() < 1e-15);
    }

    #[test]
    fn realized_missing_mass_examples() {
        let u10 = fixed(Family::Uniform, 10);
        let all = SampleCounts::new(vec![1; 10]).unwrap();
        assert!(realized_missing_mass(&u10, &all, &(0..10).collect::<Vec<_>>()).unwrap().abs() < 1e-15);
        let four = SampleCounts::new(vec![3, 3, 2, 2]).unwrap();
        let m = realized_missing_mass(&u10, &four, &[0, 3, 5, 9]).unwrap();
        assert!((m - 0.6).abs() < 1e-12);
        let u2 = fixed(Family::Uniform, 2);
        let one = SampleCounts::new(vec![6]).unwrap();
        assert_eq!(realized_missing_mass(&u2, &one, &[1]).unwrap(), 0.5);
    }

    #[test]
    fn realized_missing_mass_rejects_bad_maps() {
        let u4 = fixed(Family::Uniform, 4);
        let two = SampleCounts::new(vec![1, 1]).unwrap();
        assert_eq!(realized_missing_mass(&u4, &two, &[0, 0]), Err(Error::DuplicateLabel(0)));
        assert_eq!(realized_missing_mass(&u4, &two, &[0, 4]), Err(Error::LabelOutOfRange(4)));
        assert!(matches!(realized_missing_mass(&u4, &two, &[0]), Err(Error::LabelMapMismatch { .. })));
    }

    #[test]
    fn sampling_degenerate_and_large_n() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let point = TrueDistribution::from_probs(vec![1.0]).unwrap();
        assert_eq!(sample(&point, 7, &mut rng).unwrap().counts(), &[7]);

        let s = sample(&fixed(Family::Uniform, 2), 100_000, &mut rng).unwrap();
        for &c in s.counts() {
            assert!((c as f64 / 100_000.0 - 0.5).abs() < 0.01);
        }
    }

    #[test]
    fn labeled_sample_aligns_with_counts() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let d = fixed(Family::Zipf { alpha: 1.0 }, 8);
        let s = sample_labeled(&d, 25, &mut rng).unwrap();
        assert_eq!(s.labels.len(), s.counts.observed_support());
        assert_eq!(s.counts.n(), 25);
    }
}
