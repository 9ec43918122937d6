//! Statistical properties checked by simulation with fixed seeds.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use seneca_core::distributions::sample_labeled;
use seneca_core::*;

fn uniform(k: usize) -> TrueDistribution {
    make_distribution::<ChaCha8Rng>(Family::Uniform, k, None).unwrap()
}

#[test]
fn seeded_sample_is_reproducible() {
    let d = uniform(10);
    let a = sample(&d, 10, &mut ChaCha8Rng::seed_from_u64(2024)).unwrap();
    let b = sample(&d, 10, &mut ChaCha8Rng::seed_from_u64(2024)).unwrap();
    assert_eq!(a, b);
    // golden value captured from the ChaCha8 stream
    assert_eq!(a.counts(), GOLDEN_U10_N10);
}

const GOLDEN_U10_N10: &[usize] = &[2, 2, 2, 1, 1, 1, 1];

#[test]
fn plugin_is_negatively_biased() {
    let d = uniform(10);
    let truth = true_entropy(&d);
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let est: Vec<f64> = (0..10_000).map(|_| entropy_plugin::<f64>(&sample(&d, 10, &mut rng).unwrap()).value).collect();
    let mean = est.iter().sum::<f64>() / est.len() as f64;
    let sd = (est.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / (est.len() - 1) as f64).sqrt();
    let se = sd / (est.len() as f64).sqrt();
    assert!(truth - mean > 5.0 * se, "mean {mean}, truth {truth}, se {se}");
}

#[test]
fn uniform_entropy_is_log_k() {
    for k in 2..=100 {
        assert!((true_entropy(&uniform(k)) - (k as f64).ln()).abs() < 1e-12);
    }
}

#[test]
fn benchmark_families_are_valid_distributions() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for family in Family::benchmark_set() {
        for k in [2, 4, 6, 8, 10, 12, 16, 20, 30, 40, 50, 60, 80, 100] {
            let d = make_distribution(family, k, Some(&mut rng)).unwrap();
            let sum: f64 = d.probs().iter().sum();
            assert!((sum - 1.0).abs() <= 1e-12, "{family} k={k}");
            assert!(d.probs().iter().all(|&p| p > 0.0));
            assert_eq!(d.support_size(), k);
        }
    }
}

#[test]
fn expected_missing_mass_non_increasing_in_n() {
    let d = make_distribution::<ChaCha8Rng>(Family::Zipf { alpha: 1.0 }, 30, None).unwrap();
    let mut prev = expected_missing_mass(&d, 0);
    assert!((prev - 1.0).abs() < 1e-12);
    for n in 1..200 {
        let e = expected_missing_mass(&d, n);
        assert!(e <= prev + 1e-15);
        prev = e;
    }
}

#[test]
fn realized_mass_mean_matches_expectation_small() {
    let d = uniform(10);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let trials = 20_000;
    let total: f64 = (0..trials)
        .map(|_| {
            let s = sample_labeled(&d, 10, &mut rng).unwrap();
            realized_missing_mass(&d, &s.counts, &s.labels).unwrap()
        })
        .sum();
    assert!((total / trials as f64 - 0.9f64.powi(10)).abs() < 0.01);
}
