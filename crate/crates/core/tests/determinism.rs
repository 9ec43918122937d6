use seneca_core::bench::{run_grid, with_threads, GridConfig};
use seneca_core::{EstimatorKind, Family};

fn config() -> GridConfig {
    GridConfig {
        families: vec![Family::Uniform, Family::Dirichlet { alpha: 0.5 }],
        support_sizes: vec![4, 20],
        n: 10,
        trials: 200,
        estimators: EstimatorKind::ALL.to_vec(),
        master_seed: 7,
        bootstrap_reps: 100,
        confidence: 0.95,
        support_method: Default::default(),
        keep_trials: false,
    }
}

#[test]
fn grid_identical_across_thread_counts() {
    let cfg = config();
    let one = with_threads(Some(1), || run_grid(&cfg)).unwrap().unwrap();
    let eight = with_threads(Some(8), || run_grid(&cfg)).unwrap().unwrap();
    let a: Vec<_> = one.summaries().cloned().collect();
    let b: Vec<_> = eight.summaries().cloned().collect();
    assert_eq!(a, b);
    assert_eq!(one.regime_summaries().unwrap(), eight.regime_summaries().unwrap());
}

#[test]
fn different_seeds_differ() {
    let mut cfg = config();
    let a: Vec<f64> = run_grid(&cfg).unwrap().summaries().map(|s| s.rmse).collect();
    cfg.master_seed = 8;
    let b: Vec<f64> = run_grid(&cfg).unwrap().summaries().map(|s| s.rmse).collect();
    assert_ne!(a, b);
}

#[test]
fn summaries_satisfy_decomposition_and_order() {
    let res = run_grid(&config()).unwrap();
    for s in res.summaries() {
        let lhs = s.rmse * s.rmse;
        assert!((lhs - (s.bias * s.bias + s.variance)).abs() <= 1e-9 * lhs.max(1.0));
        assert!(s.ci_low <= s.ci_high);
    }
}
