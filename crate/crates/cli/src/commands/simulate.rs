use std::time::Instant;

use seneca_core::bench::{oracle_residual_scenario, run_grid, with_threads, GridConfig, ResidualConfig};

use crate::args::{Preset, SimulateArgs};
use crate::error::{CliError, CliResult};
use crate::output::{fmt_f64, Manifest, OutDir};

pub const SUMMARY_HEADER: [&str; 14] = [
    "family",
    "params",
    "support_size",
    "n",
    "estimator",
    "regime",
    "support_risky",
    "trials",
    "rmse",
    "bias",
    "variance",
    "ci_low",
    "ci_high",
    "seed",
];

const REGIME_HEADER: [&str; 11] =
    ["family", "params", "n", "estimator", "regime", "settings", "mean_rmse", "ci_low", "ci_high", "radius", "seed"];

const TRIAL_HEADER: [&str; 7] = ["family", "params", "support_size", "trial", "truth", "estimator", "estimate"];

const RESIDUAL_HEADER: [&str; 10] = [
    "scope",
    "support_size",
    "trial",
    "expected",
    "oracle_residual",
    "known_support_residual",
    "estimated_support_residual",
    "known_fallback",
    "estimated_fallback",
    "seed",
];

fn load_config(args: &SimulateArgs) -> CliResult<GridConfig> {
    let mut config = match (&args.config, args.preset) {
        (_, Some(Preset::Table1)) => GridConfig::table1(0),
        (_, Some(Preset::Table2)) => GridConfig::table2(0),
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?
        }
        (None, None) => return Err(CliError::Usage("one of --config or --preset is required".into())),
    };
    if let Some(seed) = args.seed {
        config.master_seed = seed;
    }
    if let Some(trials) = args.trials {
        config.trials = trials;
    }
    if let Some(reps) = args.bootstrap_reps {
        config.bootstrap_reps = reps;
    }
    if let Some(method) = args.support {
        config.support_method = method;
    }
    config.keep_trials |= args.trial_records;
    config.validate().map_err(|e| CliError::Config(e.to_string()))?;
    Ok(config)
}

pub fn simulate(args: &SimulateArgs) -> CliResult<()> {
    let config = load_config(args)?;
    let started = Instant::now();
    let result = with_threads(args.threads.threads, || run_grid(&config))??;
    let grid_ms = started.elapsed().as_millis();

    let seed = config.master_seed.to_string();
    let mut warnings = Vec::new();
    for (family, k, msg) in result.failures() {
        let w = format!("{family} at support {k} skipped: {msg}");
        eprintln!("warning: {w}");
        warnings.push(w);
    }
    if let Some(bad) =
        result.summaries().find(|s| !(s.rmse.is_finite() && s.bias.is_finite() && s.variance.is_finite()))
    {
        return Err(CliError::Numeric(format!(
            "{} at {} on {} gave rmse {}",
            bad.estimator, bad.support_size, bad.family, bad.rmse
        )));
    }

    let mut out = OutDir::create(&args.out)?;
    let rows = result.summaries().map(|s| {
        vec![
            s.family.tag().to_string(),
            s.family.params(),
            s.support_size.to_string(),
            s.n.to_string(),
            s.estimator.tag().to_string(),
            s.regime.tag().to_string(),
            s.support_risky.to_string(),
            s.trials.to_string(),
            fmt_f64(s.rmse),
            fmt_f64(s.bias),
            fmt_f64(s.variance),
            fmt_f64(s.ci_low),
            fmt_f64(s.ci_high),
            seed.clone(),
        ]
    });
    out.csv("summaries.csv", &SUMMARY_HEADER, rows)?;

    let regimes = result.regime_summaries()?;
    let rows = regimes.iter().map(|r| {
        vec![
            r.family.tag().to_string(),
            r.family.params(),
            r.n.to_string(),
            r.estimator.tag().to_string(),
            r.regime.tag().to_string(),
            r.settings.to_string(),
            fmt_f64(r.mean_rmse),
            fmt_f64(r.ci_low),
            fmt_f64(r.ci_high),
            fmt_f64(r.radius),
            seed.clone(),
        ]
    });
    out.csv("regimes.csv", &REGIME_HEADER, rows)?;

    if config.keep_trials {
        let mut rows = Vec::new();
        for setting in &result.settings {
            let Ok(data) = &setting.outcome else { continue };
            for t in data.trials.iter().flatten() {
                for (k, value) in config.estimators.iter().zip(&t.estimates) {
                    rows.push(vec![
                        setting.family.tag().to_string(),
                        setting.family.params(),
                        setting.support_size.to_string(),
                        t.trial.to_string(),
                        fmt_f64(t.truth),
                        k.tag().to_string(),
                        fmt_f64(*value),
                    ]);
                }
            }
        }
        out.csv("trials.csv", &TRIAL_HEADER, rows)?;
    }

    let mut timing = vec![("grid".to_string(), grid_ms)];
    if args.residuals {
        let t0 = Instant::now();
        let rc = ResidualConfig {
            families: config.families.clone(),
            support_sizes: config.support_sizes.clone(),
            n: config.n,
            trials: config.trials,
            master_seed: config.master_seed,
            support_method: config.support_method,
        };
        let records = with_threads(args.threads.threads, || oracle_residual_scenario(&rc))??;
        let rows = records.iter().map(|r| {
            vec![
                r.scope.clone(),
                r.support_size.to_string(),
                r.trial.to_string(),
                fmt_f64(r.expected),
                fmt_f64(r.oracle),
                fmt_f64(r.known_support),
                fmt_f64(r.estimated_support),
                r.known_fallback.to_string(),
                r.estimated_fallback.to_string(),
                seed.clone(),
            ]
        });
        out.csv("residuals.csv", &RESIDUAL_HEADER, rows)?;
        timing.push(("residuals".to_string(), t0.elapsed().as_millis()));
    }
    timing.push(("total".to_string(), started.elapsed().as_millis()));

    let mut manifest = Manifest::new("simulate", config.master_seed, &config);
    manifest.timing_ms = timing;
    manifest.warnings = warnings;
    out.finish(manifest)
}
